"""Clique-grid representations of unit-disk instances and their cell graphs.

With cell side equal to the common radius r, the cell diagonal r*sqrt(2) is
below the adjacency threshold 2r, so every cell is a clique; and an edge has
center distance at most 2r, so its endpoints differ by at most 2 in each
floor index. Cell assignment therefore stays pure integer floor division.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class NonUniformRadiusError(ValueError):
    """Clique-grid construction requires all radii equal."""


class CliqueGridRepr:
    """Map f: vertex -> (i, j) into a 1-based p x p' grid."""

    def __init__(self, cells, p, pp, cell_side):
        self.cells = [(int(i), int(j)) for i, j in cells]
        self.p = int(p)
        self.pp = int(pp)
        self.cell_side = int(cell_side)
        for i, j in self.cells:
            if not (1 <= i <= self.p and 1 <= j <= self.pp):
                raise ValueError("cell index outside [p] x [p']")
        self._members = None

    @property
    def n(self):
        return len(self.cells)

    def cell(self, v):
        return self.cells[v]

    def column(self, v):
        return self.cells[v][1]

    def members(self):
        """Nonempty cell -> sorted vertex list."""
        if self._members is None:
            grouped = {}
            for v, c in enumerate(self.cells):
                grouped.setdefault(c, []).append(v)
            self._members = grouped
        return self._members

    def nonempty_cells(self):
        return sorted(self.members().keys())

    def occupied_columns(self):
        return sorted({j for _, j in self.cells})

    def dump(self):
        return "\n".join("%d %d %d" % (v, i, j) for v, (i, j) in enumerate(self.cells))


@dataclass
class ValidationReport:
    """Clique-grid violations; empty report means the representation is valid."""

    non_clique_cells: list = field(default_factory=list)
    far_edges: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.non_clique_cells and not self.far_edges


class CellGraph:
    """Nonempty cells, adjacent when some cross-cell edge joins them."""

    def __init__(self, cells, edges):
        self.cells = sorted(cells)
        self.adj = {c: set() for c in self.cells}
        for a, b in edges:
            if a == b:
                raise ValueError("cell self-loop")
            self.adj[a].add(b)
            self.adj[b].add(a)

    def neighbors(self, cell):
        return self.adj[cell]

    def edge_list(self):
        return sorted((a, b) for a in self.cells for b in self.adj[a] if a < b)


def compute_representation(inst):
    """Clique-grid map for a unit-disk instance, cell side = common radius."""
    if not inst.is_unit_disk():
        raise NonUniformRadiusError("clique-grid representation needs uniform radii")
    r = inst.unit_radius()
    fi = [x // r for x in inst.xs]
    fj = [y // r for y in inst.ys]
    imin = min(fi)
    jmin = min(fj)
    cells = [(i - imin + 1, j - jmin + 1) for i, j in zip(fi, fj)]
    p = max(i for i, _ in cells)
    pp = max(j for _, j in cells)
    return CliqueGridRepr(cells, p, pp, r)


def validate_representation(g, repr_):
    """Report every non-clique cell and every edge spanning more than 2 cells."""
    if len(repr_.cells) != g.n:
        raise ValueError("representation does not cover the graph")
    report = ValidationReport()
    for cell, verts in sorted(repr_.members().items()):
        ok = True
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                if not g.has_edge(verts[a], verts[b]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            report.non_clique_cells.append(cell)
    for u, v in g.edge_list():
        iu, ju = repr_.cell(u)
        iv, jv = repr_.cell(v)
        if abs(iu - iv) > 2 or abs(ju - jv) > 2:
            report.far_edges.append((u, v))
    return report


def cell_graph(g, repr_):
    """Quotient-style graph on nonempty cells induced by cross-cell edges."""
    report = validate_representation(g, repr_)
    if not report.ok:
        raise ValueError("invalid clique-grid representation: %r" % (report,))
    edges = set()
    for u, v in g.edge_list():
        cu = repr_.cell(u)
        cv = repr_.cell(v)
        if cu != cv:
            edges.add((min(cu, cv), max(cu, cv)))
    return CellGraph(repr_.members().keys(), edges)
