"""Clique path decompositions of grid strips and their nice form.

Bags are sets of whole cells. A strip decomposition sweeps three consecutive
rows across the strip; nice-ification walks the bag sequence and emits forget
nodes before introduce nodes between consecutive bags, which keeps every
intermediate bag within the larger of the two. A guessed vertex set Y can be
attached to the result; it is treated as part of every bag.
"""

from __future__ import annotations


class CPD:
    """Ordered bags of cells forming a path decomposition after expansion."""

    def __init__(self, bags):
        self.bags = [frozenset(b) for b in bags]

    @property
    def width_cells(self):
        return max((len(b) for b in self.bags), default=0)


class NCPD:
    """Leaf/introduce/forget node sequence over cells, plus a Y vertex set.

    Y is carried as vertices, not cells, and counts as part of every bag when
    the decomposition is expanded. First and last bags equal Y.
    """

    def __init__(self, nodes, y=frozenset()):
        self.nodes = list(nodes)
        self.y = frozenset(y)
        self._check()

    def _check(self):
        if not self.nodes or self.nodes[0][0] != "leaf" or self.nodes[0][2]:
            raise ValueError("nice decomposition must start with an empty leaf")
        prev = frozenset()
        introduced = []
        forgotten = []
        for kind, cell, bag in self.nodes[1:]:
            if kind == "introduce":
                if cell in prev or bag != prev | {cell}:
                    raise ValueError("bad introduce node")
                introduced.append(cell)
            elif kind == "forget":
                if cell not in prev or bag != prev - {cell}:
                    raise ValueError("bad forget node")
                forgotten.append(cell)
            else:
                raise ValueError("unknown node kind %r" % (kind,))
            prev = bag
        if prev:
            raise ValueError("root bag must be empty apart from Y")
        if len(set(introduced)) != len(introduced) or sorted(introduced) != sorted(forgotten):
            raise ValueError("cells must be introduced and forgotten exactly once")

    @property
    def width_cells(self):
        return max(len(bag) for _, _, bag in self.nodes)

    def counts(self):
        intro = sum(1 for k, _, _ in self.nodes if k == "introduce")
        forg = sum(1 for k, _, _ in self.nodes if k == "forget")
        return intro, forg

    def dump(self):
        lines = []
        for kind, cell, bag in self.nodes:
            cells = " ".join("%d,%d" % c for c in sorted(bag))
            lines.append(("%s %s" % (kind, cells)).rstrip())
        return "\n".join(lines)


def strip_cpd(cells, max_cols=None):
    """Bags of three consecutive rows over all columns of one strip."""
    cells = sorted(set(cells))
    if not cells:
        return CPD([])
    cols = {j for _, j in cells}
    if max_cols is not None and len(cols) > max_cols:
        raise ValueError("strip spans %d columns, limit %d" % (len(cols), max_cols))
    rows = [i for i, _ in cells]
    imin, imax = min(rows), max(rows)
    bags = []
    for i in range(imin, max(imin, imax - 2) + 1):
        bag = frozenset(c for c in cells if i <= c[0] <= i + 2)
        if bag:
            bags.append(bag)
    return CPD(bags)


def nice_for_strips(cpds, y=frozenset()):
    """Concatenate strip decompositions into one nice sequence sharing Y."""
    nodes = [("leaf", None, frozenset())]
    prev = frozenset()
    for cpd in cpds:
        for bag in list(cpd.bags) + [frozenset()]:
            for c in sorted(prev - bag):
                prev = prev - {c}
                nodes.append(("forget", c, prev))
            for c in sorted(bag - prev):
                prev = prev | {c}
                nodes.append(("introduce", c, prev))
    return NCPD(nodes, y)


def make_nice(cpd, y=frozenset()):
    return nice_for_strips([cpd], y)


def validate_pathdecomp(g, pd, repr_, alive=None):
    """Vertex coverage, edge coverage and contiguity after expanding cells."""
    if alive is None:
        alive = set(range(g.n))
    else:
        alive = set(alive)
    members = repr_.members()

    def expand(bag):
        verts = set()
        for cell in bag:
            verts.update(v for v in members.get(cell, ()) if v in alive)
        return verts

    if isinstance(pd, NCPD):
        vbags = [expand(bag) | pd.y for _, _, bag in pd.nodes]
    else:
        vbags = [expand(bag) for bag in pd.bags]
    if not vbags:
        vbags = [set()]

    where = {v: [] for v in alive}
    for idx, vb in enumerate(vbags):
        if not vb <= alive:
            return False
        for v in vb:
            where[v].append(idx)
    for v in alive:
        spots = where[v]
        if not spots:
            return False
        if spots[-1] - spots[0] + 1 != len(spots):
            return False
    for u in alive:
        for v in g.adj[u]:
            if v < u or v not in alive:
                continue
            if not any(u in vb and v in vb for vb in vbags):
                return False
    return True
