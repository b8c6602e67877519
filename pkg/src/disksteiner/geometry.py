"""Exact disk intersection graphs over integer coordinates.

Centers and radii are integers under a per-instance scale factor, so the
closed-disk adjacency test dist^2 <= (r_u + r_v)^2 is decided without
floating point. Instances whose coordinate spread fits safely in int64 go
through the compiled kernels; anything larger falls back to exact Python
integers on a bucket grid.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

# The kernel path needs 2*span^2 and (r_u+r_v)^2 below 2^63.
_INT64_GUARD = 2**62


def squared_distance(p, q):
    """Exact squared Euclidean distance between two integer points."""
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


class DiskInstance:
    """Disks with integer centers and radii at a common scale, plus budget k.

    Every disk has a unique integer id, a center (x, y), a positive radius
    (all in scaled units) and a terminal flag. At least one disk must be a
    terminal. The instance is unit-disk when all radii agree.
    """

    def __init__(self, scale, ids, xs, ys, radii, terminal, k=0):
        self.scale = int(scale)
        self.ids = [int(v) for v in ids]
        self.xs = [int(v) for v in xs]
        self.ys = [int(v) for v in ys]
        self.radii = [int(v) for v in radii]
        self.terminal = [bool(v) for v in terminal]
        self.k = int(k)
        self._validate()

    def _validate(self):
        n = len(self.ids)
        if not (len(self.xs) == len(self.ys) == len(self.radii) == len(self.terminal) == n):
            raise ValueError("field lengths disagree")
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")
        if self.k < 0:
            raise ValueError("budget k must be non-negative")
        if len(set(self.ids)) != n:
            raise ValueError("disk ids must be unique")
        if any(r <= 0 for r in self.radii):
            raise ValueError("all radii must be positive")
        if not any(self.terminal):
            raise ValueError("at least one terminal required")

    @property
    def n(self):
        return len(self.ids)

    @property
    def t(self):
        return sum(self.terminal)

    def terminal_indices(self):
        return [i for i, f in enumerate(self.terminal) if f]

    def is_unit_disk(self):
        return len(set(self.radii)) == 1

    def unit_radius(self):
        if not self.is_unit_disk():
            raise ValueError("instance has non-uniform radii")
        return self.radii[0]

    def with_budget(self, k):
        return DiskInstance(self.scale, self.ids, self.xs, self.ys, self.radii, self.terminal, k)

    def with_terminal_flags(self, flags):
        return DiskInstance(self.scale, self.ids, self.xs, self.ys, self.radii, flags, self.k)

    def __eq__(self, other):
        if not isinstance(other, DiskInstance):
            return NotImplemented
        return (
            self.scale == other.scale
            and self.k == other.k
            and self.ids == other.ids
            and self.xs == other.xs
            and self.ys == other.ys
            and self.radii == other.radii
            and self.terminal == other.terminal
        )


class Graph:
    """Undirected graph on vertices 0..n-1 with a terminal subset R."""

    def __init__(self, n, edges=(), terminals=()):
        self.n = n
        self.adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop %d" % u)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range")
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.terminals = frozenset(int(v) for v in terminals)
        if any(v < 0 or v >= n for v in self.terminals):
            raise ValueError("terminal out of range")
        self._csr = None

    @property
    def m(self):
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u, v):
        return v in self.adj[u]

    def neighbors(self, v):
        return self.adj[v]

    def edge_list(self):
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def csr(self):
        """Adjacency in CSR form (indptr, indices) as int32 arrays."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, np.int32)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self.adj[v])
            indices = np.empty(indptr[-1], np.int32)
            pos = 0
            for v in range(self.n):
                for u in sorted(self.adj[v]):
                    indices[pos] = u
                    pos += 1
            self._csr = (indptr, indices)
        return self._csr

    def components(self, within=None):
        """Connected components, optionally restricted to a vertex subset."""
        if within is None:
            pool = range(self.n)
            allowed = None
        else:
            allowed = set(within)
            pool = sorted(allowed)
        seen = set()
        comps = []
        for s in pool:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                for u in self.adj[v]:
                    if u in seen or (allowed is not None and u not in allowed):
                        continue
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
            comps.append(comp)
        return comps


class SteinerTree:
    """Witness object: tree edges plus the Steiner vertices they use."""

    def __init__(self, edges, steiner):
        self.edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate tree edge")
        self.steiner = frozenset(int(v) for v in steiner)

    def vertices(self, terminals=()):
        verts = set(self.steiner) | set(terminals)
        for u, v in self.edges:
            verts.add(u)
            verts.add(v)
        return verts

    def __eq__(self, other):
        if not isinstance(other, SteinerTree):
            return NotImplemented
        return self.edges == other.edges and self.steiner == other.steiner

    def __repr__(self):
        return "SteinerTree(edges=%r, steiner=%r)" % (self.edges, sorted(self.steiner))


def _edges_exact(xs, ys, radii):
    """Bucket-grid sweep with arbitrary precision integers."""
    n = len(xs)
    side = 2 * max(radii) if n else 1
    buckets = {}
    for i in range(n):
        buckets.setdefault((xs[i] // side, ys[i] // side), []).append(i)
    edges = []

    def check(i, j):
        dx = xs[i] - xs[j]
        dy = ys[i] - ys[j]
        rr = radii[i] + radii[j]
        if dx * dx + dy * dy <= rr * rr:
            edges.append((i, j) if i < j else (j, i))

    for (bx, by), items in buckets.items():
        for a in range(len(items)):
            for b in range(a + 1, len(items)):
                check(items[a], items[b])
        # any intersecting pair sits in the same or an adjacent bucket
        for ox, oy in ((1, -1), (1, 0), (1, 1), (0, 1)):
            other = buckets.get((bx + ox, by + oy))
            if other:
                for i in items:
                    for j in other:
                        check(i, j)
    edges.sort()
    return edges


def build_intersection_graph(inst, backend=None):
    """Graph with an edge for every closed-disk intersection of the instance."""
    n = inst.n
    if n == 0:
        return Graph(0)
    xmin = min(inst.xs)
    ymin = min(inst.ys)
    cx = [x - xmin for x in inst.xs]
    cy = [y - ymin for y in inst.ys]
    span = max(max(cx), max(cy))
    rmax = max(inst.radii)
    if 2 * span * span < _INT64_GUARD and (2 * rmax) ** 2 < _INT64_GUARD:
        xs = np.array(cx, np.int64)
        ys = np.array(cy, np.int64)
        rs = np.array(inst.radii, np.int64)
        eu, ev = _kernels.edges_int64(xs, ys, rs, backend)
        edges = [(int(u), int(v)) for u, v in zip(eu, ev)]
    else:
        edges = _edges_exact(cx, cy, inst.radii)
    return Graph(n, edges, inst.terminal_indices())
