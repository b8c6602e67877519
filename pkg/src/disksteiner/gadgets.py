"""Hardness-reduction instance generators with built-in self-verification.

Two families:

* Connected Vertex Cover on planar max-degree-4 graphs -> unit disk Steiner
  instances. The source graph arrives as a rectilinear grid embedding; disks
  of radius 1 sit on the embedded paths at center spacing exactly 2. Budget
  translation: k' = m + 2k - 1.

* Grid Tiling with >= -> disk Steiner instances with three radius classes.
  All coordinates are exact integers at scale S = 4000 * n^10; the diagonal
  connector chains use a rational radius (S/8) instead of the irrational
  constant the geometry merely needs an upper bound for.

Both generators rebuild the intersection graph of what they emitted and check
it against the intended adjacency, so a layout bug raises instead of
producing an instance that silently encodes a different problem.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .geometry import DiskInstance, Graph, SteinerTree, build_intersection_graph
from .oracle import verify_tree


class GadgetError(ValueError):
    """Generated disks do not realize the intended graph."""


def _sign(d):
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class RectilinearEmbedding:
    """Grid drawing of a graph: vertex points plus one rectilinear path per edge."""

    positions: tuple
    edges: tuple
    paths: tuple

    def __post_init__(self):
        self.validate()

    @property
    def n(self):
        return len(self.positions)

    @property
    def m(self):
        return len(self.edges)

    def path_points(self, e):
        """Integer points along path e at unit steps, endpoints included."""
        path = self.paths[e]
        pts = []
        for (x0, y0), (x1, y1) in zip(path, path[1:]):
            if x0 != x1 and y0 != y1:
                raise GadgetError("path segment is not axis-aligned")
            if (x0, y0) == (x1, y1):
                raise GadgetError("zero-length path segment")
            dx, dy = _sign(x1 - x0), _sign(y1 - y0)
            for s in range(abs(x1 - x0) + abs(y1 - y0)):
                pts.append((x0 + dx * s, y0 + dy * s))
        pts.append(tuple(path[-1]))
        return pts

    def path_length(self, e):
        return len(self.path_points(e)) - 1

    def validate(self):
        n, m = len(self.positions), len(self.edges)
        if n < 1:
            raise GadgetError("empty embedding")
        if len(set(self.positions)) != n:
            raise GadgetError("duplicate vertex positions")
        if len(self.paths) != m:
            raise GadgetError("paths do not match edges")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GadgetError("bad edge endpoints")
            if (min(u, v), max(u, v)) in seen:
                raise GadgetError("duplicate edge")
            seen.add((min(u, v), max(u, v)))
        for p, q in itertools.combinations(self.positions, 2):
            if (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 < 64:
                raise GadgetError("vertices closer than 8 apart")
        posset = set(self.positions)
        owned = {}
        for e, (u, v) in enumerate(self.edges):
            pts = self.path_points(e)
            if pts[0] != tuple(self.positions[u]) or pts[-1] != tuple(self.positions[v]):
                raise GadgetError("path endpoints do not match edge %d" % e)
            if len(pts) - 1 < 8:
                raise GadgetError("path %d shorter than 8" % e)
            if (len(pts) - 1) % 2:
                raise GadgetError("path %d has odd length" % e)
            if len(set(pts)) != len(pts):
                raise GadgetError("path %d revisits a point" % e)
            ends = {pts[0], pts[-1]}
            for pt in pts:
                if pt in posset and pt not in ends:
                    raise GadgetError("path %d runs through a vertex" % e)
                if pt in ends:
                    continue
                if pt in owned:
                    raise GadgetError("paths %d and %d share a point" % (owned[pt], e))
                owned[pt] = e

    def source_graph(self):
        return Graph(self.n, self.edges)


def _cvc_witness(g, k):
    """Smallest connected vertex cover of size <= k, or None."""
    edges = g.edge_list()
    if not edges:
        return frozenset()
    for size in range(1, k + 1):
        for cand in itertools.combinations(range(g.n), size):
            cset = set(cand)
            if any(u not in cset and v not in cset for u, v in edges):
                continue
            seen = {cand[0]}
            stack = [cand[0]]
            while stack:
                x = stack.pop()
                for y in g.adj[x]:
                    if y in cset and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) == size:
                return frozenset(cand)
    return None


def cvc_brute(g, k):
    """Exhaustive connected-vertex-cover decision for small graphs."""
    return _cvc_witness(g, k) is not None


@dataclass
class CvcGadget:
    instance: DiskInstance
    kprime: int
    grid_ids: tuple
    chains: tuple
    source: Graph


def cvc_gadget(emb, k):
    """Disk instance that is a yes at budget m + 2k - 1 iff CVC(source) <= k."""
    if k < 1:
        # with k = 0 the translated budget m - 1 breaks down for m = 1:
        # a single path's terminals are already a tree with zero Steiner
        # disks while the edge itself stays uncovered
        raise GadgetError("CVC budget must be at least 1")
    src = emb.source_graph()
    m = emb.m
    if m == 0:
        raise GadgetError("source graph has no edges, nothing to reduce")
    xs, ys, term = [], [], []

    def add(x, y, is_term):
        xs.append(x)
        ys.append(y)
        term.append(is_term)
        return len(xs) - 1

    grid_ids = tuple(add(x, y, False) for x, y in emb.positions)
    chains = []
    for e, (u, v) in enumerate(emb.edges):
        pts = emb.path_points(e)
        length = len(pts) - 1
        seq = [grid_ids[u], add(*pts[2], False)]
        for arc in range(4, length - 2, 2):
            seq.append(add(*pts[arc], True))
        seq.append(add(*pts[length - 2], False))
        seq.append(grid_ids[v])
        chains.append(tuple(seq))
    kprime = m + 2 * k - 1
    inst = DiskInstance(1, list(range(len(xs))), xs, ys, [1] * len(xs), term, kprime)
    g = build_intersection_graph(inst)
    intended = set()
    for seq in chains:
        intended.update((min(a, b), max(a, b)) for a, b in zip(seq, seq[1:]))
    actual = set(g.edge_list())
    if actual != intended:
        raise GadgetError(
            "layout produced unintended adjacencies: %s" % sorted(actual ^ intended)[:5]
        )
    gadget = CvcGadget(inst, kprime, grid_ids, tuple(chains), src)
    dset = _cvc_witness(src, k)
    if dset is not None:
        tree = _cvc_forward_tree(gadget, emb, dset)
        ok, reason = verify_tree(g, g.terminals, kprime, tree)
        if not ok:
            raise GadgetError("forward witness rejected: %s" % reason)
    return gadget


def _cvc_forward_tree(gadget, emb, dset):
    """Steiner tree realizing a connected vertex cover: m + 2|D| - 1 extras."""
    src = gadget.source
    tree_edges = []
    steiner = set()
    span = set()
    if dset:
        start = min(dset)
        seen = {start}
        queue = [start]
        while queue:
            x = queue.pop(0)
            for y in sorted(src.adj[x]):
                if y in dset and y not in seen:
                    seen.add(y)
                    span.add((min(x, y), max(x, y)))
                    queue.append(y)
        steiner.update(gadget.grid_ids[v] for v in dset)
    for e, (u, v) in enumerate(emb.edges):
        seq = gadget.chains[e]
        terms = seq[2:-2]
        tree_edges.extend(zip(terms, terms[1:]))
        in_span = (min(u, v), max(u, v)) in span
        if in_span or u in dset:
            tree_edges.append((seq[0], seq[1]))
            tree_edges.append((seq[1], seq[2]))
            steiner.add(seq[1])
        if in_span or (u not in dset and v in dset):
            tree_edges.append((seq[-2], seq[-1]))
            tree_edges.append((seq[-3], seq[-2]))
            steiner.add(seq[-2])
    return SteinerTree(tree_edges, steiner)


@dataclass(frozen=True)
class GridTilingInstance:
    """k x k matrix of candidate sets over [n] x [n]."""

    n: int
    k: int
    cells: dict

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        want = {(x, y) for x in range(1, self.k + 1) for y in range(1, self.k + 1)}
        if set(self.cells) != want:
            raise ValueError("cells must cover exactly [k] x [k]")
        for key, pairs in self.cells.items():
            if not pairs:
                raise ValueError("empty candidate set at %s" % (key,))
            for a, b in pairs:
                if not (1 <= a <= self.n and 1 <= b <= self.n):
                    raise ValueError("pair out of range at %s" % (key,))


def grid_tiling_brute(gt):
    """Backtracking over selections with a >= to the right, b >= upward."""
    order = sorted(gt.cells)
    assign = {}

    def rec(i):
        if i == len(order):
            return True
        x, y = order[i]
        for a, b in sorted(gt.cells[(x, y)]):
            if (x - 1, y) in assign and assign[(x - 1, y)][0] < a:
                continue
            if (x, y - 1) in assign and assign[(x, y - 1)][1] < b:
                continue
            assign[(x, y)] = (a, b)
            if rec(i + 1):
                return True
            del assign[(x, y)]
        return False

    return rec(0)


@dataclass
class GridTilingGadget:
    instance: DiskInstance
    budget: int
    d1: dict
    forcing: dict
    hclusters: dict
    vclusters: dict
    chain_seqs: tuple
    scale: int


def grid_tiling_gadget(gt):
    """Disk instance that is a yes at budget k^2 iff the tiling is solvable."""
    n, k = gt.n, gt.k
    if n < 2:
        # with n = 1 the cluster disk at offset 1 is not quite reached by
        # its own cell's candidate: S^2 + (4000b)^2 > (S+1000)^2 at S = 4000
        raise GadgetError("grid tiling gadget needs n >= 2")
    S = 4000 * n**10
    M = 2 * S + 4000
    rho = S // 8
    step = S // 16
    w = 2000 * (n - 1)
    off = 2000 * (n + 1)
    c_end = math.isqrt((S + rho) ** 2 // 2) - w

    xs, ys, rads, term = [], [], [], []

    def add(x, y, r, is_term):
        xs.append(x)
        ys.append(y)
        rads.append(r)
        term.append(is_term)
        return len(xs) - 1

    d1 = {}
    for x in range(1, k + 1):
        for y in range(1, k + 1):
            for a, b in sorted(gt.cells[(x, y)]):
                d1[(x, y, a, b)] = add(M * x + 4000 * a, M * y + 4000 * b, S, False)
    forcing = {}
    for x in range(1, k + 1):
        for y in range(1, k + 1):
            pairs = sorted(gt.cells[(x, y)])
            cx = M * x + 4000 * sum(a for a, _ in pairs) // len(pairs)
            cy = M * y + 4000 * sum(b for _, b in pairs) // len(pairs)
            forcing[(x, y)] = add(cx, cy, 1000, True)
    hclusters = {}
    for x in range(1, k):
        for y in range(1, k + 1):
            for a in range(1, n + 1):
                hclusters[(x, y, a)] = add(M * x + S + 4000 * a, M * y, 1000, True)
    vclusters = {}
    for x in range(1, k + 1):
        for y in range(1, k):
            for b in range(1, n + 1):
                vclusters[(x, y, b)] = add(M * x, M * y + S + 4000 * b, 1000, True)

    lo, hi = c_end + 2 * w, M - c_end - 2 * w
    cs = [c_end]
    j = -(M // (2 * step))
    while M // 2 + j * step < hi:
        c = M // 2 + j * step
        if c > lo:
            cs.append(c)
        j += 1
    cs.append(M - c_end)
    chain_seqs = []
    for bx in range(1, k):
        for by in range(1, k):
            ax, ay = M * bx + off, M * by + off
            up = [add(ax + c, ay + c, rho, True) for c in cs]
            mid = up[cs.index(M // 2)]
            down = []
            for c in cs:
                if c == M // 2:
                    down.append(mid)
                else:
                    down.append(add(ax + M - c, ay + c, rho, True))
            chain_seqs.append(((bx, by), (bx + 1, by + 1), tuple(up)))
            chain_seqs.append(((bx + 1, by), (bx, by + 1), tuple(down)))

    inst = DiskInstance(S, list(range(len(xs))), xs, ys, rads, term, k * k)
    gadget = GridTilingGadget(
        inst, k * k, d1, forcing, hclusters, vclusters, tuple(chain_seqs), S
    )
    _verify_grid_tiling(gadget, gt)
    return gadget


def _verify_grid_tiling(gadget, gt):
    """Every load-bearing adjacency must match the construction exactly."""
    g = build_intersection_graph(gadget.instance)
    d1, cells = gadget.d1, gt.cells
    d1_ids = set(d1.values())
    d2_ids = set(gadget.hclusters.values()) | set(gadget.vclusters.values())
    d2_ids.update(gadget.forcing.values())
    for (x, y, a), cid in gadget.hclusters.items():
        want = {d1[(x, y, aa, bb)] for aa, bb in cells[(x, y)] if a <= aa}
        want |= {d1[(x + 1, y, aa, bb)] for aa, bb in cells[(x + 1, y)] if a > aa}
        if g.adj[cid] != want:
            raise GadgetError("horizontal cluster %s has wrong coverage" % ((x, y, a),))
    for (x, y, b), cid in gadget.vclusters.items():
        want = {d1[(x, y, aa, bb)] for aa, bb in cells[(x, y)] if b <= bb}
        want |= {d1[(x, y + 1, aa, bb)] for aa, bb in cells[(x, y + 1)] if b > bb}
        if g.adj[cid] != want:
            raise GadgetError("vertical cluster %s has wrong coverage" % ((x, y, b),))
    for (x, y), fid in gadget.forcing.items():
        want = {d1[(x, y, a, b)] for a, b in cells[(x, y)]}
        if g.adj[fid] != want:
            raise GadgetError("forcing terminal %s has wrong coverage" % ((x, y),))
    for cell_lo, cell_hi, seq in gadget.chain_seqs:
        for a, b in zip(seq, seq[1:]):
            if b not in g.adj[a]:
                raise GadgetError("chain between %s and %s breaks" % (cell_lo, cell_hi))
        for which, end in ((cell_lo, seq[0]), (cell_hi, seq[-1])):
            want = {d1[(which[0], which[1], a, b)] for a, b in cells[which]}
            if g.adj[end] & d1_ids != want:
                raise GadgetError("chain end misses cell %s" % (which,))
        for did in seq[1:-1]:
            if g.adj[did] & d1_ids:
                raise GadgetError("chain interior touches a candidate disk")
        for did in seq:
            if g.adj[did] & d2_ids:
                raise GadgetError("chain touches a cluster or forcing disk")
    blocks = {}
    for cell_lo, cell_hi, seq in gadget.chain_seqs:
        key = (min(cell_lo[0], cell_hi[0]), min(cell_lo[1], cell_hi[1]))
        blocks.setdefault(key, set()).update(seq)
    chain_ids = set().union(*blocks.values()) if blocks else set()
    for key, ids in blocks.items():
        for did in ids:
            stray = (g.adj[did] & chain_ids) - ids
            if stray:
                raise GadgetError("chains of different blocks touch near %s" % (key,))
