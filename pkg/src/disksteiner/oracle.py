"""Brute-force ground truth and witness verification.

The decision oracle enumerates Steiner subsets by cardinality and checks
whether the terminals become connected. Instances are first collapsed to a
supergraph (one node per terminal component plus one per Steiner candidate);
when that supergraph fits in 63 bits the enumeration runs in the compiled
bitset kernel, otherwise in plain Python. A subset budget turns oversized
enumerations into an explicit error, never a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .geometry import SteinerTree

DEFAULT_BUDGET = 20_000_000


class BudgetExceededError(RuntimeError):
    """Raised when enumeration would exceed the configured subset budget."""


class DSU:
    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v):
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass
class SolveResult:
    """Decision plus optional witness; states counts explored search states."""

    feasible: bool
    tree: SteinerTree | None = None
    states: int = 0
    ksteiner: int | None = None


def _supergraph(g, r):
    """Collapse terminal components; returns (q, comp nodes, candidate order, adj sets)."""
    rset = set(r)
    comps = g.components(within=rset)
    comps = [frozenset(c) for c in sorted(comps, key=min)]
    q = len(comps)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    cands = sorted(v for v in range(g.n) if v not in rset)
    node_of = {v: q + i for i, v in enumerate(cands)}
    nn = q + len(cands)
    adj = [set() for _ in range(nn)]
    for i, v in enumerate(cands):
        vi = q + i
        for u in g.adj[v]:
            ui = comp_of[u] if u in rset else node_of[u]
            if ui != vi:
                adj[vi].add(ui)
                adj[ui].add(vi)
    return comps, cands, adj


def _python_scan(adj, q, ncand, kmax, budget):
    """Plain enumeration for supergraphs too large for the bitset kernel."""
    import itertools

    tried = 0
    nodes = list(range(q))
    for size in range(kmax + 1):
        if size > ncand:
            break
        for combo in itertools.combinations(range(q, q + ncand), size):
            tried += 1
            if tried > budget:
                raise BudgetExceededError("subset budget %d exceeded" % budget)
            active = set(nodes) | set(combo)
            seen = {0}
            stack = [0]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u in active and u not in seen:
                        seen.add(u)
                        stack.append(u)
            if all(c in seen for c in range(q)):
                return 1, set(combo), tried
    return 0, None, tried


def _extract_tree(g, r, steiner):
    """Spanning tree of G[R u S] pruned so every leaf is a terminal."""
    rset = set(r)
    keep = rset | set(steiner)
    root = min(rset)
    parent = {root: None}
    order = [root]
    queue = [root]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for u in sorted(g.adj[v]):
            if u in keep and u not in parent:
                parent[u] = v
                order.append(u)
                queue.append(u)
    if not rset <= parent.keys():
        raise AssertionError("terminals not connected by chosen Steiner set")
    children = {v: 0 for v in parent}
    for v, p in parent.items():
        if p is not None:
            children[p] += 1
    # drop non-terminal leaves until only useful branches remain
    removed = set()
    stack = [v for v in parent if children[v] == 0 and v not in rset]
    while stack:
        v = stack.pop()
        removed.add(v)
        p = parent[v]
        if p is not None:
            children[p] -= 1
            if children[p] == 0 and p not in rset:
                stack.append(p)
    edges = [(v, p) for v, p in parent.items() if p is not None and v not in removed]
    kept = {v for v in parent if v not in removed}
    return SteinerTree(edges, kept - rset)


def brute_force_decide(g, r, k, budget=DEFAULT_BUDGET, backend=None):
    """Is there S (|S| <= k) of non-terminals connecting all terminals?"""
    rset = set(r)
    if not rset:
        raise ValueError("terminal set is empty")
    home = next(comp for comp in g.components() if rset & comp)
    if not rset <= home:
        # terminals split across graph components, no Steiner set helps
        return SolveResult(False, states=0)
    comps, cands, adj = _supergraph(g, rset)
    q = len(comps)
    nn = q + len(cands)
    kmax = min(k, len(cands))
    if nn <= 63:
        masks = [0] * nn
        for v in range(nn):
            mv = 0
            for u in adj[v]:
                mv |= 1 << u
            masks[v] = mv
        rmask = (1 << q) - 1
        cand_nodes = list(range(q, nn))
        status, mask, tried = _kernels.scan_subsets(masks, rmask, cand_nodes, kmax, budget, backend)
        if status == -1:
            raise BudgetExceededError("subset budget %d exceeded" % budget)
        if status == 0:
            return SolveResult(False, states=tried)
        chosen = {cands[i - q] for i in range(q, nn) if (mask >> i) & 1}
    else:
        status, combo, tried = _python_scan(adj, q, len(cands), kmax, budget)
        if status == 0:
            return SolveResult(False, states=tried)
        chosen = {cands[i - q] for i in combo}
    tree = _extract_tree(g, rset, chosen)
    return SolveResult(True, tree, tried, len(tree.steiner))


def brute_force_min(g, r, budget=DEFAULT_BUDGET, backend=None):
    """Minimum Steiner count over all subsets, or infeasible."""
    rset = set(r)
    home = next(comp for comp in g.components() if rset & comp)
    if not rset <= home:
        return SolveResult(False, states=0)
    res = brute_force_decide(g, rset, g.n, budget=budget, backend=backend)
    if not res.feasible:
        raise AssertionError("connected terminals must admit some Steiner set")
    return res


def verify_tree(g, r, k, tree):
    """Check a witness: edges exist, acyclic, connected, spans R, budget holds."""
    rset = set(r)
    verts = tree.vertices()
    if not verts and len(rset) == 1:
        if tree.steiner:
            return False, "steiner set mismatch"
        return True, "ok"
    for u, v in tree.edges:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return False, "non-edge"
    if not rset <= verts:
        return False, "terminal uncovered"
    if tree.steiner != verts - rset:
        return False, "steiner set mismatch"
    if len(tree.steiner) > k:
        return False, "budget exceeded"
    if len(tree.edges) != len(verts) - 1:
        return False, "not a tree"
    dsu = DSU(verts)
    for u, v in tree.edges:
        if not dsu.union(u, v):
            return False, "not a tree"
    return True, "ok"
