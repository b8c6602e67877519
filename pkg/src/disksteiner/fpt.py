"""Parameterized exact solver: contract terminal components, then Dreyfus-Wagner.

On a unit disk graph every Steiner vertex of a minimal tree is adjacent to at
most 24 distinct components of G[R], so a yes-instance with budget k has at
most 24k terminal components (one component is a free yes). The contracted
graph keeps one node per component of G[R] plus every non-terminal; an
unweighted Dreyfus-Wagner run over the component nodes then minimizes edges,
which for trees is the same as minimizing Steiner vertices. The contracted
tree expands back edge by edge without creating cycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._kernels import DW_INF, dreyfus_wagner_table
from .geometry import Graph, SteinerTree
from .oracle import SolveResult, verify_tree

MAX_COMPONENTS_PER_STEINER = 24

# 2^q * n int32 cells; past this the table does not fit in ordinary memory
_TABLE_CELL_LIMIT = 300_000_000


def terminal_components(g):
    """Components of G[R]: list of (sorted members, spanning tree edges)."""
    rset = g.terminals
    left = set(rset)
    out = []
    while left:
        s = min(left)
        comp = [s]
        tree = []
        left.discard(s)
        queue = [s]
        while queue:
            v = queue.pop(0)
            for u in sorted(g.adj[v]):
                if u in left:
                    left.discard(u)
                    comp.append(u)
                    tree.append((v, u))
                    queue.append(u)
        out.append((sorted(comp), tree))
    return out


@dataclass
class ContractedGraph:
    """G with each component of G[R] collapsed to a single node."""

    n: int
    edges: list
    terminals: frozenset
    comp_members: list
    comp_trees: list
    node_of: dict
    orig_of: list
    concrete: dict = field(default_factory=dict)

    def graph(self):
        return Graph(self.n, self.edges, self.terminals)


def contract_components(g):
    comps = terminal_components(g)
    q = len(comps)
    node_of = {}
    for i, (members, _tree) in enumerate(comps):
        for v in members:
            node_of[v] = i
    orig_of = [None] * q
    nonterms = sorted(v for v in range(g.n) if v not in g.terminals)
    for v in nonterms:
        node_of[v] = len(orig_of)
        orig_of.append(v)
    edges = []
    concrete = {}
    for u, v in g.edge_list():
        a, b = node_of[u], node_of[v]
        if a == b:
            continue
        if a > b:
            a, b = b, a
            u, v = v, u
        if (a, b) not in concrete:
            concrete[(a, b)] = (u, v)
            edges.append((a, b))
    return ContractedGraph(
        n=len(orig_of),
        edges=edges,
        terminals=frozenset(range(q)),
        comp_members=[m for m, _t in comps],
        comp_trees=[t for _m, t in comps],
        node_of=node_of,
        orig_of=orig_of,
        concrete=concrete,
    )


def dreyfus_wagner(gstar, term_nodes, backend=None):
    """Min-edge Steiner tree for term_nodes; returns (edge count, edges) or None."""
    import numpy as np

    q = len(term_nodes)
    if q == 0:
        raise ValueError("need at least one terminal node")
    if (1 << q) * gstar.n > _TABLE_CELL_LIMIT:
        raise RuntimeError("Dreyfus-Wagner table would exceed the memory limit")
    indptr, indices = gstar.csr()
    terms = np.asarray(sorted(term_nodes), dtype=np.int64)
    table = dreyfus_wagner_table(indptr, indices, terms, gstar.n, backend)
    full = (1 << q) - 1
    root = int(np.argmin(table[full]))
    best = int(table[full][root])
    if best >= DW_INF:
        return None
    edges = set()
    node_for = {i: int(terms[i]) for i in range(q)}

    def trace(mask, v):
        while True:
            d = int(table[mask][v])
            if d == 0:
                return
            sub = (mask - 1) & mask
            found = False
            while sub:
                rest = mask ^ sub
                if rest and int(table[sub][v]) + int(table[rest][v]) == d:
                    trace(sub, v)
                    trace(rest, v)
                    return
                sub = (sub - 1) & mask
            for u in sorted(gstar.adj[v]):
                if int(table[mask][u]) + 1 == d:
                    edges.add((min(u, v), max(u, v)))
                    v = u
                    found = True
                    break
            if not found:
                raise AssertionError("inconsistent Dreyfus-Wagner table")

    trace(full, root)
    assert len(edges) == best, (len(edges), best)
    return best, sorted(edges)


def _expand(g, cg, star_edges):
    """Map a contracted tree back to a tree of the original graph."""
    q = len(cg.comp_members)
    used = {a for e in star_edges for a in e}
    used.update(range(q))
    edges = []
    for i in range(q):
        edges.extend(cg.comp_trees[i])
    for a, b in star_edges:
        edges.append(cg.concrete[(a, b)])
    steiner = sorted(cg.orig_of[a] for a in used if a >= q)
    return SteinerTree(edges, steiner)


def solve_fpt(g, k, backend=None):
    """Decision plus witness; parameterized by the Steiner budget k."""
    if not g.terminals:
        raise ValueError("terminal set is empty")
    if k < 0:
        raise ValueError("negative Steiner budget")
    cg = contract_components(g)
    q = len(cg.comp_members)
    if q == 1:
        tree = SteinerTree(cg.comp_trees[0], ())
        return SolveResult(True, tree, states=1, ksteiner=0)
    if k == 0:
        return SolveResult(False, states=1)
    if q > MAX_COMPONENTS_PER_STEINER * k:
        return SolveResult(False, states=1)
    gstar = cg.graph()
    res = dreyfus_wagner(gstar, range(q), backend)
    states = (1 << q) * gstar.n
    if res is None:
        return SolveResult(False, states=states)
    best_edges, star_edges = res
    ksteiner = best_edges - q + 1
    if ksteiner > k:
        return SolveResult(False, states=states)
    tree = _expand(g, cg, star_edges)
    ok, reason = verify_tree(g, g.terminals, k, tree)
    if not ok:
        raise AssertionError("expanded witness rejected: %s" % reason)
    return SolveResult(True, tree, states, ksteiner)
