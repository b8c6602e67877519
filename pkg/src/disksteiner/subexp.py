"""Shifting-based subexponential exact Steiner solver for clique-grid graphs.

Column pairs are labelled round-robin with L = ceil(sqrt(t+k)) labels. For
each label, deleting all unchosen non-terminals from the labelled columns
splits the graph into strips of at most 2(L-1) columns; the guessed survivors
Y (chosen non-terminals plus every terminal in a labelled column) ride along
in every bag of the concatenated strip decomposition. A dynamic program over
that nice decomposition tracks, per bag, the partition of bag vertices into
connected components of the partial tree and the exact number of Steiner
vertices committed so far. The original instance is a yes exactly when some
member of this family admits an exact-k' tree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import pathdecomp
from .geometry import SteinerTree
from .oracle import DSU, SolveResult, verify_tree

# a Steiner-minimal tree never needs more vertices per cell than the cell's
# 5x5 grid neighborhood can distinguish
MAX_STEINER_PER_CELL = 24


def label_count(t, k):
    """L = ceil(sqrt(t + k))."""
    x = t + k
    L = math.isqrt(x)
    if L * L < x:
        L += 1
    return max(L, 1)


def column_pair(j):
    """Columns {2i-1, 2i} form pair i."""
    return (j + 1) // 2


def pair_label(pair, L):
    return pair % L


@dataclass
class GoodFamilyMember:
    """One induced-subgraph instance produced by the shifting step."""

    graph: object
    repr: object
    label: int
    y_set: frozenset
    host: frozenset
    k_exact: int
    ncpd: pathdecomp.NCPD


def _strip_runs(occupied_cols, L, label):
    """Maximal runs of consecutive unlabelled pairs, as column sets."""
    if not occupied_cols:
        return []
    last_pair = column_pair(max(occupied_cols))
    runs = []
    cur = []
    for pair in range(1, last_pair + 1):
        if pair_label(pair, L) == label:
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.extend((2 * pair - 1, 2 * pair))
    if cur:
        runs.append(cur)
    occ = set(occupied_cols)
    return [sorted(set(run) & occ) for run in runs if set(run) & occ]


def _groups(g, repr_, k):
    """Yield (label, y_prefix_size, y, alive, ncpd) for every shifting guess."""
    rset = g.terminals
    t = len(rset)
    L = label_count(t, k)
    occupied = repr_.occupied_columns()
    n = g.n
    for label in range(L):
        labelled = {j for j in occupied if pair_label(column_pair(j), L) == label}
        y_r = frozenset(v for v in rset if repr_.column(v) in labelled)
        if len(y_r) > L:
            continue
        pool = sorted(v for v in range(n) if v not in rset and repr_.column(v) in labelled)
        runs = _strip_runs(occupied, L, label)
        for size in range(0, L - len(y_r) + 1):
            if size > min(len(pool), k):
                break
            for chosen in itertools.combinations(pool, size):
                y = y_r | frozenset(chosen)
                deleted = set(pool) - set(chosen)
                alive = frozenset(v for v in range(n) if v not in deleted)
                cpds = []
                for run in runs:
                    cols = set(run)
                    cells = {repr_.cell(v) for v in alive if repr_.column(v) in cols and v not in y}
                    if cells:
                        cpds.append(pathdecomp.strip_cpd(cells, max_cols=2 * L))
                ncpd = pathdecomp.nice_for_strips(cpds, y)
                yield label, size, y, alive, ncpd


def enumerate_good_family(g, repr_, k):
    """Stream the good family; deduplicated on (host, Y, k')."""
    seen = set()
    for label, ysize, y, alive, ncpd in _groups(g, repr_, k):
        for k_exact in range(ysize, k + 1):
            key = (alive, y, k_exact)
            if key in seen:
                continue
            seen.add(key)
            yield GoodFamilyMember(g, repr_, label, y, alive, k_exact, ncpd)


def _canon(parts):
    return tuple(sorted(tuple(sorted(p)) for p in parts))


def _leaf_layer(g, y, rset, kmax):
    """Seed states from the connected components of H[Y]."""
    comps = []
    forest = []
    left = set(y)
    while left:
        s = min(left)
        comp = {s}
        queue = [s]
        left.discard(s)
        while queue:
            v = queue.pop()
            for u in sorted(g.adj[v]):
                if u in left:
                    left.discard(u)
                    comp.add(u)
                    forest.append((v, u))
                    queue.append(u)
        comps.append(comp)
    k0 = len([v for v in y if v not in rset])
    if k0 > kmax:
        return {}
    key = (_canon(comps), k0, False)
    entry = (None, tuple(sorted(v for v in y if v not in rset)), tuple(forest))
    return {key: entry}


def _merge_new(g, parts, wlist):
    """Attach new vertices to the current parts; returns (parts', edges used)."""
    owner = {}
    for pi, part in enumerate(parts):
        for v in part:
            owner[v] = pi
    labels = [("p", pi) for pi in range(len(parts))] + [("v", w) for w in wlist]
    dsu = DSU(labels)
    edges = []
    wset = set(wlist)
    for w in wlist:
        for u in sorted(g.adj[w]):
            if u in owner:
                if dsu.union(("v", w), ("p", owner[u])):
                    edges.append((w, u))
            elif u in wset:
                if dsu.union(("v", w), ("v", u)):
                    edges.append((w, u))
    merged = {}
    for pi, part in enumerate(parts):
        merged.setdefault(dsu.find(("p", pi)), set()).update(part)
    for w in wlist:
        merged.setdefault(dsu.find(("v", w)), set()).add(w)
    return _canon(merged.values()), tuple(edges)


def _run_dp(g, repr_, alive, y, ncpd, kmax):
    """Layered DP over the nice decomposition; returns (layers, final states)."""
    rset = g.terminals
    members = repr_.members()
    cell_alive = {}
    for cell, verts in members.items():
        vals = [v for v in verts if v in alive and v not in y]
        if vals:
            cell_alive[cell] = vals

    layers = [_leaf_layer(g, y, rset, kmax)]
    for kind, cell, _bag in ncpd.nodes[1:]:
        prev_layer = layers[-1]
        new_layer = {}
        if kind == "introduce":
            verts = cell_alive.get(cell, [])
            terms = [v for v in verts if v in rset]
            cands = [v for v in verts if v not in rset]
            for key in sorted(prev_layer):
                parts, kused, done = key
                if done:
                    if not terms:
                        new_layer.setdefault(key, (key, (), ()))
                    continue
                cap = min(MAX_STEINER_PER_CELL, kmax - kused, len(cands))
                for size in range(cap + 1):
                    for st in itertools.combinations(cands, size):
                        wlist = sorted(terms + list(st))
                        if not wlist:
                            new_layer.setdefault(key, (key, (), ()))
                            continue
                        nparts, nedges = _merge_new(g, parts, wlist)
                        nkey = (nparts, kused + size, False)
                        new_layer.setdefault(nkey, (key, st, nedges))
        else:  # forget
            drop = set(cell_alive.get(cell, []))
            for key in sorted(prev_layer):
                parts, kused, done = key
                if done:
                    new_layer.setdefault(key, (key, (), ()))
                    continue
                nparts = []
                died = 0
                for part in parts:
                    rem = tuple(v for v in part if v not in drop)
                    if rem:
                        nparts.append(rem)
                    else:
                        died += 1
                if died:
                    if died == 1 and len(parts) == 1:
                        # the whole partial tree just completed
                        nkey = ((), kused, True)
                        new_layer.setdefault(nkey, (key, (), ()))
                    continue
                nkey = (_canon(nparts), kused, False)
                new_layer.setdefault(nkey, (key, (), ()))
        layers.append(new_layer)
        if not new_layer:
            break
    return layers


def _accepting(layers, y):
    """Map exact Steiner count -> accepting final state key."""
    final = layers[-1]
    out = {}
    for key in sorted(final):
        parts, kused, done = key
        ok = (done and not parts) or (not done and len(parts) == 1 and set(parts[0]) == set(y))
        if ok and kused not in out:
            out[kused] = key
    return out


def _witness(layers, key):
    edges = []
    steiner = set()
    cur = key
    for layer in reversed(layers):
        prev, st, nedges = layer[cur]
        edges.extend(nedges)
        steiner.update(st)
        if prev is None:
            break
        cur = prev
    return SteinerTree(edges, steiner)


def solve_exact_on_ncpd(member):
    """Decide one good-family member: exact k' Steiner tree containing Y."""
    g = member.graph
    layers = _run_dp(g, member.repr, member.host, member.y_set, member.ncpd, member.k_exact)
    states = sum(len(layer) for layer in layers)
    acc = _accepting(layers, member.y_set)
    if member.k_exact not in acc:
        return SolveResult(False, states=states)
    tree = _witness(layers, acc[member.k_exact])
    ok, reason = verify_tree(g, g.terminals, member.k_exact, tree)
    if not ok:
        raise AssertionError("reconstructed witness rejected: %s" % reason)
    return SolveResult(True, tree, states, member.k_exact)


def _terminals_connected(g, alive, rset):
    start = min(rset)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if u in alive and u not in seen:
                seen.add(u)
                stack.append(u)
    return rset <= seen


def solve_subexp(g, repr_, k):
    """Decision plus witness for 'some Steiner tree with at most k extras'."""
    rset = g.terminals
    if not rset:
        raise ValueError("terminal set is empty")
    states_total = 0
    seen = set()
    for label, ysize, y, alive, ncpd in _groups(g, repr_, k):
        gk = (alive, y)
        if gk in seen:
            continue
        seen.add(gk)
        if not _terminals_connected(g, alive, rset):
            continue
        layers = _run_dp(g, repr_, alive, y, ncpd, k)
        states_total += sum(len(layer) for layer in layers)
        acc = _accepting(layers, y)
        if acc:
            kbest = min(acc)
            tree = _witness(layers, acc[kbest])
            ok, reason = verify_tree(g, rset, k, tree)
            if not ok:
                raise AssertionError("reconstructed witness rejected: %s" % reason)
            return SolveResult(True, tree, states_total, kbest)
    return SolveResult(False, states=states_total)
