"""Compiled integer kernels with pure numpy fallbacks.

Three hot loops live here: pairwise disk adjacency, the brute-force subset
scan over a bitset supergraph, and the Dreyfus-Wagner table fill. Each has a
numba version and a numpy version computing identical results. The backend is
picked per call: an explicit argument wins, then the DISKSTEINER_BACKEND
environment variable ("numba" or "numpy"), then numba whenever it imports.
"""

import itertools
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


ENV_VAR = "DISKSTEINER_BACKEND"

# Sentinel for unreachable Dreyfus-Wagner entries. Small enough that two of
# them add without overflowing int32.
DW_INF = 500_000_000


def resolve_backend(backend=None):
    """Return 'numba' or 'numpy' honoring the argument, env var, availability."""
    choice = backend or os.environ.get(ENV_VAR, "").strip().lower() or None
    if choice is None:
        return "numba" if HAS_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError("unknown backend %r" % (choice,))
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return choice


# ---------------------------------------------------------------------------
# pairwise disk adjacency


@njit(cache=True)
def _edges_njit(xs, ys, rs):
    n = xs.shape[0]
    cap = 256
    eu = np.empty(cap, np.int64)
    ev = np.empty(cap, np.int64)
    m = 0
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        ri = rs[i]
        for j in range(i + 1, n):
            dx = xs[j] - xi
            dy = ys[j] - yi
            rr = ri + rs[j]
            if dx * dx + dy * dy <= rr * rr:
                if m == cap:
                    cap *= 2
                    nu = np.empty(cap, np.int64)
                    nv = np.empty(cap, np.int64)
                    nu[:m] = eu
                    nv[:m] = ev
                    eu = nu
                    ev = nv
                eu[m] = i
                ev[m] = j
                m += 1
    return eu[:m], ev[:m]


def _edges_numpy(xs, ys, rs):
    n = xs.shape[0]
    if n < 2:
        z = np.empty(0, np.int64)
        return z, z.copy()
    cols = np.arange(n, dtype=np.int64)
    block = max(1, (1 << 22) // n)
    parts_u = []
    parts_v = []
    for i0 in range(0, n, block):
        i1 = min(n, i0 + block)
        dx = xs[i0:i1, None] - xs[None, :]
        dy = ys[i0:i1, None] - ys[None, :]
        rr = rs[i0:i1, None] + rs[None, :]
        ok = dx * dx + dy * dy <= rr * rr
        ok &= cols[i0:i1, None] < cols[None, :]
        ii, jj = np.nonzero(ok)
        parts_u.append(ii.astype(np.int64) + i0)
        parts_v.append(jj.astype(np.int64))
    return np.concatenate(parts_u), np.concatenate(parts_v)


def edges_int64(xs, ys, rs, backend=None):
    """Index pairs (u < v) of intersecting disks; inputs are int64 arrays."""
    if resolve_backend(backend) == "numba":
        return _edges_njit(xs, ys, rs)
    return _edges_numpy(xs, ys, rs)


# ---------------------------------------------------------------------------
# subset scan for the brute-force oracle
#
# The caller collapses the instance to a supergraph of at most 63 nodes
# (terminal components plus Steiner candidates) described by int64 adjacency
# bitmasks. The scan enumerates candidate subsets by cardinality in
# lexicographic order and reports the first subset whose union with the
# mandatory nodes connects them all. Status: 1 found, 0 exhausted, -1 budget.


@njit(cache=True)
def _scan_connected(adj, rmask, active):
    reach = rmask & (-rmask)
    frontier = reach
    while frontier != 0:
        nxt = np.int64(0)
        for v in range(adj.shape[0]):
            if (frontier >> v) & 1:
                nxt |= adj[v]
        nxt &= active & ~reach
        reach |= nxt
        frontier = nxt
    return (reach & rmask) == rmask


@njit(cache=True)
def _scan_njit(adj, rmask, cand, kmax, budget):
    nc = cand.shape[0]
    tried = np.int64(0)
    for size in range(kmax + 1):
        if size > nc:
            break
        if size == 0:
            if tried + 1 > budget:
                return -1, np.int64(0), tried
            tried += 1
            if _scan_connected(adj, rmask, rmask):
                return 1, np.int64(0), tried
            continue
        idx = np.empty(size, np.int64)
        for i in range(size):
            idx[i] = i
        while True:
            if tried + 1 > budget:
                return -1, np.int64(0), tried
            tried += 1
            cm = np.int64(0)
            for i in range(size):
                cm |= np.int64(1) << cand[idx[i]]
            if _scan_connected(adj, rmask, rmask | cm):
                return 1, cm, tried
            i = size - 1
            while i >= 0 and idx[i] == nc - size + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, size):
                idx[j] = idx[j - 1] + 1
    return 0, np.int64(0), tried


def _scan_numpy(adj, rmask, cand, kmax, budget):
    nn = adj.shape[0]
    tried = 0
    for size in range(kmax + 1):
        if size > cand.shape[0]:
            break
        combos = itertools.combinations([int(c) for c in cand], size)
        while True:
            batch = list(itertools.islice(combos, 4096))
            if not batch:
                break
            cut = False
            if tried + len(batch) > budget:
                batch = batch[: budget - tried]
                cut = True
            masks = np.zeros(len(batch), np.int64)
            for col in range(size):
                masks |= np.int64(1) << np.array([b[col] for b in batch], np.int64)
            active = masks | rmask
            reach = np.full(len(batch), rmask & (-rmask), np.int64)
            frontier = reach.copy()
            while frontier.any():
                nxt = np.zeros(len(batch), np.int64)
                for v in range(nn):
                    hit = ((frontier >> v) & 1).astype(bool)
                    if hit.any():
                        nxt[hit] |= adj[v]
                nxt &= active & ~reach
                reach |= nxt
                frontier = nxt
            ok = (reach & rmask) == rmask
            if ok.any():
                first = int(np.argmax(ok))
                return 1, int(masks[first]), tried + first + 1
            tried += len(batch)
            if cut:
                return -1, 0, tried
    return 0, 0, tried


def scan_subsets(adj, rmask, cand, kmax, budget, backend=None):
    """First candidate subset (as bitmask) of size <= kmax connecting rmask."""
    adj = np.asarray(adj, np.int64)
    cand = np.asarray(cand, np.int64)
    if resolve_backend(backend) == "numba":
        status, mask, tried = _scan_njit(adj, rmask, cand, kmax, np.int64(budget))
        return int(status), int(mask), int(tried)
    return _scan_numpy(adj, np.int64(rmask), cand, kmax, int(budget))


# ---------------------------------------------------------------------------
# Dreyfus-Wagner table over unit edge weights
#
# dp[mask, v] = minimum edge count of a tree spanning the terminals in mask
# plus vertex v. Each mask row is finished by merging submask splits and then
# relaxing with a bucket queue (unit weights, so distances stay below n).


@njit(cache=True)
def _dw_njit(indptr, indices, terms, n, inf):
    q = terms.shape[0]
    full = 1 << q
    dp = np.full((full, n), inf, np.int32)
    cnt = np.empty(n + 2, np.int32)
    fillp = np.empty(n + 1, np.int32)
    order = np.empty(n, np.int32)
    head = np.empty(n + 2, np.int32)
    nxt = np.empty(n, np.int32)
    for mask in range(1, full):
        row = dp[mask]
        bits = 0
        low = -1
        for ti in range(q):
            if (mask >> ti) & 1:
                bits += 1
                low = ti
        if bits == 1:
            row[terms[low]] = 0
        else:
            sub = (mask - 1) & mask
            while sub > (mask ^ sub):
                other = mask ^ sub
                a = dp[sub]
                b = dp[other]
                for v in range(n):
                    c = a[v] + b[v]
                    if c < row[v]:
                        row[v] = c
                sub = (sub - 1) & mask
            for v in range(n):
                # merged sums can exceed the sentinel; keep rows canonical
                if row[v] > inf:
                    row[v] = inf
        # bucket Dijkstra over unit weights. Seeds are counting-sorted once;
        # improved vertices go to per-level lists instead, which each vertex
        # enters at most once (a second improvement at a later level would
        # need a strictly smaller distance than the one it already has).
        for d in range(n + 2):
            cnt[d] = 0
            head[d] = -1
        for v in range(n):
            d = row[v]
            if d <= n:
                cnt[d + 1] += 1
        for d in range(n + 1):
            cnt[d + 1] += cnt[d]
            fillp[d] = cnt[d]
        for v in range(n):
            d = row[v]
            if d <= n:
                order[fillp[d]] = v
                fillp[d] += 1
        for d in range(n + 1):
            ii = cnt[d]
            stop = cnt[d + 1]
            v = -1
            dyn = head[d]
            while True:
                if ii < stop:
                    v = order[ii]
                    ii += 1
                elif dyn != -1:
                    v = dyn
                    dyn = nxt[dyn]
                else:
                    break
                if row[v] != d:
                    continue
                for e in range(indptr[v], indptr[v + 1]):
                    u = indices[e]
                    if d + 1 < row[u]:
                        row[u] = d + 1
                        if d + 1 <= n:
                            nxt[u] = head[d + 1]
                            head[d + 1] = u
        dp[mask] = row
    return dp


def _dw_numpy(indptr, indices, terms, n, inf):
    q = terms.shape[0]
    full = 1 << q
    dp = np.full((full, n), inf, np.int32)
    eu = np.repeat(np.arange(n), np.diff(indptr))
    ev = indices
    for mask in range(1, full):
        row = dp[mask]
        if mask & (mask - 1) == 0:
            row[terms[int(mask).bit_length() - 1]] = 0
        else:
            sub = (mask - 1) & mask
            while sub > (mask ^ sub):
                np.minimum(row, dp[sub] + dp[mask ^ sub], out=row)
                sub = (sub - 1) & mask
            np.minimum(row, inf, out=row)
        if len(ev):
            # scatter-min over both edge directions until fixpoint
            while True:
                before = row.copy()
                np.minimum.at(row, ev, row[eu] + 1)
                np.minimum.at(row, eu, row[ev] + 1)
                if np.array_equal(before, row):
                    break
        dp[mask] = row
    return dp


def dreyfus_wagner_table(indptr, indices, terms, n, backend=None):
    """Full (2^q, n) int32 DP table; DW_INF marks unreachable entries."""
    indptr = np.asarray(indptr, np.int32)
    indices = np.asarray(indices, np.int32)
    terms = np.asarray(terms, np.int64)
    if resolve_backend(backend) == "numba":
        return _dw_njit(indptr, indices, terms, n, np.int32(DW_INF))
    return _dw_numpy(indptr, indices, terms, n, np.int32(DW_INF))
