"""Random instance generation for tests and benchmarks.

All randomness comes from numpy's PCG64 stream seeded explicitly, so any
instance is reproducible from its (parameters, seed) pair alone.
"""

from __future__ import annotations

import numpy as np

from .geometry import DiskInstance


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def random_udg(n, box_side, radius, seed):
    """n equal disks with integer centers uniform on [0, box_side]^2.

    Vertex 0 starts as the only terminal; use mark_terminals to choose a
    real terminal set. The instance scale equals the radius, so the disks
    are unit disks in scaled coordinates.
    """
    if n < 1:
        raise ValueError("need at least one disk")
    if box_side < 0:
        raise ValueError("negative box")
    if radius < 1:
        raise ValueError("radius must be a positive integer")
    rng = _rng(seed)
    xs = rng.integers(0, box_side + 1, size=n)
    ys = rng.integers(0, box_side + 1, size=n)
    terminal = [True] + [False] * (n - 1)
    return DiskInstance(
        radius,
        list(range(n)),
        [int(x) for x in xs],
        [int(y) for y in ys],
        [radius] * n,
        terminal,
    )


def mark_terminals(inst, t, seed):
    """Flag t distinct vertices as terminals, chosen uniformly per seed."""
    if not 1 <= t <= inst.n:
        raise ValueError("terminal count out of range")
    rng = _rng(seed)
    picks = rng.choice(inst.n, size=t, replace=False)
    flags = [False] * inst.n
    for i in picks:
        flags[int(i)] = True
    return inst.with_terminal_flags(flags)


def spread_statistic(inst, bins=4):
    """Chi-square statistic of center counts over a bins x bins grid.

    Diagnostic only: compare against a loose multiple of bins^2 - 1, not an
    exact quantile.
    """
    if bins < 1:
        raise ValueError("need at least one bin")
    xs = np.asarray(inst.xs, dtype=np.float64)
    ys = np.asarray(inst.ys, dtype=np.float64)
    side = max(xs.max(), ys.max(), 1.0)
    bx = np.minimum((xs * bins / (side + 1)).astype(np.int64), bins - 1)
    by = np.minimum((ys * bins / (side + 1)).astype(np.int64), bins - 1)
    counts = np.zeros((bins, bins), dtype=np.int64)
    np.add.at(counts, (bx, by), 1)
    expected = inst.n / (bins * bins)
    return float(((counts - expected) ** 2 / expected).sum())
