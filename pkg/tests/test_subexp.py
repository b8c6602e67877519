import numpy as np
import pytest

from disksteiner.cliquegrid import compute_representation
from disksteiner.geometry import build_intersection_graph
from disksteiner.instances import mark_terminals, random_udg
from disksteiner.oracle import brute_force_decide, brute_force_min, verify_tree
from disksteiner.pathdecomp import validate_pathdecomp
from disksteiner.subexp import (
    column_pair,
    enumerate_good_family,
    label_count,
    pair_label,
    solve_exact_on_ncpd,
    solve_subexp,
)


def setup(seed, n=10, t=3, box=60, radius=14):
    inst = mark_terminals(random_udg(n, box, radius, seed=seed), t, seed=seed + 1)
    g = build_intersection_graph(inst)
    rep = compute_representation(inst)
    return g, rep


def test_label_count_is_sqrt_ceiling():
    assert label_count(2, 2) == 2
    assert label_count(6, 3) == 3
    assert label_count(8, 8) == 4
    assert label_count(1, 0) == 1


def test_column_pairs_and_labels():
    assert [column_pair(j) for j in range(1, 7)] == [1, 1, 2, 2, 3, 3]
    assert [pair_label(p, 3) for p in range(1, 7)] == [1, 2, 0, 1, 2, 0]


def test_good_family_members_are_wellformed():
    g, rep = setup(2)
    k = 2
    t = len(g.terminals)
    L = label_count(t, k)
    members = list(enumerate_good_family(g, rep, k))
    assert members
    seen = set()
    for mem in members:
        key = (mem.host, mem.y_set, mem.k_exact)
        assert key not in seen  # deduplicated
        seen.add(key)
        assert mem.y_set <= mem.host
        assert g.terminals <= mem.host
        assert len(mem.y_set) <= L
        assert len(mem.y_set) <= mem.k_exact + t
        assert mem.k_exact <= k
        # the attached decomposition really is a path decomposition of the
        # surviving vertices (Y rides along in every bag)
        assert validate_pathdecomp(g, mem.ncpd, rep, alive=mem.host)


def test_good_family_width_bound():
    g, rep = setup(4, n=16, t=4, box=100)
    k = 5  # t + k = 9, so L = 3
    L = label_count(len(g.terminals), k)
    for mem in enumerate_good_family(g, rep, k):
        ycells = {rep.cell(v) for v in mem.y_set}
        for _, _, bag in mem.ncpd.nodes:
            assert len(set(bag) | ycells) <= 7 * L


def test_exact_member_decisions_cover_the_instance():
    # an instance is a yes iff some good-family member is an exact yes
    g, rep = setup(7, n=9)
    for k in range(0, 3):
        want = brute_force_decide(g, g.terminals, k).feasible
        got = any(
            solve_exact_on_ncpd(mem).feasible
            for mem in enumerate_good_family(g, rep, k)
        )
        assert got == want


def test_empty_terminals_rejected():
    from disksteiner.geometry import Graph

    g = Graph(3, [(0, 1)])
    rep = compute_representation(
        random_udg(3, 10, 5, seed=0)
    )
    with pytest.raises(ValueError):
        solve_subexp(g, rep, 1)


@pytest.mark.parametrize("seed", range(30))
def test_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 12))
    g, rep = setup(seed, n=n, t=int(rng.integers(2, 4)))
    k = int(rng.integers(0, 4))
    want = brute_force_decide(g, g.terminals, k)
    got = solve_subexp(g, rep, k)
    assert got.feasible == want.feasible, (seed, n, k)
    if got.feasible:
        ok, reason = verify_tree(g, g.terminals, k, got.tree)
        assert ok, reason
        assert got.ksteiner == brute_force_min(g, g.terminals).ksteiner


def test_witness_is_deterministic():
    g, rep = setup(11)
    a = solve_subexp(g, rep, 2)
    b = solve_subexp(g, rep, 2)
    assert a.feasible == b.feasible
    if a.feasible:
        assert a.tree == b.tree
    assert a.states == b.states
