import math

import pytest

from disksteiner.fileio import dumps_instance, read_embedding
from disksteiner.gadgets import (
    GadgetError,
    GridTilingInstance,
    RectilinearEmbedding,
    cvc_brute,
    cvc_gadget,
    grid_tiling_brute,
    grid_tiling_gadget,
)
from disksteiner.geometry import Graph, build_intersection_graph
from disksteiner.oracle import brute_force_decide

P2 = RectilinearEmbedding(((0, 0), (8, 0)), ((0, 1),), ((((0, 0)), (8, 0)),))


def fixture(name):
    import os

    here = os.path.dirname(__file__)
    return read_embedding(os.path.join(here, "fixtures", "embeddings", name))


def test_embedding_accepts_p2():
    assert P2.n == 2 and P2.m == 1
    assert P2.path_length(0) == 8
    pts = P2.path_points(0)
    assert len(pts) == 9
    assert pts[0] == (0, 0) and pts[-1] == (8, 0)
    g = P2.source_graph()
    assert g.n == 2 and g.edge_list() == [(0, 1)]


def test_embedding_rejects_close_vertices():
    with pytest.raises(GadgetError):
        RectilinearEmbedding(((0, 0), (4, 0)), ((0, 1),), ((((0, 0)), (4, 0)),))


def test_embedding_rejects_odd_or_short_paths():
    with pytest.raises(GadgetError):
        RectilinearEmbedding(((0, 0), (9, 0)), ((0, 1),), ((((0, 0)), (9, 0)),))
    with pytest.raises(GadgetError):
        RectilinearEmbedding(
            ((0, 0), (8, 0)),
            ((0, 1),),
            (((0, 0), (6, 0)),),
        )


def test_embedding_rejects_endpoint_mismatch():
    with pytest.raises(GadgetError):
        RectilinearEmbedding(
            ((0, 0), (8, 0), (0, 8)),
            ((0, 1),),
            (((0, 0), (0, 8)),),
        )


def test_embedding_rejects_revisits():
    with pytest.raises(GadgetError):
        RectilinearEmbedding(
            ((0, 0), (8, 0)),
            ((0, 1),),
            (((0, 0), (10, 0), (8, 0)),),
        )


def test_embedding_rejects_pass_through_vertex():
    with pytest.raises(GadgetError):
        RectilinearEmbedding(
            ((0, 0), (8, 0), (16, 0)),
            ((0, 2), (0, 1)),
            (((0, 0), (16, 0)), ((0, 0), (0, 4), (8, 4), (8, 0))),
        )


def test_embedding_rejects_crossing_paths():
    with pytest.raises(GadgetError):
        RectilinearEmbedding(
            ((0, 0), (16, 0), (8, -8), (8, 8)),
            ((0, 1), (2, 3)),
            (((0, 0), (16, 0)), ((8, -8), (8, 8))),
        )


def test_cvc_brute_hand_values():
    p2 = Graph(2, [(0, 1)])
    assert cvc_brute(p2, 1)
    triangle = Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert not cvc_brute(triangle, 1)
    assert cvc_brute(triangle, 2)
    star = Graph(5, [(0, i) for i in range(1, 5)])
    assert cvc_brute(star, 1)
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert not cvc_brute(p4, 1)
    assert cvc_brute(p4, 2)
    # cover must induce a connected subgraph
    p5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert not cvc_brute(p5, 2)
    assert cvc_brute(p5, 3)
    edgeless = Graph(2)
    assert cvc_brute(edgeless, 0)


def test_cvc_gadget_shape():
    gadget = cvc_gadget(P2, 1)
    inst = gadget.instance
    assert gadget.kprime == 1 + 2 * 1 - 1
    assert inst.scale == 1
    assert set(inst.radii) == {1}
    assert len(gadget.grid_ids) == 2
    for v, did in enumerate(gadget.grid_ids):
        assert not inst.terminal[did]
        assert (inst.xs[did], inst.ys[did]) == P2.positions[v]
    # an 8-path carries two Steiner disks and one terminal disk
    assert inst.n == 2 + 3
    assert inst.t == 1
    assert inst.k == gadget.kprime


def test_cvc_gadget_rejects_degenerate_budgets():
    with pytest.raises(GadgetError):
        cvc_gadget(P2, 0)
    edgeless = RectilinearEmbedding(((0, 0),), (), ())
    with pytest.raises(GadgetError):
        cvc_gadget(edgeless, 1)


def test_cvc_gadget_deterministic():
    a = dumps_instance(cvc_gadget(fixture("g4_05.emb"), 2).instance)
    b = dumps_instance(cvc_gadget(fixture("g4_05.emb"), 2).instance)
    assert a == b


@pytest.mark.parametrize("name", ["g2_00.emb", "g3_00.emb", "g3_01.emb"])
def test_cvc_gadget_matches_brute(name):
    emb = fixture(name)
    g = emb.source_graph()
    for k in range(1, emb.n + 1):
        gadget = cvc_gadget(emb, k)
        graph = build_intersection_graph(gadget.instance)
        got = brute_force_decide(graph, graph.terminals, gadget.kprime).feasible
        assert got == cvc_brute(g, k)


def test_embedding_fixture_corpus_is_complete():
    import glob
    import os

    import networkx as nx

    here = os.path.join(os.path.dirname(__file__), "fixtures", "embeddings")
    sources = []
    for path in sorted(glob.glob(os.path.join(here, "*.emb"))):
        emb = read_embedding(path)
        g = emb.source_graph()
        nxg = nx.Graph(g.edge_list())
        nxg.add_nodes_from(range(g.n))
        sources.append(nxg)
    assert len(sources) == 29
    targets = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if not 2 <= n <= 5 or not nx.is_connected(g):
            continue
        if max(dict(g.degree()).values()) > 4 or not nx.check_planarity(g)[0]:
            continue
        targets.append(g)
    assert len(targets) == 29
    # every target graph appears exactly once among the fixtures
    used = set()
    for tg in targets:
        hits = [
            i
            for i, sg in enumerate(sources)
            if i not in used and nx.is_isomorphic(tg, sg)
        ]
        assert hits, tg.edges()
        used.add(hits[0])
    assert len(used) == 29


def uniform_cells(n, k, pairs):
    return {(x, y): frozenset(pairs) for x in range(1, k + 1) for y in range(1, k + 1)}


def test_grid_tiling_instance_validation():
    with pytest.raises(ValueError):
        GridTilingInstance(2, 2, {(1, 1): frozenset({(1, 1)})})
    with pytest.raises(ValueError):
        GridTilingInstance(2, 2, uniform_cells(2, 2, [(3, 1)]))
    with pytest.raises(ValueError):
        GridTilingInstance(2, 2, uniform_cells(2, 2, []))
    with pytest.raises(ValueError):
        GridTilingInstance(0, 1, {(1, 1): frozenset({(1, 1)})})


def test_grid_tiling_brute_hand_values():
    assert grid_tiling_brute(GridTilingInstance(2, 2, uniform_cells(2, 2, [(1, 1)])))
    conflict = uniform_cells(2, 2, [(1, 1)])
    conflict[(2, 1)] = frozenset({(2, 1)})
    assert not grid_tiling_brute(GridTilingInstance(2, 2, conflict))
    # decreasing rows and columns are fine
    ok = {
        (1, 1): frozenset({(2, 2)}),
        (2, 1): frozenset({(1, 2)}),
        (1, 2): frozenset({(2, 1)}),
        (2, 2): frozenset({(1, 1)}),
    }
    assert grid_tiling_brute(GridTilingInstance(2, 2, ok))


def test_grid_tiling_gadget_needs_two_values():
    with pytest.raises(GadgetError):
        grid_tiling_gadget(GridTilingInstance(1, 2, uniform_cells(1, 2, [(1, 1)])))


def test_grid_tiling_gadget_shape():
    n, k = 2, 2
    gt = GridTilingInstance(n, k, uniform_cells(n, k, [(1, 1), (2, 2)]))
    gadget = grid_tiling_gadget(gt)
    S = 4000 * n**10
    inst = gadget.instance
    assert gadget.budget == k * k == inst.k
    assert gadget.scale == S == inst.scale
    assert len(gadget.d1) == 2 * k * k
    assert len(gadget.forcing) == k * k
    assert len(gadget.hclusters) == k * (k - 1) * n
    assert len(gadget.vclusters) == k * (k - 1) * n
    assert len(gadget.chain_seqs) == 2 * (k - 1) * (k - 1)
    for key in gadget.d1:
        assert inst.radii[gadget.d1[key]] == S
        assert not inst.terminal[gadget.d1[key]]
    for fid in gadget.forcing.values():
        assert inst.radii[fid] == 1000 and inst.terminal[fid]
    up, down = gadget.chain_seqs[0], gadget.chain_seqs[1]
    # the two diagonal chains of a block share their middle disk
    assert set(up[2]) & set(down[2])


def test_grid_tiling_gadget_deterministic():
    gt = GridTilingInstance(2, 2, uniform_cells(2, 2, [(1, 2), (2, 1)]))
    assert dumps_instance(grid_tiling_gadget(gt).instance) == dumps_instance(
        grid_tiling_gadget(gt).instance
    )


@pytest.mark.parametrize("n", [2, 3])
def test_separation_inequalities_exact(n):
    # cluster disks (radius 1000) against candidate disks (radius S): offsets
    # at or below the candidate's are covered, anything above is missed
    S = 4000 * n**10
    reach = (S + 1000) ** 2
    for delta in range(0, n):
        for b in range(1, n + 1):
            assert (S - 4000 * delta) ** 2 + (4000 * b) ** 2 <= reach
    for delta in range(1, n + 1):
        for b in range(1, n + 1):
            assert (S + 4000 * delta) ** 2 + (4000 * b) ** 2 > reach


@pytest.mark.parametrize(
    "cells,want",
    [
        ({(1, 1): [(1, 1)], (2, 1): [(1, 2)], (1, 2): [(1, 1)], (2, 2): [(1, 1)]}, True),
        ({(1, 1): [(1, 1)], (2, 1): [(2, 1)], (1, 2): [(1, 1)], (2, 2): [(1, 1)]}, False),
        ({(1, 1): [(1, 1)], (2, 1): [(1, 1)], (1, 2): [(1, 2)], (2, 2): [(1, 1)]}, False),
        ({(1, 1): [(2, 2), (1, 1)], (2, 1): [(2, 2)], (1, 2): [(2, 2)], (2, 2): [(2, 2)]}, True),
    ],
)
def test_grid_tiling_gadget_matches_brute(cells, want):
    gt = GridTilingInstance(2, 2, {key: frozenset(v) for key, v in cells.items()})
    assert grid_tiling_brute(gt) == want
    gadget = grid_tiling_gadget(gt)
    graph = build_intersection_graph(gadget.instance)
    res = brute_force_decide(graph, graph.terminals, gadget.budget)
    assert res.feasible == want
