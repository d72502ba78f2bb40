from __future__ import annotations

import numpy as np
import pytest

from eqrank.cocitation import WeightedGraph, weight_all_edges
from eqrank.graph import CitationGraph
from eqrank.level import (
    compute_level,
    eqrank_level,
    local_authority_map,
    local_hub_map,
    resolve_roots,
    theme_partition,
)
from eqrank.naive import naive_level, naive_local_maps, naive_resolve_roots, naive_theme_partition

from .conftest import random_digraph, random_functional_map, two_camps_edges


def weighted(pairs, weights_by_edge):
    g = CitationGraph.from_edge_list(pairs)
    w = np.zeros(g.edge_count, dtype=np.int32)
    src = g.edge_sources()
    for e in range(g.edge_count):
        w[e] = weights_by_edge[(g.keys[int(src[e])], g.keys[int(g.out_indices[e])])]
    return g, WeightedGraph(g, w)


def test_sink_is_its_own_authority():
    g = CitationGraph.from_edge_list([("a", "b")])
    wg = weight_all_edges(g)
    la = local_authority_map(wg)
    assert la[g.id_of("b")] == g.id_of("b")


def test_strict_max_wins():
    g, wg = weighted(
        [("p", "q"), ("p", "r")], {("p", "q"): 3, ("p", "r"): 5}
    )
    la = local_authority_map(wg)
    assert la[g.id_of("p")] == g.id_of("r")


def test_tie_breaks_to_smallest_id():
    g, wg = weighted(
        [("p", "q"), ("p", "r")], {("p", "q"): 2, ("p", "r"): 2}
    )
    la = local_authority_map(wg)
    winner = min(g.id_of("q"), g.id_of("r"))
    assert la[g.id_of("p")] == winner


def test_uncited_paper_is_its_own_hub():
    g = CitationGraph.from_edge_list([("a", "b")])
    lh = local_hub_map(weight_all_edges(g))
    assert lh[g.id_of("a")] == g.id_of("a")


def test_hub_picks_heaviest_citer():
    g, wg = weighted(
        [("r1", "p"), ("r2", "p")], {("r1", "p"): 1, ("r2", "p"): 4}
    )
    lh = local_hub_map(wg)
    assert lh[g.id_of("p")] == g.id_of("r2")


def test_hub_map_equals_authority_map_on_transpose():
    rng = np.random.default_rng(21)
    for _ in range(10):
        g = random_digraph(rng, 100, 0.08)
        wg = weight_all_edges(g)
        lh = local_hub_map(wg)
        # explicit transpose: edges reversed, weights carried over, same ids
        src = g.edge_sources()
        gt_full, _, _ = CitationGraph.from_edge_arrays(
            g.out_indices.astype(np.int64),
            src.astype(np.int64),
            list(g.keys),
        )
        wt = np.zeros(gt_full.edge_count, dtype=np.int32)
        wg_lookup = {
            (int(p), int(q)): int(w) for p, q, w in zip(src, g.out_indices, wg.weights)
        }
        t_src = gt_full.edge_sources()
        for e in range(gt_full.edge_count):
            wt[e] = wg_lookup[(int(gt_full.out_indices[e]), int(t_src[e]))]
        la_t = local_authority_map(WeightedGraph(gt_full, wt))
        assert np.array_equal(lh, la_t)


def test_resolve_identity():
    nxt = np.arange(5, dtype=np.int32)
    assert np.array_equal(resolve_roots(nxt), nxt)


def test_resolve_chain_to_sink():
    nxt = np.array([1, 2, 2], dtype=np.int32)  # a->b->c, c fixed
    assert resolve_roots(nxt).tolist() == [2, 2, 2]


def test_resolve_cycle_takes_min_member():
    nxt = np.array([1, 2, 0, 0], dtype=np.int32)  # 0->1->2->0 cycle, 3 enters at 0
    assert resolve_roots(nxt).tolist() == [0, 0, 0, 0]


def test_resolve_rejects_out_of_range():
    with pytest.raises(ValueError):
        resolve_roots(np.array([5], dtype=np.int32))


def test_resolve_matches_walker_on_random_functional_maps():
    rng = np.random.default_rng(17)
    for _ in range(30):
        n = int(rng.integers(1, 3000))
        cycles = tuple(
            int(rng.integers(2, min(50, n) + 1)) for _ in range(int(rng.integers(0, 3)))
        )
        if sum(cycles) > n:
            cycles = ()
        nxt = random_functional_map(rng, n, cycles)
        got = resolve_roots(nxt)
        expected = naive_resolve_roots(nxt.tolist())
        assert got.tolist() == expected


def test_root_idempotence():
    rng = np.random.default_rng(23)
    for _ in range(10):
        nxt = random_functional_map(rng, int(rng.integers(1, 2000)), (4, 2))
        roots = resolve_roots(nxt)
        again = resolve_roots(roots)
        assert np.array_equal(roots, again)


def test_partition_single_theme():
    ra = np.zeros(6, dtype=np.int32)
    rh = np.full(6, 3, dtype=np.int32)
    part = theme_partition(ra, rh)
    assert part.n_themes == 1
    assert part.theme_of.tolist() == [0] * 6


def test_partition_discrete_when_ra_identity():
    ra = np.arange(5, dtype=np.int32)
    rh = np.zeros(5, dtype=np.int32)
    part = theme_partition(ra, rh)
    assert part.n_themes == 5


def test_partition_matches_group_by_oracle():
    rng = np.random.default_rng(31)
    for _ in range(20):
        n = int(rng.integers(1, 500))
        ra = rng.integers(0, n, size=n).astype(np.int32)
        rh = rng.integers(0, n, size=n).astype(np.int32)
        part = theme_partition(ra, rh)
        expected = naive_theme_partition(ra.tolist(), rh.tolist())
        assert part.theme_of.tolist() == expected
        # per-theme roots are the shared pair of each class
        for t, members in enumerate(part.members()):
            assert len({(int(ra[v]), int(rh[v])) for v in members}) == 1
            v0 = int(members[0])
            assert int(part.root_authority[t]) == int(ra[v0])
            assert int(part.root_hub[t]) == int(rh[v0])


def test_level_edgeless_all_singletons():
    g = CitationGraph.from_edge_arrays(
        np.empty(0, np.int64), np.empty(0, np.int64), [f"k{i}" for i in range(7)]
    )[0]
    part = eqrank_level(g)
    assert part.n_themes == 7


def test_level_two_camps():
    g = CitationGraph.from_edge_list(two_camps_edges())
    part = eqrank_level(g)
    expected_theme_of, expected_roots = naive_level(g)
    assert part.theme_of.tolist() == expected_theme_of
    assert part.n_themes == 2
    camps = {frozenset(g.keys[int(v)] for v in m) for m in part.members()}
    assert camps == {
        frozenset({"A0", "A1", "A2", "A3"}),
        frozenset({"B0", "B1", "B2", "B3"}),
    }


def test_level_matches_naive_pipeline_on_random_graphs():
    rng = np.random.default_rng(41)
    for _ in range(15):
        n = int(rng.integers(2, 120))
        g = random_digraph(rng, n, float(rng.uniform(0.02, 0.15)))
        part = eqrank_level(g)
        expected_theme_of, expected_roots = naive_level(g)
        assert part.theme_of.tolist() == expected_theme_of
        got_roots = list(zip(part.root_authority.tolist(), part.root_hub.tolist()))
        assert got_roots == expected_roots


def test_trajectory_consistency_and_refinement():
    rng = np.random.default_rng(43)
    g = random_digraph(rng, 150, 0.05)
    result = compute_level(g)
    la, lh = result.maps.la, result.maps.lh
    ra, rh = result.roots.ra, result.roots.rh
    assert np.array_equal(ra, ra[la])
    assert np.array_equal(rh, rh[lh])
    # themes refine both root partitions
    theme_of = result.partition.theme_of
    for v in range(g.n):
        for w in range(v + 1, g.n):
            if theme_of[v] == theme_of[w]:
                assert ra[v] == ra[w] and rh[v] == rh[w]


def test_local_maps_match_naive():
    rng = np.random.default_rng(47)
    for _ in range(10):
        g = random_digraph(rng, 60, 0.1)
        wg = weight_all_edges(g)
        la, lh = naive_local_maps(g)
        assert local_authority_map(wg).tolist() == [la[p] for p in range(g.n)]
        assert local_hub_map(wg).tolist() == [lh[p] for p in range(g.n)]


def test_level_deterministic():
    rng = np.random.default_rng(53)
    g = random_digraph(rng, 200, 0.05)
    p1 = eqrank_level(g)
    p2 = eqrank_level(g)
    assert p1.equals(p2)
