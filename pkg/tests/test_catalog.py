from __future__ import annotations

import numpy as np
import pytest

from eqrank.catalog import Catalog, build_catalog, load_metadata, tokenize
from eqrank.cocitation import weight_all_edges
from eqrank.errors import EqRankError, MetadataParseError, UnknownThemeError
from eqrank.graph import CitationGraph
from eqrank.hierarchy import ThemeId, run_hierarchy

from .conftest import TWO_CAMPS_METADATA, random_digraph, two_camps_edges


def small_catalog(metadata=None):
    g = CitationGraph.from_edge_list(two_camps_edges())
    tree = run_hierarchy(g)
    return g, build_catalog(tree, weight_all_edges(g), metadata)


def test_metadata_parsing():
    records = load_metadata("K1\tA Title\tAnn One;Bo Two\tin_corpus\n")
    assert records["K1"].title == "A Title"
    assert records["K1"].authors == ("Ann One", "Bo Two")
    assert records["K1"].tag == "in_corpus"


@pytest.mark.parametrize(
    "line,expect",
    [
        ("K1\tT\tA\n", "expected 4"),
        ("K1\tT\tA\tweird_tag\n", "unknown tag"),
        ("\tT\tA\tin_corpus\n", "empty key"),
        ("K1\tT\tA\tin_corpus\nK1\tT\tA\tin_corpus\n", "duplicate"),
    ],
)
def test_metadata_errors_carry_line_numbers(line, expect):
    with pytest.raises(MetadataParseError) as err:
        load_metadata(line)
    assert expect in str(err.value)
    assert err.value.line_number >= 1


def test_empty_metadata_catalog_browsable_unsearchable():
    g, cat = small_catalog(None)
    assert cat.search_payload("anything") == []
    assert cat.summary(1, 0)["size"] == 4
    assert cat.paper_payload("A0")["title"] is None
    assert cat.paper_payload("A0")["theme_path"]


def test_token_index_lowercase_tokens():
    _, cat = small_catalog("A0\tQuark GLUON Plasma\tMax Born\tin_corpus\n")
    assert "gluon" in cat.token_index
    assert "quark" in cat.token_index
    assert "born" in cat.token_index
    assert tokenize("Heavy-Ion (2004)") == ["heavy", "ion", "2004"]


def test_unknown_metadata_keys_skipped_with_warning(caplog):
    with caplog.at_level("WARNING"):
        _, cat = small_catalog("NOPE\tGhost\tNobody\tin_corpus\n")
    assert "skipped 1" in caplog.text
    assert cat.search_payload("ghost") == []


def test_every_theme_has_nonempty_rankings(fixture_catalog):
    cat = fixture_catalog
    for level in range(1, cat.num_levels + 1):
        for index in range(cat.themes_at(level)):
            assert cat.theme_authorities(level, index, 5)
            assert cat.theme_hubs(level, index, 5)


def test_singleton_theme_lists_its_paper_score_zero():
    g = CitationGraph.from_edge_arrays(
        np.empty(0, np.int64), np.empty(0, np.int64), ["only"]
    )[0]
    tree = run_hierarchy(g)
    cat = build_catalog(tree, weight_all_edges(g), None)
    assert cat.theme_authorities(1, 0, 5) == [{"key": "only", "score": 0}]
    assert cat.theme_hubs(1, 0, 5) == [{"key": "only", "score": 0}]
    assert cat.members_page(1, 0)["keys"] == ["only"]


def test_member_cited_by_all_others_ranks_first():
    # star into "center" plus co-citing pairs so weights are positive
    pairs = []
    for i in range(4):
        pairs.append((f"s{i}", "center"))
        pairs.append((f"s{i}", "side"))
    g = CitationGraph.from_edge_list(pairs + [("side", "center")])
    tree = run_hierarchy(g, max_levels=1)
    cat = build_catalog(tree, weight_all_edges(g), None)
    v = g.id_of("center")
    level1 = cat.assignments[0]
    theme = int(level1[v])
    ranked = cat.theme_authorities(1, theme, 10)
    assert ranked[0]["key"] == "center"


def test_rankings_match_naive_recomputation():
    rng = np.random.default_rng(77)
    for _ in range(8):
        g = random_digraph(rng, 60, 0.1)
        tree = run_hierarchy(g)
        wg = weight_all_edges(g)
        cat = build_catalog(tree, wg, None)
        src = g.edge_sources()
        for level in range(1, cat.num_levels + 1):
            assign = cat.assignments[level - 1]
            auth = {v: 0 for v in range(g.n)}
            hub = {v: 0 for v in range(g.n)}
            for e in range(g.edge_count):
                p, q = int(src[e]), int(g.out_indices[e])
                if assign[p] == assign[q]:
                    auth[q] += int(wg.weights[e])
                    hub[p] += int(wg.weights[e])
            for index in range(cat.themes_at(level)):
                members = [v for v in range(g.n) if int(assign[v]) == index]
                summary = cat.summary(level, index)
                _check_ranked(
                    cat.theme_authorities(level, index, len(members) + 1),
                    sorted(((auth[v], g.keys[v]) for v in members), key=lambda kv: (-kv[0], kv[1])),
                    summary["root_authority_key"],
                )
                _check_ranked(
                    cat.theme_hubs(level, index, len(members) + 1),
                    sorted(((hub[v], g.keys[v]) for v in members), key=lambda kv: (-kv[0], kv[1])),
                    summary["root_hub_key"],
                )


def _check_ranked(got, expected, root_key):
    got_pairs = [(e["score"], e["key"]) for e in got]
    if got_pairs == expected:
        return
    # only deviation allowed: a root that is not a theme member gets
    # appended with score 0
    assert got_pairs[:-1] == expected
    assert got_pairs[-1] == (0, root_key)
    assert root_key not in [k for _, k in expected]


def test_root_always_included_even_with_tiny_limit(fixture_catalog):
    cat = fixture_catalog
    for level in range(1, cat.num_levels + 1):
        for index in range(cat.themes_at(level)):
            summary = cat.summary(level, index)
            auth = cat.theme_authorities(level, index, 1)
            assert summary["root_authority_key"] in [e["key"] for e in auth]
            hubs = cat.theme_hubs(level, index, 1)
            assert summary["root_hub_key"] in [e["key"] for e in hubs]


def test_summary_size_equals_children_sizes(fixture_catalog):
    cat = fixture_catalog
    for level in range(2, cat.num_levels + 1):
        for index in range(cat.themes_at(level)):
            summary = cat.summary(level, index)
            child_total = sum(
                cat.summary(level - 1, c["index"])["size"] for c in summary["children"]
            )
            assert summary["size"] == child_total
            for c in summary["children"]:
                assert cat.summary(level - 1, c["index"])["parent"] == {
                    "level": level,
                    "index": index,
                }


def test_search_no_match():
    _, cat = small_catalog(TWO_CAMPS_METADATA)
    assert cat.search_payload("xyzzy") == []


def test_search_single_token():
    _, cat = small_catalog(TWO_CAMPS_METADATA)
    results = cat.search_payload("gluon")
    assert [r["key"] for r in results] == ["A0"]
    assert len(results[0]["theme_path"]) == cat.num_levels


def test_search_is_and_match_against_linear_scan():
    g, cat = small_catalog(TWO_CAMPS_METADATA)
    records = load_metadata(TWO_CAMPS_METADATA)
    queries = ["neutrino", "alice smith", "quark plasma", "lattice neutrino", "SMITH", ""]
    for q in queries:
        tokens = set(tokenize(q))
        expected = []
        if tokens:
            for key in sorted(records):
                rec = records[key]
                hay = set(tokenize(rec.title))
                for a in rec.authors:
                    hay |= set(tokenize(a))
                if tokens <= hay:
                    expected.append(key)
        assert [r["key"] for r in cat.search_payload(q)] == expected


def test_search_theme_filter():
    _, cat = small_catalog(TWO_CAMPS_METADATA)
    all_hits = cat.search_payload("alice")
    assert [r["key"] for r in all_hits] == ["A0", "A2"]
    camp_a_theme = all_hits[0]["theme_path"][0]
    filtered = cat.search_payload(
        "alice", theme=ThemeId(camp_a_theme["level"], camp_a_theme["index"])
    )
    assert [r["key"] for r in filtered] == ["A0", "A2"]
    other = 1 - camp_a_theme["index"]
    assert cat.search_payload("alice", theme=ThemeId(1, other)) == []
    with pytest.raises(UnknownThemeError):
        cat.search_payload("alice", theme=ThemeId(9, 9))


def test_search_limit_and_order():
    _, cat = small_catalog(TWO_CAMPS_METADATA)
    hits = cat.search_payload("neutrino")
    assert [r["key"] for r in hits] == ["B0", "B1", "B2"]  # key ascending
    assert [r["key"] for r in cat.search_payload("neutrino", limit=2)] == ["B0", "B1"]
    with pytest.raises(ValueError):
        cat.search_payload("neutrino", limit=0)


def test_paper_payload_local_structure(fixture_catalog):
    cat = fixture_catalog
    payload = cat.paper_payload("A1")
    assert payload["local"]["ra_key"] == "A0"
    assert payload["local"]["rh_key"] == "A3"
    assert payload["tag"] == "in_corpus"
    assert cat.paper_payload("does-not-exist") is None


def test_members_pagination(fixture_catalog):
    cat = fixture_catalog
    page = cat.members_page(1, 0, offset=0, limit=2)
    assert page["total"] == 4 and len(page["keys"]) == 2
    page2 = cat.members_page(1, 0, offset=2, limit=2)
    assert len(page2["keys"]) == 2
    assert set(page["keys"]) | set(page2["keys"]) == {"A0", "A1", "A2", "A3"}
    beyond = cat.members_page(1, 0, offset=10, limit=2)
    assert beyond["keys"] == [] and beyond["total"] == 4


def test_catalog_snapshot_roundtrip(tmp_path, fixture_catalog):
    cat = fixture_catalog
    p1 = tmp_path / "c1.bin"
    p2 = tmp_path / "c2.bin"
    cat.save(p1)
    loaded = Catalog.load(p1)
    assert loaded.search_payload("gluon") == cat.search_payload("gluon")
    assert loaded.summary(1, 1) == cat.summary(1, 1)
    assert loaded.paper_payload("A3") == cat.paper_payload("A3")
    assert loaded.theme_authorities(2, 0, 3) == cat.theme_authorities(2, 0, 3)
    loaded.save(p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_catalog_rejects_mismatched_graph():
    g = CitationGraph.from_edge_list(two_camps_edges())
    tree = run_hierarchy(g)
    other = CitationGraph.from_edge_list([("x", "y")])
    with pytest.raises(EqRankError):
        build_catalog(tree, weight_all_edges(other), None)


def test_build_deterministic(tmp_path):
    g = CitationGraph.from_edge_list(two_camps_edges())
    tree = run_hierarchy(g)
    paths = []
    for name in ("a.bin", "b.bin"):
        cat = build_catalog(tree, weight_all_edges(g), TWO_CAMPS_METADATA)
        p = tmp_path / name
        cat.save(p)
        paths.append(p.read_bytes())
    assert paths[0] == paths[1]
