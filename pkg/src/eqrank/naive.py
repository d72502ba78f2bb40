"""Slow, dictionary-based reference implementations.

Everything here re-derives results from first principles with plain
Python data structures and deliberately different algorithms from the
array kernels: per-citer pair counting instead of sorted intersection,
memoized trajectory walking instead of pointer jumping, BFS instead of
union-find. The test suite and `eqrank verify` compare the fast path
against these on small inputs; none of this is meant for large graphs.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .graph import CitationGraph


def _adjacency(graph: CitationGraph) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
    out_adj: dict[int, list[int]] = {p: [] for p in range(graph.n)}
    in_adj: dict[int, list[int]] = {p: [] for p in range(graph.n)}
    for p in range(graph.n):
        for q in graph.out_neighbors(p):
            out_adj[p].append(int(q))
            in_adj[int(q)].append(p)
    return out_adj, in_adj


def naive_edge_weights(graph: CitationGraph) -> dict[tuple[int, int], int]:
    """Co-citation per edge by accumulating over each citer's reference pairs."""
    out_adj, _ = _adjacency(graph)
    edge_set = {(p, q) for p, nbrs in out_adj.items() for q in nbrs}
    weights = {e: 0 for e in edge_set}
    for r, refs in out_adj.items():
        for p in refs:
            for q in refs:
                if p != q and (p, q) in weights:
                    weights[(p, q)] += 1
    return weights


def naive_local_maps(graph: CitationGraph) -> tuple[dict[int, int], dict[int, int]]:
    """(local authority, local hub) maps with smallest-id tie-breaking."""
    out_adj, in_adj = _adjacency(graph)
    weights = naive_edge_weights(graph)
    la: dict[int, int] = {}
    lh: dict[int, int] = {}
    for p in range(graph.n):
        best = p
        best_w = -1
        for q in sorted(out_adj[p]):
            w = weights[(p, q)]
            if w > best_w:
                best_w = w
                best = q
        la[p] = best
        best = p
        best_w = -1
        for r in sorted(in_adj[p]):
            w = weights[(r, p)]
            if w > best_w:
                best_w = w
                best = r
        lh[p] = best
    return la, lh


def naive_resolve_roots(next_map) -> list[int]:
    """Walk each trajectory with a visited set; cycles resolve to min member."""
    n = len(next_map)
    root: dict[int, int] = {}
    for start in range(n):
        if start in root:
            continue
        path = []
        on_path: dict[int, int] = {}
        v = start
        while v not in root and v not in on_path:
            on_path[v] = len(path)
            path.append(v)
            v = int(next_map[v])
        if v in root:
            r = root[v]
        else:
            r = min(path[on_path[v] :])
        for u in path:
            root[u] = r
    return [root[v] for v in range(n)]


def naive_theme_partition(ra, rh) -> list[int]:
    """Dense theme ids by first appearance of each (ra, rh) pair."""
    seen: dict[tuple[int, int], int] = {}
    theme_of = []
    for p in range(len(ra)):
        pair = (int(ra[p]), int(rh[p]))
        if pair not in seen:
            seen[pair] = len(seen)
        theme_of.append(seen[pair])
    return theme_of


def naive_level(graph: CitationGraph) -> tuple[list[int], list[tuple[int, int]]]:
    """Whole single-level pipeline; returns (theme_of, per-theme (ra, rh))."""
    la, lh = naive_local_maps(graph)
    ra = naive_resolve_roots([la[p] for p in range(graph.n)])
    rh = naive_resolve_roots([lh[p] for p in range(graph.n)])
    theme_of = naive_theme_partition(ra, rh)
    roots: list[tuple[int, int]] = []
    seen = set()
    for p in range(graph.n):
        t = theme_of[p]
        if t not in seen:
            seen.add(t)
            roots.append((ra[p], rh[p]))
    return theme_of, roots


def naive_reduce(
    graph: CitationGraph, theme_of
) -> tuple[dict[tuple[int, int], int], int]:
    """Cross-theme edges with multiplicities; returns (edges, n_themes)."""
    out_adj, _ = _adjacency(graph)
    edges: dict[tuple[int, int], int] = {}
    for p, nbrs in out_adj.items():
        for q in nbrs:
            tp, tq = int(theme_of[p]), int(theme_of[q])
            if tp != tq:
                edges[(tp, tq)] = edges.get((tp, tq), 0) + 1
    return edges, int(max(theme_of) + 1 if len(theme_of) else 0)


def naive_hierarchy(graph: CitationGraph, max_levels: int = 16):
    """Level-by-level reference for the whole hierarchy.

    Returns (levels, cause) where each level is the theme_of list over the
    previous level's theme set (ground vertices for the first level).
    """
    levels: list[list[int]] = []
    current = graph
    cause = None
    while True:
        theme_of, _ = naive_level(current)
        k = max(theme_of) + 1 if theme_of else 0
        if levels and k == current.n:
            cause = "no_contraction"
            break
        levels.append(theme_of)
        if k == 1:
            cause = "single_theme"
            break
        if len(levels) == max_levels:
            cause = "max_levels"
            break
        if k == current.n:
            cause = "no_contraction"
            break
        edges, n_themes = naive_reduce(current, theme_of)
        pairs = [(str(a), str(b)) for (a, b) in sorted(edges)]
        keys = [str(i) for i in range(n_themes)]
        current = _graph_from_named_edges(keys, pairs)
    return levels, cause


def _graph_from_named_edges(keys: list[str], pairs: list[tuple[str, str]]) -> CitationGraph:
    key_to_id = {k: i for i, k in enumerate(keys)}
    src = np.array([key_to_id[a] for a, _ in pairs], dtype=np.int64)
    dst = np.array([key_to_id[b] for _, b in pairs], dtype=np.int64)
    graph, _, _ = CitationGraph.from_edge_arrays(src, dst, keys)
    return graph


def naive_weak_components(graph: CitationGraph) -> list[int]:
    """Component label per vertex (min member id) by undirected BFS."""
    label = [-1] * graph.n
    for start in range(graph.n):
        if label[start] != -1:
            continue
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in list(graph.out_neighbors(v)) + list(graph.in_neighbors(v)):
                w = int(w)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        mn = min(seen)
        for v in seen:
            label[v] = mn
    return label
