"""Co-citation edge weighting.

The weight of edge p -> q is the number of papers that cite both p and q.
With self-loops excluded by graph normalization, neither p nor q can
appear in that common-citer set (r = p would need the self-loop p -> p to
cite p, symmetrically for q), so no explicit exclusion is required.
"""

from __future__ import annotations

import weakref
from typing import IO

import numpy as np

from . import kernels
from .graph import CitationGraph


class WeightedGraph:
    """A citation graph plus one co-citation count per edge.

    `weights` is aligned with `graph.out_indices`; `in_weights` is the
    same values re-ordered to align with `graph.in_indices`.
    """

    __slots__ = ("graph", "weights", "_in_weights")

    def __init__(self, graph: CitationGraph, weights: np.ndarray):
        self.graph = graph
        self.weights = weights
        self._in_weights: np.ndarray | None = None

    @property
    def in_weights(self) -> np.ndarray:
        if self._in_weights is None:
            self._in_weights = self.graph.transpose_weights(self.weights)
        return self._in_weights

    def weight_of(self, p: int, q: int) -> int:
        nb = self.graph.out_neighbors(p)
        i = int(np.searchsorted(nb, q))
        if i >= nb.shape[0] or nb[i] != q:
            raise KeyError(f"no edge {p} -> {q}")
        return int(self.weights[self.graph.out_indptr[p] + i])


def cocitation_weight(graph: CitationGraph, p: int, q: int) -> int:
    """Number of distinct papers citing both p and q."""
    if p == q:
        raise ValueError("co-citation is undefined for a vertex with itself")
    return int(
        np.intersect1d(graph.in_neighbors(p), graph.in_neighbors(q), assume_unique=True).shape[0]
    )


def weight_all_edges(graph: CitationGraph) -> WeightedGraph:
    """Co-citation weight for every edge; deterministic for any worker count."""
    weights = kernels.cocitation_edge_weights(
        graph.out_indptr, graph.out_indices, graph.in_indptr, graph.in_indices
    )
    return WeightedGraph(graph, weights)


# reference-set cache for the oracle, keyed weakly per graph so repeated
# per-edge calls stay O(n) instead of O(edges)
_ORACLE_REFS: "weakref.WeakKeyDictionary[CitationGraph, list[frozenset[int]]]" = (
    weakref.WeakKeyDictionary()
)


def _reference_sets(graph: CitationGraph) -> list[frozenset[int]]:
    refs = _ORACLE_REFS.get(graph)
    if refs is None:
        refs = [frozenset(int(q) for q in graph.out_neighbors(r)) for r in range(graph.n)]
        _ORACLE_REFS[graph] = refs
    return refs


def oracle_cocitation(graph: CitationGraph, p: int, q: int) -> int:
    """Reference implementation: enumerate every candidate citer and test
    membership in its plain reference set.

    Meant for verification only; kept deliberately free of the
    sorted-intersection machinery the production path uses.
    """
    if p == q:
        raise ValueError("co-citation is undefined for a vertex with itself")
    refs = _reference_sets(graph)
    count = 0
    for r in range(graph.n):
        if r != p and r != q and p in refs[r] and q in refs[r]:
            count += 1
    return count


def write_weights_tsv(wg: WeightedGraph, fh: IO[str]) -> None:
    """Debug dump: one `citing<TAB>cited<TAB>weight` line per edge."""
    g = wg.graph
    for p in range(g.n):
        for i in range(g.out_indptr[p], g.out_indptr[p + 1]):
            fh.write(f"{g.keys[p]}\t{g.keys[g.out_indices[i]]}\t{int(wg.weights[i])}\n")
