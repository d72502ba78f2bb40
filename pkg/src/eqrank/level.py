"""One clustering level: local maps, root resolution, theme partition.

Every paper follows its maximum-weight reference to a local authority and
its maximum-weight citation to a local hub. Iterating each map resolves a
root authority and a root hub per paper; papers sharing both roots form a
theme. Argmax ties break toward the smallest vertex id, and a terminal
cycle in either map resolves to its smallest member, so the whole level
is deterministic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import kernels
from .cocitation import WeightedGraph, weight_all_edges
from .graph import CitationGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalMaps:
    la: np.ndarray  # local authority per vertex
    lh: np.ndarray  # local hub per vertex


@dataclass(frozen=True)
class RootAssignment:
    ra: np.ndarray  # root authority per vertex
    rh: np.ndarray  # root hub per vertex


@dataclass
class Partition:
    """Vertices grouped by (root authority, root hub) pairs.

    Theme indices are dense and assigned in order of first member
    appearance. `root_authority`/`root_hub` give the shared roots per
    theme, as vertex ids of the partitioned graph.
    """

    theme_of: np.ndarray
    root_authority: np.ndarray
    root_hub: np.ndarray

    @property
    def n_vertices(self) -> int:
        return int(self.theme_of.shape[0])

    @property
    def n_themes(self) -> int:
        return int(self.root_authority.shape[0])

    def members(self) -> list[np.ndarray]:
        order = np.argsort(self.theme_of, kind="stable")
        bounds = np.searchsorted(self.theme_of[order], np.arange(self.n_themes + 1))
        return [order[bounds[i] : bounds[i + 1]] for i in range(self.n_themes)]

    def theme_tuples(self) -> list[tuple[int, int, list[int]]]:
        return [
            (int(self.root_authority[i]), int(self.root_hub[i]), m.tolist())
            for i, m in enumerate(self.members())
        ]

    def equals(self, other: "Partition") -> bool:
        return (
            np.array_equal(self.theme_of, other.theme_of)
            and np.array_equal(self.root_authority, other.root_authority)
            and np.array_equal(self.root_hub, other.root_hub)
        )


@dataclass
class LevelResult:
    weighted: WeightedGraph
    maps: LocalMaps
    roots: RootAssignment
    partition: Partition


def local_authority_map(wg: WeightedGraph) -> np.ndarray:
    """Max-weight reference target per vertex; self when there are none.

    Zero-weight edges stay eligible: a paper whose references all have
    zero co-citation still maps to its smallest-id reference.
    """
    g = wg.graph
    la = kernels.segment_argmax(g.out_indptr, g.out_indices, wg.weights)
    _log_zero_weight_picks("authority", g.out_indptr, wg.weights, la)
    return la


def local_hub_map(wg: WeightedGraph) -> np.ndarray:
    """local_authority_map on the transpose: max-weight citer per vertex."""
    g = wg.graph
    lh = kernels.segment_argmax(g.in_indptr, g.in_indices, wg.in_weights)
    _log_zero_weight_picks("hub", g.in_indptr, wg.in_weights, lh)
    return lh


def _log_zero_weight_picks(side: str, indptr, weights, chosen) -> None:
    if not logger.isEnabledFor(logging.INFO) or weights.shape[0] == 0:
        return
    deg = np.diff(indptr)
    nonempty = deg > 0
    seg_max = np.maximum.reduceat(weights, indptr[:-1][nonempty])
    zero_picks = int((seg_max == 0).sum())
    logger.info("local %s map: %d vertices chose a zero-weight edge", side, zero_picks)


def resolve_roots(next_map: np.ndarray) -> np.ndarray:
    """Terminal vertex of the trajectory following `next_map` from each vertex.

    Fixed points are their own roots; a longer terminal cycle resolves to
    its smallest member. Linear in n regardless of cycle structure.
    """
    next_map = np.ascontiguousarray(next_map, dtype=np.int32)
    n = next_map.shape[0]
    if n and not ((next_map >= 0) & (next_map < n)).all():
        raise ValueError("next map must be total over 0..n-1")
    return kernels.functional_roots(next_map)


def theme_partition(ra: np.ndarray, rh: np.ndarray) -> Partition:
    """Intersection of the root-authority and root-hub partitions."""
    n = ra.shape[0]
    if n == 0:
        empty = np.empty(0, dtype=np.int32)
        return Partition(empty, empty.copy(), empty.copy())
    pair_code = ra.astype(np.int64) * np.int64(n) + rh.astype(np.int64)
    _, first_idx, inverse = np.unique(pair_code, return_index=True, return_inverse=True)
    order = np.argsort(first_idx, kind="stable")
    rank = np.empty(order.shape[0], dtype=np.int32)
    rank[order] = np.arange(order.shape[0], dtype=np.int32)
    theme_of = rank[inverse]
    first_by_theme = first_idx[order]
    return Partition(
        theme_of=theme_of,
        root_authority=ra[first_by_theme].astype(np.int32),
        root_hub=rh[first_by_theme].astype(np.int32),
    )


def level_from_weights(wg: WeightedGraph) -> LevelResult:
    la = local_authority_map(wg)
    lh = local_hub_map(wg)
    ra = resolve_roots(la)
    rh = resolve_roots(lh)
    return LevelResult(
        weighted=wg,
        maps=LocalMaps(la=la, lh=lh),
        roots=RootAssignment(ra=ra, rh=rh),
        partition=theme_partition(ra, rh),
    )


def compute_level(graph: CitationGraph) -> LevelResult:
    return level_from_weights(weight_all_edges(graph))


def eqrank_level(graph: CitationGraph) -> Partition:
    """The full single-level procedure: weights, maps, roots, partition."""
    return compute_level(graph).partition
