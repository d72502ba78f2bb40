"""Iterated contraction: themes become vertices, the level procedure repeats.

The cluster tree records one partition per level. Level 1 partitions the
papers; level k partitions the themes of level k-1. Contraction keeps one
edge per cross-theme pair (multiplicity retained for diagnostics only)
and co-citation weights are recomputed on each reduced graph with the
same presence-based definition as on the ground graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, NamedTuple

import numpy as np

from .errors import SnapshotFormatError, UnknownVertexError, VersionMismatchError
from .graph import CitationGraph
from .level import Partition, eqrank_level

TREE_FORMAT_VERSION = 1

TERMINATION_NO_CONTRACTION = "no_contraction"
TERMINATION_SINGLE_THEME = "single_theme"
TERMINATION_MAX_LEVELS = "max_levels"


class ThemeId(NamedTuple):
    level: int  # 1-based
    index: int


@dataclass
class ReducedGraph:
    """Contraction of a partition: one vertex per theme, cross edges only."""

    graph: CitationGraph
    multiplicity: np.ndarray  # original cross-theme edge count per reduced edge


@dataclass
class ClusterTree:
    """Per-level partitions plus the reason the iteration stopped.

    partitions[0] maps papers to level-1 themes; partitions[k] maps
    level-k themes to level-(k+1) themes. Parent links between levels are
    exactly the next partition's theme_of.
    """

    partitions: list[Partition]
    termination_cause: str
    ground_n: int

    @property
    def num_levels(self) -> int:
        return len(self.partitions)

    @property
    def level_sizes(self) -> list[int]:
        return [p.n_themes for p in self.partitions]

    def themes_at(self, level: int) -> int:
        return self.partitions[level - 1].n_themes

    def parent_index(self, level: int, index: int) -> int | None:
        """Containing theme at level+1, or None at the top level."""
        if level >= self.num_levels:
            return None
        return int(self.partitions[level].theme_of[index])

    def ground_assignments(self) -> list[np.ndarray]:
        """Per level, the theme index of every ground vertex."""
        out: list[np.ndarray] = []
        current = None
        for part in self.partitions:
            current = part.theme_of if current is None else part.theme_of[current]
            out.append(current)
        return out

    def theme_path(self, vertex: int) -> list[ThemeId]:
        if not 0 <= vertex < self.ground_n:
            raise UnknownVertexError(f"vertex {vertex} outside 0..{self.ground_n - 1}")
        path = []
        current = vertex
        for lvl, part in enumerate(self.partitions, start=1):
            current = int(part.theme_of[current])
            path.append(ThemeId(lvl, current))
        return path


def theme_path(tree: ClusterTree, vertex: int) -> list[ThemeId]:
    """The vertex's theme at every level, ground level first."""
    return tree.theme_path(vertex)


def reduce_graph(graph: CitationGraph, part: Partition) -> ReducedGraph:
    """Shrink each theme to a vertex; keep deduplicated cross-theme edges."""
    theme_of = part.theme_of.astype(np.int64)
    k = part.n_themes
    src = theme_of[graph.edge_sources()]
    dst = theme_of[graph.out_indices]
    cross = src != dst
    src = src[cross]
    dst = dst[cross]
    if src.shape[0]:
        order = np.lexsort((dst, src))
        src = src[order]
        dst = dst[order]
        first = np.empty(src.shape[0], dtype=bool)
        first[0] = True
        np.logical_or(src[1:] != src[:-1], dst[1:] != dst[:-1], out=first[1:])
        boundaries = np.flatnonzero(first)
        multiplicity = np.diff(np.append(boundaries, src.shape[0]))
        src = src[first]
        dst = dst[first]
    else:
        multiplicity = np.zeros(0, dtype=np.int64)
    keys = [str(i) for i in range(k)]
    reduced, _, _ = CitationGraph.from_edge_arrays(src, dst, keys)
    return ReducedGraph(graph=reduced, multiplicity=multiplicity)


def run_hierarchy(graph: CitationGraph, max_levels: int = 16) -> ClusterTree:
    """Iterate level clustering and contraction until no progress remains.

    Stops when the partition reaches a single theme, when a level beyond
    the first makes no contraction progress (that identity partition is
    discarded), or at max_levels.
    """
    if max_levels < 1:
        raise ValueError("max_levels must be >= 1")
    partitions: list[Partition] = []
    current = graph
    cause = None
    while True:
        part = eqrank_level(current)
        k = part.n_themes
        if partitions and k == current.n:
            cause = TERMINATION_NO_CONTRACTION
            break
        partitions.append(part)
        if k == 1:
            cause = TERMINATION_SINGLE_THEME
            break
        if len(partitions) == max_levels:
            cause = TERMINATION_MAX_LEVELS
            break
        if k == current.n:
            cause = TERMINATION_NO_CONTRACTION
            break
        current = reduce_graph(current, part).graph
    return ClusterTree(partitions=partitions, termination_cause=cause, ground_n=graph.n)


def ground_root_representatives(tree: ClusterTree) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Ground-paper representative of every theme's roots, per level.

    A level-1 theme's roots are papers already; a higher theme's roots are
    themes one level down and resolve recursively through that theme's own
    roots.
    """
    rep_ra: list[np.ndarray] = []
    rep_rh: list[np.ndarray] = []
    for i, part in enumerate(tree.partitions):
        if i == 0:
            rep_ra.append(part.root_authority.astype(np.int64))
            rep_rh.append(part.root_hub.astype(np.int64))
        else:
            rep_ra.append(rep_ra[i - 1][part.root_authority])
            rep_rh.append(rep_rh[i - 1][part.root_hub])
    return rep_ra, rep_rh


# -- serialization -------------------------------------------------------


def tree_to_json_bytes(tree: ClusterTree, keys: list[str]) -> bytes:
    """Stable JSON encoding of the tree; `keys` are the ground vertex keys."""
    rep_ra, rep_rh = ground_root_representatives(tree)
    levels = []
    for i, part in enumerate(tree.partitions):
        members = part.members()
        themes = []
        for t in range(part.n_themes):
            themes.append(
                {
                    "index": t,
                    "root_authority_index": int(part.root_authority[t]),
                    "root_hub_index": int(part.root_hub[t]),
                    "root_authority_key": keys[int(rep_ra[i][t])],
                    "root_hub_key": keys[int(rep_rh[i][t])],
                    "parent_index": tree.parent_index(i + 1, t),
                    "member_indices": members[t].tolist(),
                }
            )
        levels.append({"level": i + 1, "themes": themes})
    doc = {
        "format_version": TREE_FORMAT_VERSION,
        "ground_vertex_count": tree.ground_n,
        "termination_cause": tree.termination_cause,
        "level_sizes": tree.level_sizes,
        "levels": levels,
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def save_tree(tree: ClusterTree, keys: list[str], path: str | Path) -> None:
    Path(path).write_bytes(tree_to_json_bytes(tree, keys))


def load_tree(path: str | Path) -> ClusterTree:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise SnapshotFormatError(f"cannot read tree {path}: {exc}") from exc
    return tree_from_json_bytes(data, source=str(path))


def tree_from_json_bytes(data: bytes, source: str = "<bytes>") -> ClusterTree:
    path = source
    try:
        doc = json.loads(data)
    except ValueError as exc:
        raise SnapshotFormatError(f"cannot parse tree {path}: {exc}") from exc
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise SnapshotFormatError(f"{path}: not a cluster tree file")
    if doc["format_version"] != TREE_FORMAT_VERSION:
        raise VersionMismatchError("cluster-tree", doc["format_version"], TREE_FORMAT_VERSION)
    try:
        ground_n = int(doc["ground_vertex_count"])
        partitions = []
        prev_size = ground_n
        for entry in doc["levels"]:
            themes = entry["themes"]
            theme_of = np.full(prev_size, -1, dtype=np.int32)
            ra = np.empty(len(themes), dtype=np.int32)
            rh = np.empty(len(themes), dtype=np.int32)
            for t in themes:
                idx = t["index"]
                ra[idx] = t["root_authority_index"]
                rh[idx] = t["root_hub_index"]
                theme_of[np.asarray(t["member_indices"], dtype=np.int64)] = idx
            if (theme_of < 0).any():
                raise SnapshotFormatError(f"{path}: level {entry['level']} does not cover all vertices")
            partitions.append(Partition(theme_of=theme_of, root_authority=ra, root_hub=rh))
            prev_size = len(themes)
        tree = ClusterTree(
            partitions=partitions,
            termination_cause=doc["termination_cause"],
            ground_n=ground_n,
        )
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise SnapshotFormatError(f"{path}: malformed cluster tree: {exc}") from exc
    _validate_tree(tree, path)
    return tree


def _validate_tree(tree: ClusterTree, path) -> None:
    for lvl in range(1, tree.num_levels):
        part = tree.partitions[lvl]
        if part.theme_of.shape[0] != tree.partitions[lvl - 1].n_themes:
            raise SnapshotFormatError(f"{path}: level {lvl + 1} size mismatch")


def write_theme_assignments_tsv(tree: ClusterTree, keys: list[str], fh: IO[str]) -> None:
    """Per-vertex dump: key, level, theme index, and the theme's root keys."""
    rep_ra, rep_rh = ground_root_representatives(tree)
    assignments = tree.ground_assignments()
    for level, assign in enumerate(assignments, start=1):
        ra = rep_ra[level - 1]
        rh = rep_rh[level - 1]
        for v in range(tree.ground_n):
            t = int(assign[v])
            fh.write(
                f"{keys[v]}\t{level}\t{t}\t{keys[int(ra[t])]}\t{keys[int(rh[t])]}\n"
            )
