"""Citation-graph ingestion, normalization, and component extraction.

A citation graph is stored in compressed sparse row form, both directions
at once: `out_indptr`/`out_indices` hold the references of each paper
(edge p -> q means "p cites q"), `in_indptr`/`in_indices` hold the exact
transpose. Vertices are densely numbered in first-appearance order of the
source file, and the external keys are kept alongside. Graphs are
immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable

import numpy as np

from . import container, kernels
from .errors import (
    EdgeListParseError,
    EmptyGraphError,
    SnapshotFormatError,
    VersionMismatchError,
)

GRAPH_FORMAT_VERSION = 1
GRAPH_SNAPSHOT_KIND = "citation-graph"


@dataclass(frozen=True)
class IngestOptions:
    encoding: str = "utf-8"
    comment_prefix: str = "#"


@dataclass(frozen=True)
class IngestReport:
    """What ingestion saw and what normalization removed."""

    line_count: int
    comment_lines: int
    blank_lines: int
    record_count: int
    self_loops_dropped: int
    duplicate_edges_collapsed: int

    @property
    def raw_edge_count(self) -> int:
        return self.record_count

    def to_dict(self) -> dict:
        return {
            "line_count": self.line_count,
            "comment_lines": self.comment_lines,
            "blank_lines": self.blank_lines,
            "raw_edge_count": self.record_count,
            "self_loops_dropped": self.self_loops_dropped,
            "duplicate_edges_collapsed": self.duplicate_edges_collapsed,
        }


@dataclass
class GraphStats:
    vertex_count: int
    edge_count: int
    tagged_vertex_counts: dict[str, int] = field(default_factory=dict)
    lcc_vertex_count: int | None = None

    def to_dict(self) -> dict:
        out = {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "tagged_vertex_counts": dict(sorted(self.tagged_vertex_counts.items())),
        }
        if self.lcc_vertex_count is not None:
            out["lcc_vertex_count"] = self.lcc_vertex_count
        return out


def _build_csr(src: np.ndarray, dst: np.ndarray, n: int):
    """Sort, de-duplicate, and drop self-loops; returns CSR plus counts."""
    loops = src == dst
    n_loops = int(loops.sum())
    if n_loops:
        keep = ~loops
        src = src[keep]
        dst = dst[keep]
    if src.shape[0]:
        order = np.lexsort((dst, src))
        src = src[order]
        dst = dst[order]
        uniq = np.empty(src.shape[0], dtype=bool)
        uniq[0] = True
        np.logical_or(src[1:] != src[:-1], dst[1:] != dst[:-1], out=uniq[1:])
        n_dups = int(src.shape[0] - uniq.sum())
        if n_dups:
            # multiplicity of each surviving edge, for callers that need it
            boundaries = np.flatnonzero(uniq)
            counts = np.diff(np.append(boundaries, src.shape[0]))
            src = src[uniq]
            dst = dst[uniq]
        else:
            counts = np.ones(src.shape[0], dtype=np.int64)
    else:
        n_dups = 0
        counts = np.zeros(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst.astype(np.int32), counts, n_loops, n_dups


class CitationGraph:
    """Immutable directed graph over densely numbered papers."""

    __slots__ = (
        "out_indptr",
        "out_indices",
        "in_indptr",
        "in_indices",
        "in_edge_to_out",
        "keys",
        "_key_to_id",
        "__weakref__",
    )

    def __init__(self, out_indptr, out_indices, in_indptr, in_indices, in_edge_to_out, keys):
        self.out_indptr = out_indptr
        self.out_indices = out_indices
        self.in_indptr = in_indptr
        self.in_indices = in_indices
        self.in_edge_to_out = in_edge_to_out
        self.keys = keys
        self._key_to_id: dict[str, int] | None = None

    @classmethod
    def from_edge_arrays(cls, src: np.ndarray, dst: np.ndarray, keys: list[str]):
        """Normalize raw edges into a graph.

        Returns (graph, self_loops_dropped, duplicates_collapsed).
        """
        n = len(keys)
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        out_indptr, out_indices, _, n_loops, n_dups = _build_csr(src, dst, n)
        graph = cls._from_out_csr(out_indptr, out_indices, keys)
        return graph, n_loops, n_dups

    @classmethod
    def _from_out_csr(cls, out_indptr, out_indices, keys):
        n = len(keys)
        edge_src = np.repeat(np.arange(n, dtype=np.int32), np.diff(out_indptr))
        # transpose: in-edges grouped by target, sorted by source within group
        perm = np.lexsort((edge_src, out_indices))
        in_indices = edge_src[perm]
        in_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(out_indices, minlength=n), out=in_indptr[1:])
        return cls(out_indptr, out_indices, in_indptr, in_indices, perm.astype(np.int64), keys)

    @classmethod
    def from_edge_list(cls, pairs: Iterable[tuple[str, str]]):
        """Convenience constructor for tests and fixtures."""
        key_to_id: dict[str, int] = {}
        keys: list[str] = []
        src: list[int] = []
        dst: list[int] = []
        for a, b in pairs:
            for k in (a, b):
                if k not in key_to_id:
                    key_to_id[k] = len(keys)
                    keys.append(k)
            src.append(key_to_id[a])
            dst.append(key_to_id[b])
        graph, _, _ = cls.from_edge_arrays(
            np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), keys
        )
        return graph

    # -- basic accessors ------------------------------------------------

    @property
    def n(self) -> int:
        return self.out_indptr.shape[0] - 1

    @property
    def edge_count(self) -> int:
        return int(self.out_indices.shape[0])

    def out_neighbors(self, p: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[p] : self.out_indptr[p + 1]]

    def in_neighbors(self, p: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[p] : self.in_indptr[p + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    def edge_sources(self) -> np.ndarray:
        """Source vertex of every edge, aligned with out_indices."""
        return np.repeat(np.arange(self.n, dtype=np.int32), np.diff(self.out_indptr))

    def has_edge(self, p: int, q: int) -> bool:
        nb = self.out_neighbors(p)
        i = np.searchsorted(nb, q)
        return bool(i < nb.shape[0] and nb[i] == q)

    def key_of(self, vid: int) -> str:
        return self.keys[vid]

    def id_of(self, key: str) -> int:
        mapping = self.key_map()
        if key not in mapping:
            raise KeyError(key)
        return mapping[key]

    def key_map(self) -> dict[str, int]:
        if self._key_to_id is None:
            self._key_to_id = {k: i for i, k in enumerate(self.keys)}
        return self._key_to_id

    def transpose_weights(self, edge_values: np.ndarray) -> np.ndarray:
        """Re-align per-out-edge values with the in-edge ordering."""
        return edge_values[self.in_edge_to_out]

    def equals(self, other: "CitationGraph") -> bool:
        return (
            self.keys == other.keys
            and np.array_equal(self.out_indptr, other.out_indptr)
            and np.array_equal(self.out_indices, other.out_indices)
            and np.array_equal(self.in_indptr, other.in_indptr)
            and np.array_equal(self.in_indices, other.in_indices)
        )

    # -- snapshot io -----------------------------------------------------

    def save(self, path: str | Path) -> None:
        container.save_container(
            path,
            GRAPH_SNAPSHOT_KIND,
            GRAPH_FORMAT_VERSION,
            meta={"n": self.n, "m": self.edge_count},
            arrays={
                "out_indptr": self.out_indptr,
                "out_indices": self.out_indices,
                "in_indptr": self.in_indptr,
                "in_indices": self.in_indices,
                "in_edge_to_out": self.in_edge_to_out,
            },
            blobs={"keys": "\n".join(self.keys).encode("utf-8")},
        )

    @classmethod
    def load(cls, path: str | Path) -> "CitationGraph":
        box = container.load_container(path, expected_kind=GRAPH_SNAPSHOT_KIND)
        if box.version != GRAPH_FORMAT_VERSION:
            raise VersionMismatchError(GRAPH_SNAPSHOT_KIND, box.version, GRAPH_FORMAT_VERSION)
        try:
            n = int(box.meta["n"])
            keys_blob = box.blobs["keys"]
            keys = keys_blob.decode("utf-8").split("\n") if n else []
            graph = cls(
                box.arrays["out_indptr"],
                box.arrays["out_indices"],
                box.arrays["in_indptr"],
                box.arrays["in_indices"],
                box.arrays["in_edge_to_out"],
                keys,
            )
        except KeyError as exc:
            raise SnapshotFormatError(f"{path}: missing snapshot field {exc}") from exc
        if len(keys) != n or graph.out_indptr.shape[0] != n + 1:
            raise SnapshotFormatError(f"{path}: inconsistent snapshot dimensions")
        return graph


def load_edge_list(
    source: bytes | str | BinaryIO | io.TextIOBase,
    options: IngestOptions = IngestOptions(),
) -> tuple[CitationGraph, IngestReport]:
    """Parse a tab-separated edge list into a normalized graph.

    One edge per line, `citing_key<TAB>cited_key`. Lines starting with the
    comment prefix and blank lines are skipped. Duplicate edges collapse to
    one, self-loops are dropped, and vertices are numbered densely in
    first-appearance order.
    """
    if isinstance(source, bytes):
        text: Iterable[str] = io.TextIOWrapper(io.BytesIO(source), encoding=options.encoding)
    elif isinstance(source, str):
        text = io.StringIO(source)
    elif isinstance(source, io.TextIOBase):
        text = source
    else:
        text = io.TextIOWrapper(source, encoding=options.encoding)

    key_to_id: dict[str, int] = {}
    keys: list[str] = []
    src: list[int] = []
    dst: list[int] = []
    comment_lines = 0
    blank_lines = 0
    line_count = 0
    comment = options.comment_prefix
    get = key_to_id.get

    for line_count, line in enumerate(text, start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            blank_lines += 1
            continue
        if line.startswith(comment):
            comment_lines += 1
            continue
        a, sep, rest = line.partition("\t")
        if not sep:
            raise EdgeListParseError(line_count, "expected 2 tab-separated fields, got 1")
        b, sep2, extra = rest.partition("\t")
        if sep2:
            raise EdgeListParseError(
                line_count, f"expected 2 tab-separated fields, got {2 + extra.count(chr(9)) + 1}"
            )
        if not a or not b:
            raise EdgeListParseError(line_count, "empty field")
        ia = get(a)
        if ia is None:
            ia = len(keys)
            key_to_id[a] = ia
            keys.append(a)
        ib = get(b)
        if ib is None:
            ib = len(keys)
            key_to_id[b] = ib
            keys.append(b)
        src.append(ia)
        dst.append(ib)

    graph, n_loops, n_dups = CitationGraph.from_edge_arrays(
        np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), keys
    )
    graph._key_to_id = key_to_id
    report = IngestReport(
        line_count=line_count,
        comment_lines=comment_lines,
        blank_lines=blank_lines,
        record_count=len(src),
        self_loops_dropped=n_loops,
        duplicate_edges_collapsed=n_dups,
    )
    return graph, report


def largest_weak_component(graph: CitationGraph) -> tuple[CitationGraph, np.ndarray]:
    """Induced subgraph on the largest weakly connected component.

    Ties between equal-size components go to the one containing the
    smallest original vertex id. Returns (subgraph, mapping) where
    mapping[new_id] = original_id.
    """
    if graph.n == 0:
        raise EmptyGraphError("cannot extract a component from an empty graph")
    labels = kernels.weak_component_labels(
        graph.n, graph.edge_sources().astype(np.int64), graph.out_indices.astype(np.int64)
    )
    uniq, counts = np.unique(labels, return_counts=True)
    # uniq is sorted by min vertex id, so argmax already breaks size ties
    # toward the smallest-min-id component
    chosen = uniq[int(np.argmax(counts))]
    members = np.flatnonzero(labels == chosen)
    old_to_new = np.full(graph.n, -1, dtype=np.int64)
    old_to_new[members] = np.arange(members.shape[0], dtype=np.int64)

    edge_src = graph.edge_sources().astype(np.int64)
    keep = labels[edge_src] == chosen
    new_src = old_to_new[edge_src[keep]]
    new_dst = old_to_new[graph.out_indices[keep].astype(np.int64)]
    sub_keys = [graph.keys[i] for i in members]
    sub, _, _ = CitationGraph.from_edge_arrays(new_src, new_dst, sub_keys)
    return sub, members


def stats(graph: CitationGraph, metadata=None) -> GraphStats:
    """Exact counts; per-tag counts when paper metadata is supplied.

    `metadata` maps external key -> object with a `tag` attribute (or a
    plain tag string). Graph vertices without a record count as
    "untagged" so the tag counts always partition the vertex set.
    """
    tagged: dict[str, int] = {}
    if metadata is not None:
        for key in graph.keys:
            record = metadata.get(key)
            if record is None:
                tag = "untagged"
            else:
                tag = record if isinstance(record, str) else record.tag
            tagged[tag] = tagged.get(tag, 0) + 1
    return GraphStats(
        vertex_count=graph.n,
        edge_count=graph.edge_count,
        tagged_vertex_counts=tagged,
    )
