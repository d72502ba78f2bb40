"""Catalog: cluster tree joined with paper metadata, search, and rankings.

Everything a reader-facing service needs is precomputed here: per-theme
summaries and hub/authority rankings, per-paper theme paths and local
structure, and a token index over titles and author names. A catalog is
immutable once built and serializes to a single self-contained snapshot.
"""

from __future__ import annotations

import io
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterable

import numpy as np

from . import container
from .cocitation import WeightedGraph
from .errors import (
    EqRankError,
    MetadataParseError,
    SnapshotFormatError,
    UnknownThemeError,
    VersionMismatchError,
)
from .hierarchy import (
    ClusterTree,
    ThemeId,
    ground_root_representatives,
    tree_from_json_bytes,
    tree_to_json_bytes,
)
from .level import local_authority_map, local_hub_map, resolve_roots, theme_partition

logger = logging.getLogger(__name__)

CATALOG_FORMAT_VERSION = 1
CATALOG_SNAPSHOT_KIND = "eqrank-catalog"

VALID_TAGS = ("in_corpus", "cited_only")
_TAG_CODE = {None: 0, "in_corpus": 1, "cited_only": 2}
_CODE_TAG = {v: k for k, v in _TAG_CODE.items()}

_TOKEN_RE = re.compile(r"[0-9a-z]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class PaperMetadata:
    key: str
    title: str
    authors: tuple[str, ...]
    tag: str


def load_metadata(
    source: bytes | str | BinaryIO | io.TextIOBase,
) -> dict[str, PaperMetadata]:
    """Parse `key<TAB>title<TAB>authors<TAB>tag` records (authors ;-separated)."""
    if isinstance(source, bytes):
        text: Iterable[str] = io.TextIOWrapper(io.BytesIO(source), encoding="utf-8")
    elif isinstance(source, str):
        text = io.StringIO(source)
    elif isinstance(source, io.TextIOBase):
        text = source
    else:
        text = io.TextIOWrapper(source, encoding="utf-8")
    records: dict[str, PaperMetadata] = {}
    for lineno, line in enumerate(text, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise MetadataParseError(lineno, f"expected 4 tab-separated fields, got {len(fields)}")
        key, title, authors, tag = fields
        if not key:
            raise MetadataParseError(lineno, "empty key field")
        if tag not in VALID_TAGS:
            raise MetadataParseError(lineno, f"unknown tag {tag!r}")
        if key in records:
            raise MetadataParseError(lineno, f"duplicate key {key!r}")
        author_list = tuple(a.strip() for a in authors.split(";") if a.strip())
        records[key] = PaperMetadata(key=key, title=title, authors=author_list, tag=tag)
    return records


class Catalog:
    """Precomputed, read-only view over one clustering run."""

    def __init__(
        self,
        tree: ClusterTree,
        keys: list[str],
        titles: list[str | None],
        authors: list[tuple[str, ...]],
        tag_codes: np.ndarray,
        la: np.ndarray,
        lh: np.ndarray,
        ra: np.ndarray,
        rh: np.ndarray,
        auth_scores: list[np.ndarray],
        hub_scores: list[np.ndarray],
        token_index: dict[str, np.ndarray],
    ):
        self.tree = tree
        self.keys = keys
        self.titles = titles
        self.authors = authors
        self.tag_codes = tag_codes
        self.la = la
        self.lh = lh
        self.ra = ra
        self.rh = rh
        self.auth_scores = auth_scores
        self.hub_scores = hub_scores
        self.token_index = token_index

        self._key_to_id = {k: i for i, k in enumerate(keys)}
        self.key_rank = np.empty(len(keys), dtype=np.int64)
        self.key_rank[np.argsort(np.array(keys, dtype=object), kind="stable")] = np.arange(
            len(keys), dtype=np.int64
        )
        self.assignments = tree.ground_assignments()
        self.rep_ra, self.rep_rh = ground_root_representatives(tree)
        self._build_orders()
        self._build_children()

    # -- derived structure -------------------------------------------------

    def _build_orders(self) -> None:
        self.sizes: list[np.ndarray] = []
        self.offsets: list[np.ndarray] = []
        self.member_orders: list[np.ndarray] = []
        self.auth_orders: list[np.ndarray] = []
        self.hub_orders: list[np.ndarray] = []
        for lvl in range(self.tree.num_levels):
            assign = self.assignments[lvl]
            k = self.tree.level_sizes[lvl]
            sizes = np.bincount(assign, minlength=k).astype(np.int64)
            offsets = np.zeros(k + 1, dtype=np.int64)
            np.cumsum(sizes, out=offsets[1:])
            self.sizes.append(sizes)
            self.offsets.append(offsets)
            self.member_orders.append(np.lexsort((self.key_rank, assign)).astype(np.int64))
            self.auth_orders.append(
                np.lexsort((self.key_rank, -self.auth_scores[lvl], assign)).astype(np.int64)
            )
            self.hub_orders.append(
                np.lexsort((self.key_rank, -self.hub_scores[lvl], assign)).astype(np.int64)
            )

    def _build_children(self) -> None:
        # children of a level-k theme are the level-(k-1) themes it absorbed
        self.child_lists: list[list[np.ndarray]] = [[np.empty(0, np.int64)] * self.tree.level_sizes[0]]
        for lvl in range(1, self.tree.num_levels):
            part = self.tree.partitions[lvl]
            order = np.argsort(part.theme_of, kind="stable")
            bounds = np.searchsorted(part.theme_of[order], np.arange(part.n_themes + 1))
            self.child_lists.append(
                [order[bounds[i] : bounds[i + 1]] for i in range(part.n_themes)]
            )

    # -- lookups -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.keys)

    @property
    def num_levels(self) -> int:
        return self.tree.num_levels

    def themes_at(self, level: int) -> int:
        return self.tree.level_sizes[level - 1]

    def check_theme(self, level: int, index: int) -> None:
        if not (1 <= level <= self.num_levels) or not (0 <= index < self.themes_at(level)):
            raise UnknownThemeError(f"no theme {index} at level {level}")

    def theme_path_payload(self, vertex: int) -> list[dict]:
        return [{"level": t.level, "index": t.index} for t in self.tree.theme_path(vertex)]

    def summary(self, level: int, index: int) -> dict:
        self.check_theme(level, index)
        lvl = level - 1
        parent = self.tree.parent_index(level, index)
        return {
            "level": level,
            "index": index,
            "size": int(self.sizes[lvl][index]),
            "root_authority_key": self.keys[int(self.rep_ra[lvl][index])],
            "root_hub_key": self.keys[int(self.rep_rh[lvl][index])],
            "parent": None if parent is None else {"level": level + 1, "index": parent},
            "children": [
                {"level": level - 1, "index": int(c)} for c in self.child_lists[lvl][index]
            ]
            if level > 1
            else [],
        }

    def summaries_at(self, level: int) -> list[dict]:
        if not 1 <= level <= self.num_levels:
            raise UnknownThemeError(f"no level {level}")
        return [self.summary(level, i) for i in range(self.themes_at(level))]

    def _ranked(self, orders, scores, rep, level: int, index: int, limit: int) -> list[dict]:
        lvl = level - 1
        span = orders[lvl][self.offsets[lvl][index] : self.offsets[lvl][index + 1]]
        top = span[:limit]
        root_v = int(rep[lvl][index])
        if not (top == root_v).any():
            # the theme's root is always listed, even when it is not a
            # ground member of the theme (its own roots may differ)
            root_score = (
                int(scores[lvl][root_v]) if self.assignments[lvl][root_v] == index else 0
            )
            entry = (root_v, root_score)
            if top.shape[0] >= limit:
                top = top[: limit - 1]
            return [
                {"key": self.keys[int(v)], "score": int(scores[lvl][v])} for v in top
            ] + [{"key": self.keys[entry[0]], "score": entry[1]}]
        return [{"key": self.keys[int(v)], "score": int(scores[lvl][v])} for v in top]

    def theme_authorities(self, level: int, index: int, limit: int = 20) -> list[dict]:
        """Ground members ranked by within-theme weighted in-degree."""
        self.check_theme(level, index)
        if limit < 1:
            raise ValueError("limit must be >= 1")
        return self._ranked(self.auth_orders, self.auth_scores, self.rep_ra, level, index, limit)

    def theme_hubs(self, level: int, index: int, limit: int = 20) -> list[dict]:
        """Ground members ranked by within-theme weighted out-degree."""
        self.check_theme(level, index)
        if limit < 1:
            raise ValueError("limit must be >= 1")
        return self._ranked(self.hub_orders, self.hub_scores, self.rep_rh, level, index, limit)

    def members_page(self, level: int, index: int, offset: int = 0, limit: int = 50) -> dict:
        self.check_theme(level, index)
        if offset < 0 or limit < 1:
            raise ValueError("offset must be >= 0 and limit >= 1")
        lvl = level - 1
        span = self.member_orders[lvl][self.offsets[lvl][index] : self.offsets[lvl][index + 1]]
        page = span[offset : offset + limit]
        return {
            "offset": offset,
            "limit": limit,
            "total": int(span.shape[0]),
            "keys": [self.keys[int(v)] for v in page],
        }

    def paper_payload(self, key: str) -> dict | None:
        vid = self._key_to_id.get(key)
        if vid is None:
            return None
        tag = _CODE_TAG[int(self.tag_codes[vid])]
        return {
            "key": key,
            "title": self.titles[vid],
            "authors": list(self.authors[vid]),
            "tag": tag,
            "theme_path": self.theme_path_payload(vid),
            "local": {
                "la_key": self.keys[int(self.la[vid])],
                "lh_key": self.keys[int(self.lh[vid])],
                "ra_key": self.keys[int(self.ra[vid])],
                "rh_key": self.keys[int(self.rh[vid])],
            },
        }

    def search_payload(
        self, query: str, theme: ThemeId | None = None, limit: int = 100
    ) -> list[dict]:
        """Case-insensitive AND-match of query tokens over titles and authors.

        Results are ordered by (match count desc, key asc); each carries
        its full theme path.
        """
        if limit < 1:
            raise ValueError("limit must be >= 1")
        tokens = sorted(set(tokenize(query)))
        if not tokens:
            return []
        postings = []
        for tok in tokens:
            arr = self.token_index.get(tok)
            if arr is None:
                return []
            postings.append(arr)
        postings.sort(key=lambda a: a.shape[0])
        hits = postings[0]
        for other in postings[1:]:
            hits = np.intersect1d(hits, other, assume_unique=True)
            if hits.shape[0] == 0:
                return []
        if theme is not None:
            self.check_theme(theme.level, theme.index)
            hits = hits[self.assignments[theme.level - 1][hits] == theme.index]
        hits = hits[np.argsort(self.key_rank[hits], kind="stable")][:limit]
        match_count = len(tokens)
        return [
            {
                "key": self.keys[int(v)],
                "title": self.titles[int(v)],
                "match_count": match_count,
                "theme_path": self.theme_path_payload(int(v)),
            }
            for v in hits
        ]

    # -- snapshot io ---------------------------------------------------------

    def save(self, path: str | Path) -> None:
        arrays: dict[str, np.ndarray] = {
            "tag_codes": self.tag_codes,
            "la": self.la,
            "lh": self.lh,
            "ra": self.ra,
            "rh": self.rh,
        }
        for lvl in range(self.num_levels):
            arrays[f"auth_score_{lvl}"] = self.auth_scores[lvl]
            arrays[f"hub_score_{lvl}"] = self.hub_scores[lvl]
        tokens = sorted(self.token_index)
        postings_indptr = np.zeros(len(tokens) + 1, dtype=np.int64)
        postings_parts = [self.token_index[t] for t in tokens]
        if postings_parts:
            np.cumsum([p.shape[0] for p in postings_parts], out=postings_indptr[1:])
            postings = np.concatenate(postings_parts).astype(np.int32)
        else:
            postings = np.empty(0, dtype=np.int32)
        arrays["token_postings_indptr"] = postings_indptr
        arrays["token_postings"] = postings
        has_title = np.array([t is not None for t in self.titles], dtype=np.uint8)
        arrays["has_title"] = has_title
        blobs = {
            "tree": tree_to_json_bytes(self.tree, self.keys),
            "keys": "\n".join(self.keys).encode("utf-8"),
            "titles": "\n".join(t or "" for t in self.titles).encode("utf-8"),
            "authors": "\n".join(";".join(a) for a in self.authors).encode("utf-8"),
            "tokens": "\n".join(tokens).encode("utf-8"),
        }
        container.save_container(
            path,
            CATALOG_SNAPSHOT_KIND,
            CATALOG_FORMAT_VERSION,
            meta={"ground_n": self.n, "levels": self.num_levels},
            arrays=arrays,
            blobs=blobs,
        )

    @classmethod
    def load(cls, path: str | Path) -> "Catalog":
        box = container.load_container(path, expected_kind=CATALOG_SNAPSHOT_KIND)
        if box.version != CATALOG_FORMAT_VERSION:
            raise VersionMismatchError(CATALOG_SNAPSHOT_KIND, box.version, CATALOG_FORMAT_VERSION)
        try:
            tree = tree_from_json_bytes(box.blobs["tree"])
            n = int(box.meta["ground_n"])
            keys = box.blobs["keys"].decode("utf-8").split("\n") if n else []
            raw_titles = box.blobs["titles"].decode("utf-8").split("\n") if n else []
            has_title = box.arrays["has_title"]
            titles = [t if has_title[i] else None for i, t in enumerate(raw_titles)]
            raw_authors = box.blobs["authors"].decode("utf-8").split("\n") if n else []
            authors = [tuple(a for a in row.split(";") if a) for row in raw_authors]
            token_names = box.blobs["tokens"].decode("utf-8").split("\n")
            if token_names == [""]:
                token_names = []
            indptr = box.arrays["token_postings_indptr"]
            postings = box.arrays["token_postings"]
            token_index = {
                tok: postings[indptr[i] : indptr[i + 1]] for i, tok in enumerate(token_names)
            }
            auth_scores = [box.arrays[f"auth_score_{lvl}"] for lvl in range(tree.num_levels)]
            hub_scores = [box.arrays[f"hub_score_{lvl}"] for lvl in range(tree.num_levels)]
            return cls(
                tree=tree,
                keys=keys,
                titles=titles,
                authors=authors,
                tag_codes=box.arrays["tag_codes"],
                la=box.arrays["la"],
                lh=box.arrays["lh"],
                ra=box.arrays["ra"],
                rh=box.arrays["rh"],
                auth_scores=auth_scores,
                hub_scores=hub_scores,
                token_index=token_index,
            )
        except (KeyError, IndexError, ValueError) as exc:
            raise SnapshotFormatError(f"{path}: malformed catalog: {exc}") from exc


def build_catalog(
    tree: ClusterTree,
    wg: WeightedGraph,
    metadata: dict[str, PaperMetadata] | bytes | str | BinaryIO | None = None,
) -> Catalog:
    """Precompute summaries, rankings, local structure, and the token index.

    Papers without a metadata record stay browsable by key but cannot be
    found through title/author search. Metadata keys missing from the
    graph are skipped with a warning.
    """
    graph = wg.graph
    if tree.ground_n != graph.n:
        raise EqRankError(
            f"tree was built over {tree.ground_n} vertices but graph has {graph.n}"
        )
    if metadata is None:
        records: dict[str, PaperMetadata] = {}
    elif isinstance(metadata, dict):
        records = metadata
    else:
        records = load_metadata(metadata)

    la = local_authority_map(wg)
    lh = local_hub_map(wg)
    ra = resolve_roots(la)
    rh = resolve_roots(lh)
    if tree.num_levels and not theme_partition(ra, rh).equals(tree.partitions[0]):
        raise EqRankError("cluster tree does not match this graph's level-1 partition")

    n = graph.n
    titles: list[str | None] = [None] * n
    authors: list[tuple[str, ...]] = [()] * n
    tag_codes = np.zeros(n, dtype=np.uint8)
    key_map = graph.key_map()
    skipped = 0
    for key, record in records.items():
        vid = key_map.get(key)
        if vid is None:
            skipped += 1
            continue
        titles[vid] = record.title
        authors[vid] = tuple(record.authors)
        tag_codes[vid] = _TAG_CODE[record.tag]
    if skipped:
        logger.warning("metadata: skipped %d records with keys not in the graph", skipped)

    token_lists: dict[str, list[int]] = {}
    for vid in range(n):
        if titles[vid] is None and not authors[vid]:
            continue
        toks = set(tokenize(titles[vid] or ""))
        for name in authors[vid]:
            toks.update(tokenize(name))
        for tok in toks:
            token_lists.setdefault(tok, []).append(vid)
    token_index = {
        tok: np.array(vids, dtype=np.int32) for tok, vids in token_lists.items()
    }

    src = graph.edge_sources().astype(np.int64)
    dst = graph.out_indices.astype(np.int64)
    w = wg.weights.astype(np.int64)
    assignments = tree.ground_assignments()
    auth_scores = []
    hub_scores = []
    for assign in assignments:
        same = assign[src] == assign[dst]
        auth_scores.append(
            np.bincount(dst[same], weights=w[same], minlength=n).astype(np.int64)
        )
        hub_scores.append(
            np.bincount(src[same], weights=w[same], minlength=n).astype(np.int64)
        )

    return Catalog(
        tree=tree,
        keys=list(graph.keys),
        titles=titles,
        authors=authors,
        tag_codes=tag_codes,
        la=la.astype(np.int32),
        lh=lh.astype(np.int32),
        ra=ra.astype(np.int32),
        rh=rh.astype(np.int32),
        auth_scores=auth_scores,
        hub_scores=hub_scores,
        token_index=token_index,
    )
