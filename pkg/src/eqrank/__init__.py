"""EqRank: parameter-free hierarchical theme clustering for citation graphs.

References are weighted by co-citation; following each paper's heaviest
reference resolves a root authority, following its heaviest citation a
root hub, and papers sharing both roots form a theme. Contracting themes
and repeating yields the multi-level hierarchy that the catalog and HTTP
service expose.
"""

from .catalog import Catalog, PaperMetadata, build_catalog, load_metadata
from .cocitation import (
    WeightedGraph,
    cocitation_weight,
    oracle_cocitation,
    weight_all_edges,
)
from .errors import (
    EdgeListParseError,
    EmptyGraphError,
    EqRankError,
    MetadataParseError,
    SnapshotFormatError,
    UnknownThemeError,
    UnknownVertexError,
    VersionMismatchError,
)
from .graph import (
    CitationGraph,
    GraphStats,
    IngestOptions,
    IngestReport,
    largest_weak_component,
    load_edge_list,
    stats,
)
from .hierarchy import (
    ClusterTree,
    ReducedGraph,
    ThemeId,
    load_tree,
    reduce_graph,
    run_hierarchy,
    save_tree,
    theme_path,
)
from .level import (
    LevelResult,
    LocalMaps,
    Partition,
    RootAssignment,
    compute_level,
    eqrank_level,
    local_authority_map,
    local_hub_map,
    resolve_roots,
    theme_partition,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "CitationGraph",
    "ClusterTree",
    "EdgeListParseError",
    "EmptyGraphError",
    "EqRankError",
    "GraphStats",
    "IngestOptions",
    "IngestReport",
    "LevelResult",
    "LocalMaps",
    "MetadataParseError",
    "PaperMetadata",
    "Partition",
    "ReducedGraph",
    "RootAssignment",
    "SnapshotFormatError",
    "ThemeId",
    "UnknownThemeError",
    "UnknownVertexError",
    "VersionMismatchError",
    "WeightedGraph",
    "build_catalog",
    "cocitation_weight",
    "compute_level",
    "eqrank_level",
    "largest_weak_component",
    "load_edge_list",
    "load_metadata",
    "load_tree",
    "local_authority_map",
    "local_hub_map",
    "oracle_cocitation",
    "reduce_graph",
    "resolve_roots",
    "run_hierarchy",
    "save_tree",
    "stats",
    "theme_partition",
    "theme_path",
    "weight_all_edges",
]
