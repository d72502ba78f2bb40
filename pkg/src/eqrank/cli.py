"""Command-line pipeline: ingest -> cluster -> catalog -> serve, plus QA.

Each stage reads and writes files so runs are resumable and independently
testable at large scale. The whole pipeline is seed-free and
deterministic: identical inputs produce byte-identical artifacts.

Exit codes: 0 ok, 1 usage error, 2 data/format error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .catalog import Catalog, build_catalog, load_metadata
from .cocitation import oracle_cocitation, weight_all_edges
from .errors import EqRankError
from .graph import CitationGraph, GraphStats, largest_weak_component, load_edge_list, stats
from .hierarchy import load_tree, run_hierarchy, save_tree
from .level import eqrank_level, local_authority_map, local_hub_map, resolve_roots
from .naive import naive_reduce, naive_resolve_roots
from .service import DEFAULT_ADDR, ApiConfig, parse_addr, serve_forever

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class PipelineManifest:
    """Inputs and outputs of one CLI stage, validated before work starts."""

    inputs: list[Path] = field(default_factory=list)
    outputs: list[Path] = field(default_factory=list)
    max_levels: int | None = None

    def validate(self) -> None:
        for p in self.inputs:
            if not p.exists():
                raise EqRankError(f"input file does not exist: {p}")
        for p in self.outputs:
            if p.parent and not p.parent.exists():
                raise EqRankError(f"output directory does not exist: {p.parent}")
        if self.max_levels is not None and self.max_levels < 1:
            raise EqRankError("--max-levels must be >= 1")


def _print_stats(st: GraphStats, as_json: bool, extra: dict | None = None) -> None:
    if as_json:
        doc = st.to_dict()
        if extra:
            doc.update(extra)
        print(json.dumps(doc, sort_keys=True))
        return
    print(f"{st.vertex_count} vertices, {st.edge_count} edges")
    for tag, count in sorted(st.tagged_vertex_counts.items()):
        print(f"  {tag}: {count}")
    if st.lcc_vertex_count is not None:
        print(f"  largest weak component: {st.lcc_vertex_count} vertices")
    if extra:
        for k, v in extra.items():
            print(f"  {k}: {v}")


def _load_metadata_arg(path: str | None):
    if path is None:
        return None
    with open(path, "rb") as fh:
        return load_metadata(fh)


def cmd_ingest(args) -> int:
    manifest = PipelineManifest(
        inputs=[Path(args.edges)] + ([Path(args.metadata)] if args.metadata else []),
        outputs=[Path(args.output)],
    )
    manifest.validate()
    kernels.set_threads(args.threads)
    with open(args.edges, "rb") as fh:
        graph, report = load_edge_list(fh)
    graph.save(args.output)
    metadata = _load_metadata_arg(args.metadata)
    st = stats(graph, metadata)
    _print_stats(st, args.json, extra=report.to_dict())
    return EXIT_OK


def cmd_stats(args) -> int:
    manifest = PipelineManifest(
        inputs=[Path(args.graph)] + ([Path(args.metadata)] if args.metadata else [])
    )
    manifest.validate()
    graph = CitationGraph.load(args.graph)
    metadata = _load_metadata_arg(args.metadata)
    st = stats(graph, metadata)
    if args.lcc:
        lcc, _ = largest_weak_component(graph)
        st.lcc_vertex_count = lcc.n
    _print_stats(st, args.json)
    return EXIT_OK


def cmd_cluster(args) -> int:
    manifest = PipelineManifest(
        inputs=[Path(args.graph)], outputs=[Path(args.output)], max_levels=args.max_levels
    )
    manifest.validate()
    kernels.set_threads(args.threads)
    graph = CitationGraph.load(args.graph)
    if graph.n == 0:
        raise EqRankError("cannot cluster an empty graph")
    if args.lcc:
        graph, _ = largest_weak_component(graph)
        print(f"largest weak component: {graph.n} vertices", file=sys.stderr)
    tree = run_hierarchy(graph, max_levels=args.max_levels)
    save_tree(tree, graph.keys, args.output)
    if args.json:
        print(
            json.dumps(
                {
                    "level_sizes": tree.level_sizes,
                    "termination_cause": tree.termination_cause,
                    "ground_vertex_count": tree.ground_n,
                },
                sort_keys=True,
            )
        )
    else:
        for lvl, size in enumerate(tree.level_sizes, start=1):
            print(f"level {lvl}: {size} themes")
        print(f"termination: {tree.termination_cause}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    manifest = PipelineManifest(
        inputs=[Path(args.tree), Path(args.graph)]
        + ([Path(args.metadata)] if args.metadata else []),
        outputs=[Path(args.output)],
    )
    manifest.validate()
    kernels.set_threads(args.threads)
    tree = load_tree(args.tree)
    graph = CitationGraph.load(args.graph)
    metadata = _load_metadata_arg(args.metadata)
    catalog = build_catalog(tree, weight_all_edges(graph), metadata)
    catalog.save(args.output)
    print(
        f"catalog: {catalog.n} papers, {catalog.num_levels} levels, "
        f"{len(catalog.token_index)} search tokens"
    )
    return EXIT_OK


def cmd_serve(args) -> int:
    catalog_path = args.catalog or os.environ.get("EQRANK_CATALOG")
    if not catalog_path:
        raise EqRankError("no catalog: pass a path or set EQRANK_CATALOG")
    PipelineManifest(inputs=[Path(catalog_path)]).validate()
    addr = args.addr or os.environ.get("EQRANK_ADDR", DEFAULT_ADDR)
    host, port = parse_addr(addr)
    catalog = Catalog.load(catalog_path)
    config = ApiConfig(
        host=host,
        port=port,
        catalog_path=str(catalog_path),
        result_cap=args.cap,
        log_requests=args.verbose,
    )
    serve_forever(catalog, config)
    return EXIT_OK


def cmd_verify(args) -> int:
    manifest = PipelineManifest(inputs=[Path(args.graph)])
    manifest.validate()
    kernels.set_threads(args.threads)
    graph = CitationGraph.load(args.graph)
    rng = np.random.default_rng(args.seed)
    failures = []
    for name, check in (
        ("structure", _check_structure),
        ("cocitation-oracle", _check_cocitation),
        ("root-resolution-oracle", _check_roots),
        ("contraction-oracle", _check_contraction),
    ):
        try:
            check(graph, rng, args.samples)
        except AssertionError as exc:
            failures.append((name, str(exc)))
            print(f"FAIL {name}: {exc}")
        else:
            print(f"ok   {name}")
    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return EXIT_DATA
    print("all checks passed")
    return EXIT_OK


def _check_structure(graph, rng, samples) -> None:
    n = graph.n
    out_deg = graph.out_degrees()
    assert int(out_deg.sum()) == graph.edge_count, "degree sum != edge count"
    assert int(graph.in_degrees().sum()) == graph.edge_count, "in-degree sum != edge count"
    for p in range(n):
        nb = graph.out_neighbors(p)
        assert (np.diff(nb) > 0).all(), f"out list of {p} not strictly increasing"
        assert not (nb == p).any(), f"self-loop at {p}"
        inb = graph.in_neighbors(p)
        assert (np.diff(inb) > 0).all(), f"in list of {p} not strictly increasing"
    # transpose consistency: re-deriving each in-edge's source from the
    # out-edge permutation must reproduce in_indices exactly
    src = graph.edge_sources()
    assert np.array_equal(graph.transpose_weights(src), graph.in_indices), (
        "in/out adjacency are not transposes"
    )
    for p in rng.choice(n, size=min(n, samples), replace=False) if n else []:
        for q in graph.out_neighbors(p):
            assert p in graph.in_neighbors(int(q)), f"edge {p}->{q} missing from transpose"
    assert len(set(graph.keys)) == n, "keys are not unique"


def _check_cocitation(graph, rng, samples) -> None:
    if graph.edge_count == 0:
        return
    wg = weight_all_edges(graph)
    edge_ids = rng.choice(graph.edge_count, size=min(graph.edge_count, samples), replace=False)
    src = graph.edge_sources()
    for e in edge_ids:
        p = int(src[e])
        q = int(graph.out_indices[e])
        expected = oracle_cocitation(graph, p, q)
        got = int(wg.weights[e])
        assert got == expected, f"edge {p}->{q}: weight {got}, oracle {expected}"


def _check_roots(graph, rng, samples) -> None:
    wg = weight_all_edges(graph)
    for next_map in (local_authority_map(wg), local_hub_map(wg)):
        roots = resolve_roots(next_map)
        if graph.n <= 200_000:
            expected = naive_resolve_roots(next_map.tolist())
            assert np.array_equal(roots, np.array(expected, dtype=roots.dtype)), (
                "root resolution differs from trajectory walker"
            )
        else:
            for v in rng.choice(graph.n, size=samples, replace=False):
                seen = set()
                u = int(v)
                while u not in seen:
                    seen.add(u)
                    u = int(next_map[u])
                cycle = _cycle_from(next_map, u)
                assert int(roots[v]) == min(cycle), f"root of {v} is not its cycle minimum"


def _cycle_from(next_map, start: int) -> list[int]:
    cycle = [start]
    u = int(next_map[start])
    while u != start:
        cycle.append(u)
        u = int(next_map[u])
    return cycle


def _check_contraction(graph, rng, samples) -> None:
    if graph.n == 0 or graph.n > 300_000:
        return
    from .hierarchy import reduce_graph

    part = eqrank_level(graph)
    reduced = reduce_graph(graph, part)
    expected_edges, n_themes = naive_reduce(graph, part.theme_of.tolist())
    assert reduced.graph.n == n_themes, "reduced vertex count mismatch"
    got_edges = {}
    src = reduced.graph.edge_sources()
    for e in range(reduced.graph.edge_count):
        got_edges[(int(src[e]), int(reduced.graph.out_indices[e]))] = int(
            reduced.multiplicity[e]
        )
    assert got_edges == expected_edges, "reduced edge set differs from oracle"


def main(argv=None) -> int:
    parser = _Parser(prog="eqrank", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse an edge list into a graph snapshot")
    p.add_argument("edges", help="tab-separated edge list file")
    p.add_argument("-m", "--metadata", help="paper metadata file for tagged stats")
    p.add_argument("-o", "--output", required=True, help="graph snapshot to write")
    p.add_argument("--json", action="store_true", help="print stats as JSON")
    p.add_argument("--threads", type=int, default=0, help="worker threads (0 = auto)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="report counts for a graph snapshot")
    p.add_argument("graph")
    p.add_argument("-m", "--metadata")
    p.add_argument("--lcc", action="store_true", help="also size the largest weak component")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("cluster", help="build the theme hierarchy")
    p.add_argument("graph")
    p.add_argument("--lcc", action="store_true", help="cluster the largest weak component only")
    p.add_argument("--max-levels", type=int, default=16)
    p.add_argument("-o", "--output", required=True, help="cluster tree JSON to write")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("catalog", help="join tree, graph, and metadata into a catalog")
    p.add_argument("tree")
    p.add_argument("graph")
    p.add_argument("metadata", nargs="?", help="optional metadata file")
    p.add_argument("-o", "--output", required=True, help="catalog snapshot to write")
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("serve", help="serve a catalog snapshot over HTTP")
    p.add_argument("catalog", nargs="?", help="catalog snapshot (or EQRANK_CATALOG)")
    p.add_argument("--addr", help=f"listen address, default {DEFAULT_ADDR} (or EQRANK_ADDR)")
    p.add_argument("--cap", type=int, default=100, help="max results per response")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("verify", help="run the built-in oracle checks on a graph")
    p.add_argument("graph")
    p.add_argument("--samples", type=int, default=200, help="probes per sampled check")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except EqRankError as exc:
        print(f"eqrank {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
