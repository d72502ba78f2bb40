#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends on a synthetic graph.

Usage:
    python benchmarks/bench_backends.py [--vertices N] [--edges M] [--repeat R]

Both backends produce bit-identical results (asserted here); the point of
this script is the speed gap, and to show what you lose by running with
EQRANK_NUMBA=0.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from eqrank import _backend_numpy
from eqrank.graph import CitationGraph
from eqrank.synth import preferential_attachment_edges

try:
    from eqrank import _backend_numba
except ImportError:
    _backend_numba = None


def timed(fn, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return result, best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vertices", type=int, default=200_000)
    parser.add_argument("--edges", type=int, default=1_200_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"building synthetic graph: {args.vertices} vertices, {args.edges} edges")
    src, dst = preferential_attachment_edges(args.vertices, args.edges, seed=1)
    graph, _, _ = CitationGraph.from_edge_arrays(
        src.astype(np.int64),
        dst.astype(np.int64),
        [f"p{i:07d}" for i in range(args.vertices)],
    )
    print(f"after normalization: {graph.edge_count} edges\n")

    backends = [("numpy", _backend_numpy)]
    if _backend_numba is not None:
        backends.insert(0, ("numba", _backend_numba))
    else:
        print("numba unavailable; timing the numpy backend only\n")

    cases = {
        "cocitation weights": lambda impl: impl.cocitation_edge_weights(
            graph.out_indptr, graph.out_indices, graph.in_indptr, graph.in_indices
        ),
        "local-map argmax": None,  # filled below, needs the weights
        "root resolution": None,
        "weak components": lambda impl: impl.weak_component_labels(
            graph.n,
            graph.edge_sources().astype(np.int64),
            graph.out_indices.astype(np.int64),
        ),
    }

    weights = _backend_numpy.cocitation_edge_weights(
        graph.out_indptr, graph.out_indices, graph.in_indptr, graph.in_indices
    )
    cases["local-map argmax"] = lambda impl: impl.segment_argmax(
        graph.out_indptr, graph.out_indices, weights
    )
    next_map = _backend_numpy.segment_argmax(graph.out_indptr, graph.out_indices, weights)
    cases["root resolution"] = lambda impl: impl.functional_roots(next_map)

    width = max(len(name) for name in cases)
    header = f"{'kernel'.ljust(width)}  " + "  ".join(f"{name:>10}" for name, _ in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, call in cases.items():
        results = []
        times = []
        for _, impl in backends:
            call(impl)  # warm up (JIT compile on the numba side)
            result, best = timed(lambda: call(impl), args.repeat)
            results.append(result)
            times.append(best)
        if len(results) == 2:
            assert np.array_equal(results[0], results[1]), f"{name}: backends disagree"
        row = f"{name.ljust(width)}  " + "  ".join(f"{t * 1e3:>8.1f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[1] / times[0]:>7.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
