from __future__ import annotations

import threading

import numpy as np
import pytest

from eqrank.catalog import build_catalog
from eqrank.cocitation import weight_all_edges
from eqrank.graph import CitationGraph
from eqrank.hierarchy import run_hierarchy
from eqrank.service import ApiConfig, create_server


def random_digraph(rng: np.random.Generator, n: int, p: float) -> CitationGraph:
    """Erdos-Renyi style digraph with string keys and no self-loops."""
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    src, dst = np.nonzero(mask)
    keys = [f"v{i:05d}" for i in range(n)]
    graph, _, _ = CitationGraph.from_edge_arrays(
        src.astype(np.int64), dst.astype(np.int64), keys
    )
    return graph


def random_functional_map(
    rng: np.random.Generator, n: int, cycle_lengths: tuple[int, ...] = ()
) -> np.ndarray:
    """Total next-map with optional planted cycles of the given lengths."""
    nxt = rng.integers(0, n, size=n, dtype=np.int32)
    total = sum(cycle_lengths)
    if total:
        chosen = rng.choice(n, size=total, replace=False)
        pos = 0
        for length in cycle_lengths:
            cycle = chosen[pos : pos + length]
            nxt[cycle] = np.roll(cycle, -1)
            pos += length
    return nxt


TWO_CAMPS_METADATA = (
    "A0\tQuark Gluon Plasma Review\tAlice Smith;Bob Jones\tin_corpus\n"
    "A1\tLattice Gauge Theory Methods\tCarol Wu\tin_corpus\n"
    "A2\tHeavy Ion Collisions\tAlice Smith\tin_corpus\n"
    "A3\tJet Quenching Survey\tDan Petrov\tin_corpus\n"
    "B0\tNeutrino Oscillation Evidence\tErin Koch\tcited_only\n"
    "B1\tSolar Neutrino Flux\tFrank Hall\tcited_only\n"
    "B2\tAtmospheric Neutrino Data\tGina Liu\tin_corpus\n"
)


def two_camps_edges() -> list[tuple[str, str]]:
    """Two dense camps joined by one zero-co-citation cross edge.

    Within a camp every paper cites all earlier ones, which makes the
    oldest paper the root authority and the newest the root hub; the
    cross edge carries weight zero and does not disturb either side.
    """
    edges: list[tuple[str, str]] = []
    for prefix in ("A", "B"):
        names = [f"{prefix}{i}" for i in range(4)]
        for i in range(1, 4):
            for j in range(i):
                edges.append((names[i], names[j]))
    edges.append(("A3", "B0"))
    return edges


def two_camps_tsv() -> str:
    return "".join(f"{a}\t{b}\n" for a, b in two_camps_edges())


@pytest.fixture(scope="session")
def two_camps_graph() -> CitationGraph:
    return CitationGraph.from_edge_list(two_camps_edges())


@pytest.fixture(scope="session")
def fixture_catalog(two_camps_graph):
    tree = run_hierarchy(two_camps_graph)
    return build_catalog(tree, weight_all_edges(two_camps_graph), TWO_CAMPS_METADATA)


@pytest.fixture(scope="session")
def service_base(fixture_catalog):
    server = create_server(fixture_catalog, ApiConfig(port=0))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}"
    finally:
        server.shutdown()
        server.server_close()
