#!/usr/bin/env python3
"""Stand up a small demo catalog on an ephemeral port for UI tests.

Prints `READY <base-url>` once the server accepts requests, then serves
until killed.
"""

import sys

from eqrank.catalog import build_catalog
from eqrank.cocitation import weight_all_edges
from eqrank.graph import CitationGraph
from eqrank.hierarchy import run_hierarchy
from eqrank.service import ApiConfig, create_server

METADATA = (
    "A0\tQuark Gluon Plasma Review\tAlice Smith;Bob Jones\tin_corpus\n"
    "A1\tLattice Gauge Theory Methods\tCarol Wu\tin_corpus\n"
    "A2\tHeavy Ion Collisions\tAlice Smith\tin_corpus\n"
    "A3\tJet Quenching Survey\tDan Petrov\tin_corpus\n"
    "B0\tNeutrino Oscillation Evidence\tErin Koch\tcited_only\n"
    "B1\tSolar Neutrino Flux\tFrank Hall\tcited_only\n"
    "B2\tAtmospheric Neutrino Data\tGina Liu\tin_corpus\n"
)


def demo_edges():
    edges = []
    for prefix in ("A", "B"):
        names = [f"{prefix}{i}" for i in range(4)]
        for i in range(1, 4):
            for j in range(i):
                edges.append((names[i], names[j]))
    edges.append(("A3", "B0"))
    return edges


def main() -> int:
    graph = CitationGraph.from_edge_list(demo_edges())
    tree = run_hierarchy(graph)
    catalog = build_catalog(tree, weight_all_edges(graph), METADATA)
    server = create_server(catalog, ApiConfig(port=0))
    host, port = server.server_address[:2]
    print(f"READY http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
