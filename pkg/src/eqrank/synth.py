"""Synthetic citation graphs for benchmarks and scale tests.

Preferential attachment with strictly backward references: vertex v cites
older vertices, half uniformly and half proportionally to in-degree
(sampled from the running target list, frozen per block so the whole
generation stays vectorized). Raw output may contain duplicate edges;
ingestion collapses them.
"""

from __future__ import annotations

import numpy as np

_BLOCK = 10_000


def preferential_attachment_edges(
    n_vertices: int, n_edges: int, seed: int = 0, uniform_fraction: float = 0.5
) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic (seeded) edge arrays (src, dst) with dst < src."""
    if n_vertices < 2:
        raise ValueError("need at least 2 vertices")
    rng = np.random.default_rng(seed)
    base, extra = divmod(n_edges, n_vertices - 1)
    out_deg = np.full(n_vertices, base, dtype=np.int64)
    out_deg[0] = 0
    out_deg[1 : extra + 1] += 1
    # vertex 1 can only cite vertex 0
    src = np.repeat(np.arange(n_vertices, dtype=np.int64), out_deg)
    dst = np.empty(src.shape[0], dtype=np.int64)

    edge_starts = np.zeros(n_vertices + 1, dtype=np.int64)
    np.cumsum(out_deg, out=edge_starts[1:])
    for block_lo in range(1, n_vertices, _BLOCK):
        block_hi = min(block_lo + _BLOCK, n_vertices)
        lo, hi = edge_starts[block_lo], edge_starts[block_hi]
        if lo == hi:
            continue
        block_src = src[lo:hi]
        uniform = rng.integers(0, block_src)  # high is exclusive: target < source
        prefix = dst[:lo]
        if prefix.shape[0] == 0:
            dst[lo:hi] = uniform
            continue
        preferential = prefix[rng.integers(0, prefix.shape[0], size=hi - lo)]
        # targets drawn before this block exist and are < block_lo <= source
        take_uniform = rng.random(hi - lo) < uniform_fraction
        dst[lo:hi] = np.where(take_uniform, uniform, preferential)
    return src.astype(np.int32), dst.astype(np.int32)


def edges_to_tsv_bytes(src: np.ndarray, dst: np.ndarray, key_format: str = "p{:07d}") -> bytes:
    """Render edge arrays as the tab-separated ingestion format."""
    n = int(max(src.max(), dst.max())) + 1 if src.shape[0] else 0
    keys = [key_format.format(i).encode("utf-8") for i in range(n)]
    lines = [keys[s] + b"\t" + keys[d] for s, d in zip(src.tolist(), dst.tolist())]
    return b"\n".join(lines) + (b"\n" if lines else b"")
