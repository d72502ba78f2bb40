"""Vectorized numpy/scipy implementations of the hot kernels.

This is the fallback path used when numba is unavailable or disabled via
EQRANK_NUMBA=0. Every function here must produce results bit-identical to
its counterpart in `_backend_numba`.
"""

from __future__ import annotations

import numpy as np

_COCITE_CHUNK = 200_000


def cocitation_edge_weights(out_indptr, out_indices, in_indptr, in_indices):
    """Shared-citer count for every edge, aligned with out_indices.

    Works edge-chunk at a time: rows p and q of the citer matrix are
    intersected by elementwise sparse multiply, which keeps peak memory
    proportional to the chunk's in-degrees rather than to n^2.
    """
    import scipy.sparse as sp

    m = out_indices.shape[0]
    n = out_indptr.shape[0] - 1
    weights = np.zeros(m, dtype=np.int32)
    if m == 0 or n == 0:
        return weights
    citers = sp.csr_matrix(
        (np.ones(in_indices.shape[0], dtype=np.int32), in_indices, in_indptr),
        shape=(n, n),
    )
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(out_indptr))
    dst = out_indices.astype(np.int64)
    for lo in range(0, m, _COCITE_CHUNK):
        hi = min(lo + _COCITE_CHUNK, m)
        common = citers[src[lo:hi]].multiply(citers[dst[lo:hi]])
        weights[lo:hi] = np.asarray(common.sum(axis=1)).ravel().astype(np.int32)
    return weights


def segment_argmax(indptr, indices, values):
    """Per-vertex neighbor with the maximum value; self for empty segments.

    Adjacency segments are sorted by neighbor id, so taking the first
    position achieving the segment maximum breaks ties toward the
    smallest id.
    """
    n = indptr.shape[0] - 1
    out = np.arange(n, dtype=np.int32)
    if indices.shape[0] == 0 or n == 0:
        return out
    deg = np.diff(indptr)
    nonempty = deg > 0
    starts = indptr[:-1][nonempty]
    seg_max = np.maximum.reduceat(values, starts)
    seg_ord = np.cumsum(nonempty) - 1
    edge_vertex = np.repeat(np.arange(n), deg)
    is_max = values == seg_max[seg_ord[edge_vertex]]
    m = values.shape[0]
    pos = np.where(is_max, np.arange(m), m)
    first_max = np.minimum.reduceat(pos, starts)
    out[nonempty] = indices[first_max]
    return out


def functional_roots(nxt):
    """Canonical root (min id of the terminal cycle) for a functional map.

    Pointer doubling: after k squarings with 2^k >= n every vertex has
    landed on its terminal cycle, and a parallel min-label doubling pass
    computes each cycle's minimum member.
    """
    n = nxt.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int32)
    k = 0
    while (1 << k) < n:
        k += 1
    land = nxt.astype(np.int64)
    for _ in range(k):
        land = land[land]
    min_seen = np.arange(n, dtype=np.int64)
    hop = nxt.astype(np.int64)
    for _ in range(k):
        min_seen = np.minimum(min_seen, min_seen[hop])
        hop = hop[hop]
    return min_seen[land].astype(np.int32)


def weak_component_labels(n, src, dst):
    """Label every vertex with the minimum vertex id of its weak component."""
    import scipy.sparse as sp
    from scipy.sparse import csgraph

    if n == 0:
        return np.empty(0, dtype=np.int64)
    if src.shape[0] == 0:
        return np.arange(n, dtype=np.int64)
    adj = sp.coo_matrix(
        (np.ones(src.shape[0], dtype=np.int8), (src, dst)), shape=(n, n)
    )
    n_comp, labels = csgraph.connected_components(adj, directed=True, connection="weak")
    min_id = np.full(n_comp, n, dtype=np.int64)
    np.minimum.at(min_id, labels, np.arange(n, dtype=np.int64))
    return min_id[labels]
