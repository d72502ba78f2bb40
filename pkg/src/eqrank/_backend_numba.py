"""Numba-jitted implementations of the hot kernels (default path).

Importing this module requires numba. Results are bit-identical to
`_backend_numpy`: the partition pipeline depends on that equivalence and
the test suite enforces it.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

# Ratio at which the per-edge intersection switches from a linear merge to
# galloping binary search of the longer list. Keeps total work proportional
# to sum over edges of min(indeg(p), indeg(q)) on hub-heavy graphs.
_GALLOP_RATIO = 16


@njit(cache=True)
def _intersect_size(arr, s1, e1, s2, e2):
    len1 = e1 - s1
    len2 = e2 - s2
    if len1 == 0 or len2 == 0:
        return 0
    if len1 * _GALLOP_RATIO < len2:
        return _gallop_count(arr, s1, e1, s2, e2)
    if len2 * _GALLOP_RATIO < len1:
        return _gallop_count(arr, s2, e2, s1, e1)
    count = 0
    i = s1
    j = s2
    while i < e1 and j < e2:
        a = arr[i]
        b = arr[j]
        if a == b:
            count += 1
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return count


@njit(cache=True)
def _gallop_count(arr, small_s, small_e, big_s, big_e):
    count = 0
    lo = big_s
    for i in range(small_s, small_e):
        target = arr[i]
        left = lo
        right = big_e
        while left < right:
            mid = (left + right) >> 1
            if arr[mid] < target:
                left = mid + 1
            else:
                right = mid
        if left < big_e and arr[left] == target:
            count += 1
            lo = left + 1
        else:
            lo = left
        if lo >= big_e:
            break
    return count


@njit(cache=True, parallel=True)
def _cocitation_kernel(out_indptr, out_indices, in_indptr, in_indices):
    n = out_indptr.shape[0] - 1
    weights = np.zeros(out_indices.shape[0], dtype=np.int32)
    for p in prange(n):
        ps = in_indptr[p]
        pe = in_indptr[p + 1]
        for e in range(out_indptr[p], out_indptr[p + 1]):
            q = out_indices[e]
            weights[e] = _intersect_size(in_indices, ps, pe, in_indptr[q], in_indptr[q + 1])
    return weights


def cocitation_edge_weights(out_indptr, out_indices, in_indptr, in_indices):
    return _cocitation_kernel(out_indptr, out_indices, in_indptr, in_indices)


@njit(cache=True, parallel=True)
def _segment_argmax_kernel(indptr, indices, values):
    n = indptr.shape[0] - 1
    out = np.empty(n, dtype=np.int32)
    for p in prange(n):
        start = indptr[p]
        end = indptr[p + 1]
        if start == end:
            out[p] = p
        else:
            best = indices[start]
            best_val = values[start]
            for i in range(start + 1, end):
                if values[i] > best_val:
                    best_val = values[i]
                    best = indices[i]
            out[p] = best
    return out


def segment_argmax(indptr, indices, values):
    return _segment_argmax_kernel(indptr, indices, values)


@njit(cache=True)
def _functional_roots_kernel(nxt):
    n = nxt.shape[0]
    root = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    for v in range(n):
        if root[v] >= 0:
            continue
        top = 0
        u = v
        while root[u] == -1:
            root[u] = -2  # on the current path
            stack[top] = u
            top += 1
            u = nxt[u]
        if root[u] == -2:
            # u closes a new terminal cycle; canonical root is its min id
            r = u
            w = nxt[u]
            while w != u:
                if w < r:
                    r = w
                w = nxt[w]
        else:
            r = root[u]
        for i in range(top):
            root[stack[i]] = r
    return root


def functional_roots(nxt):
    if nxt.shape[0] == 0:
        return np.empty(0, dtype=np.int32)
    return _functional_roots_kernel(nxt).astype(np.int32)


@njit(cache=True)
def _union_find_kernel(n, src, dst):
    parent = np.arange(n, dtype=np.int64)
    for e in range(src.shape[0]):
        a = src[e]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = dst[e]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            # union by min id: final root is the component's min vertex
            if a < b:
                parent[b] = a
            else:
                parent[a] = b
    for v in range(n):
        r = v
        while parent[r] != r:
            r = parent[r]
        u = v
        while parent[u] != r:
            t = parent[u]
            parent[u] = r
            u = t
    return parent


def weak_component_labels(n, src, dst):
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if src.shape[0] == 0:
        return np.arange(n, dtype=np.int64)
    return _union_find_kernel(n, src.astype(np.int64), dst.astype(np.int64))
