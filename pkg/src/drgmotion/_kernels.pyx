# cython: language_level=3
"""Compiled hot loops. Semantics mirror ``_fallback`` exactly."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def min_boundary_exhaustive(long long[:] nbr_masks, int max_size):
    """Minimise |delta(S)|/|S| over 1 <= |S| <= max_size by Gray-code walk.

    Ties go to the numerically smallest mask. Returns (delta, size, mask).
    """
    cdef int n = nbr_masks.shape[0]
    cdef unsigned long long total = 1ULL << n
    cdef unsigned long long g, mask = 0, best_mask = 0
    cdef long long delta = 0, best_delta = -1
    cdef int size = 0, best_size = 0, v, deg
    cdef long long lhs, rhs
    cdef unsigned long long nb
    with nogil:
        for g in range(1, total):
            v = __builtin_ctzll(g)
            nb = <unsigned long long> nbr_masks[v]
            deg = __builtin_popcountll(nb)
            if (mask >> v) & 1ULL:
                mask ^= (1ULL << v)
                delta -= deg - 2 * __builtin_popcountll(nb & mask)
                size -= 1
            else:
                delta += deg - 2 * __builtin_popcountll(nb & mask)
                mask |= (1ULL << v)
                size += 1
            if size < 1 or size > max_size:
                continue
            if best_delta < 0:
                best_delta, best_size, best_mask = delta, size, mask
                continue
            lhs = delta * best_size
            rhs = best_delta * size
            if lhs < rhs or (lhs == rhs and mask < best_mask):
                best_delta, best_size, best_mask = delta, size, mask
    return int(best_delta), int(best_size), int(best_mask)


def boundary_sizes(const unsigned char[:, :] subsets, const int[:] indptr, const int[:] indices):
    """|delta(S)| for each row of a 0/1 membership matrix (CSR adjacency)."""
    cdef Py_ssize_t m = subsets.shape[0], n = subsets.shape[1]
    out = np.zeros(m, dtype=np.int64)
    cdef long long[:] res = out
    cdef Py_ssize_t r, v, j
    cdef long long cnt
    with nogil:
        for r in range(m):
            cnt = 0
            for v in range(n):
                if subsets[r, v]:
                    for j in range(indptr[v], indptr[v + 1]):
                        if not subsets[r, indices[j]]:
                            cnt += 1
            res[r] = cnt
    return out


def edge_geodesic_loads(const int[:, :] dist, const long long[:, :] paths,
                        const long long[:, :] scale, const int[:] tails, const int[:] heads):
    """Scaled geodesic load through each directed edge (z, w).

    load = sum over (x, y) with dist[x,z] + 1 + dist[w,y] == dist[x,y] of
    paths[x,z] * paths[w,y] * scale[x,y].
    """
    cdef Py_ssize_t n = dist.shape[0], m = tails.shape[0]
    out = np.zeros(m, dtype=np.int64)
    cdef long long[:] res = out
    cdef Py_ssize_t e, x, y
    cdef int z, w, dxz
    cdef long long acc, pxz
    with nogil:
        for e in range(m):
            z = tails[e]
            w = heads[e]
            acc = 0
            for x in range(n):
                dxz = dist[x, z]
                pxz = paths[x, z]
                for y in range(n):
                    if dxz + 1 + dist[w, y] == dist[x, y]:
                        acc += pxz * paths[w, y] * scale[x, y]
            res[e] = acc
    return out


cdef void _apply(int n, const int[:, :] D, unsigned char* cand, int* count, int v, int w) nogil:
    cdef int u, x, dv
    cdef unsigned char* row
    for u in range(n):
        dv = D[v, u]
        row = cand + u * n
        for x in range(n):
            if row[x] and D[w, x] != dv:
                row[x] = 0
                count[u] -= 1


cdef int _search(int n, const int[:, :] D, unsigned char* cand, int* count,
                 unsigned char* assigned, int* perm) nogil:
    cdef int v, w, best, bestc
    cdef unsigned char* c2
    cdef int* k2
    cdef unsigned char* a2
    cdef int found
    while True:
        best = -1
        bestc = n + 1
        for v in range(n):
            if count[v] == 0:
                return 0
            if not assigned[v]:
                if count[v] < bestc:
                    bestc = count[v]
                    best = v
        if best < 0:
            for v in range(n):
                for w in range(n):
                    if cand[v * n + w]:
                        perm[v] = w
                        break
            return 1
        if bestc == 1:
            for w in range(n):
                if cand[best * n + w]:
                    break
            _apply(n, D, cand, count, best, w)
            assigned[best] = 1
            continue
        c2 = <unsigned char*> malloc(n * n)
        k2 = <int*> malloc(n * sizeof(int))
        a2 = <unsigned char*> malloc(n)
        found = 0
        for w in range(n):
            if not cand[best * n + w]:
                continue
            memcpy(c2, cand, n * n)
            memcpy(k2, count, n * sizeof(int))
            memcpy(a2, assigned, n)
            _apply(n, D, c2, k2, best, w)
            a2[best] = 1
            if _search(n, D, c2, k2, a2, perm):
                found = 1
                break
        free(c2)
        free(k2)
        free(a2)
        return found


def extend_automorphism(const int[:, :] D, const int[:] colors, const int[:] src, const int[:] dst):
    """First distance-preserving bijection (in search order) with src -> dst.

    Returns an int32 array or None.
    """
    cdef int n = D.shape[0]
    cdef int i, u, x, ok = 1
    cdef unsigned char* cand = <unsigned char*> malloc(n * n)
    cdef int* count = <int*> malloc(n * sizeof(int))
    cdef unsigned char* assigned = <unsigned char*> malloc(n)
    perm_arr = np.full(n, -1, dtype=np.int32)
    cdef int[:] perm = perm_arr
    cdef int found = 0
    try:
        memset(assigned, 0, n)
        for u in range(n):
            count[u] = 0
            for x in range(n):
                cand[u * n + x] = colors[u] == colors[x]
                count[u] += cand[u * n + x]
        for i in range(src.shape[0]):
            if not cand[src[i] * n + dst[i]]:
                ok = 0
                break
            _apply(n, D, cand, count, src[i], dst[i])
            assigned[src[i]] = 1
        if ok:
            found = _search(n, D, cand, count, assigned, &perm[0])
    finally:
        free(cand)
        free(count)
        free(assigned)
    return perm_arr if found else None
