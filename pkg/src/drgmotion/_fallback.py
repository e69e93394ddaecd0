"""Pure-Python / numpy versions of the compiled kernels.

Each function returns exactly what its counterpart in ``_kernels.pyx``
returns, including tie-breaking, so the two backends are interchangeable.
"""

import numpy as np


def min_boundary_exhaustive(nbr_masks, max_size):
    nbr = [int(x) for x in nbr_masks]
    n = len(nbr)
    total = 1 << n
    size = np.zeros(total, dtype=np.int32)
    inside = np.zeros(total, dtype=np.int32)  # edges with both ends in S
    degsum = np.zeros(total, dtype=np.int32)
    for v in range(n):
        lo = 1 << v
        low = np.arange(lo, dtype=np.int64)
        hits = _popcount(low & nbr[v])
        size[lo:2 * lo] = size[:lo] + 1
        inside[lo:2 * lo] = inside[:lo] + hits
        degsum[lo:2 * lo] = degsum[:lo] + bin(nbr[v]).count("1")
    delta = degsum.astype(np.int64) - 2 * inside
    valid = (size >= 1) & (size <= max_size)
    ratio = np.where(valid, delta / np.maximum(size, 1), np.inf)
    i = int(np.argmin(ratio))
    bd, bs = int(delta[i]), int(size[i])
    tie = valid & (delta * bs == bd * size.astype(np.int64))
    mask = int(np.flatnonzero(tie)[0])
    return int(delta[mask]), int(size[mask]), mask


def _popcount(arr):
    arr = arr.astype(np.uint64)
    count = np.zeros(arr.shape, dtype=np.int32)
    while arr.any():
        count += (arr & np.uint64(1)).astype(np.int32)
        arr >>= np.uint64(1)
    return count


def boundary_sizes(subsets, indptr, indices):
    subsets = np.asarray(subsets, dtype=bool)
    n = subsets.shape[1]
    indptr = np.asarray(indptr)
    indices = np.asarray(indices)
    adj = np.zeros((n, n), dtype=np.int64)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    adj[rows, indices] = 1
    s = subsets.astype(np.int64)
    deg = adj.sum(1)
    inside = s @ adj
    return (s * (deg[None, :] - inside)).sum(1)


def edge_geodesic_loads(dist, paths, scale, tails, heads):
    dist = np.asarray(dist)
    paths = np.asarray(paths)
    scale = np.asarray(scale)
    out = np.zeros(len(tails), dtype=paths.dtype if paths.dtype == object else np.int64)
    for e, (z, w) in enumerate(zip(tails, heads)):
        hit = dist[:, z][:, None] + 1 + dist[w, :][None, :] == dist
        contrib = paths[:, z][:, None] * paths[w, :][None, :] * scale
        out[e] = contrib[hit].sum()
    return out


def extend_automorphism(D, colors, src, dst):
    D = np.asarray(D)
    n = D.shape[0]
    colors = np.asarray(colors)
    cand = colors[:, None] == colors[None, :]
    assigned = np.zeros(n, dtype=bool)
    for s, t in zip(src, dst):
        if not cand[s, t]:
            return None
        cand &= D[s][:, None] == D[t][None, :]
        assigned[s] = True
    return _search(D, cand, assigned)


def _search(D, cand, assigned):
    while True:
        count = cand.sum(1)
        if (count == 0).any():
            return None
        free_rows = np.flatnonzero(~assigned)
        if free_rows.size == 0:
            return np.argmax(cand, axis=1).astype(np.int32)
        best = int(free_rows[np.argmin(count[free_rows])])
        options = np.flatnonzero(cand[best])
        if options.size == 1:
            cand &= D[best][:, None] == D[int(options[0])][None, :]
            assigned[best] = True
            continue
        for w in options:
            c2 = cand & (D[best][:, None] == D[int(w)][None, :])
            a2 = assigned.copy()
            a2[best] = True
            perm = _search(D, c2, a2)
            if perm is not None:
                return perm
        return None
