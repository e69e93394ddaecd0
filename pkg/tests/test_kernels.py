import itertools
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgmotion import _fallback, kernels
from drgmotion import graphs as gr
from drgmotion.config import geodesic_counts

compiled = pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return gr.Graph.from_edges(n, edges)


def connected_random(n, p, seed):
    g = random_graph(n, p, seed)
    extra = [(i, i + 1) for i in range(n - 1)]
    return gr.Graph.from_edges(n, sorted(set(g.edges) | set(extra)))


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
    assert "python" in kernels.BACKENDS


def test_forced_fallback_env():
    code = "import drgmotion.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={"DRGMOTION_PURE_PYTHON": "1", "PATH": ""},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def brute_min_boundary(g, max_size):
    best = None
    for size in range(1, max_size + 1):
        for S in itertools.combinations(range(g.n), size):
            s = set(S)
            cut = sum((u in s) != (v in s) for u, v in g.edges)
            mask = sum(1 << v for v in S)
            if best is None or cut * best[1] < best[0] * size:
                best = (cut, size, mask)
    return best


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.floats(0.1, 0.9), st.integers(0, 10 ** 6))
def test_min_boundary_matches_brute_force(n, p, seed):
    g = random_graph(n, p, seed)
    for impl in kernels.BACKENDS.values():
        delta, size, mask = impl.min_boundary_exhaustive(g.neighbor_masks(), n // 2 or 1)
        want = brute_min_boundary(g, n // 2 or 1)
        assert delta * want[1] == want[0] * size
        S = {v for v in range(n) if mask >> v & 1}
        assert sum((u in S) != (v in S) for u, v in g.edges) == delta and len(S) == size


@compiled
@settings(max_examples=40, deadline=None)
@given(st.integers(2, 14), st.floats(0.1, 0.9), st.integers(0, 10 ** 6))
def test_min_boundary_backends_agree(n, p, seed):
    g = random_graph(n, p, seed)
    a = kernels.BACKENDS["compiled"].min_boundary_exhaustive(g.neighbor_masks(), n // 2 or 1)
    b = _fallback.min_boundary_exhaustive(g.neighbor_masks(), n // 2 or 1)
    assert tuple(a) == tuple(b)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 20), st.floats(0.1, 0.9), st.integers(0, 10 ** 6))
def test_boundary_sizes(n, p, seed):
    g = random_graph(n, p, seed)
    rng = np.random.default_rng(seed)
    subsets = (rng.random((25, n)) < 0.5).astype(np.uint8)
    indptr, indices = g.csr
    want = [sum(bool(s[u]) != bool(s[v]) for u, v in g.edges) for s in subsets]
    for impl in kernels.BACKENDS.values():
        assert list(impl.boundary_sizes(subsets, indptr, indices)) == want


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 12), st.floats(0.2, 0.8), st.integers(0, 10 ** 6))
def test_geodesic_loads_agree(n, p, seed):
    import math

    g = connected_random(n, p, seed)
    D, paths = geodesic_counts(g.adjacency)
    L = math.lcm(*{int(x) for x in paths.ravel()})
    scale = np.array([[L // int(x) for x in row] for row in paths], dtype=np.int64)
    tails, heads = (a.astype(np.int32) for a in np.nonzero(g.adjacency))
    res = [list(map(int, impl.edge_geodesic_loads(np.ascontiguousarray(D), paths.astype(np.int64), scale,
                                                   tails, heads)))
           for impl in kernels.BACKENDS.values()]
    assert all(r == res[0] for r in res)
    # every ordered pair's unit of flow crosses d(x, y) directed edges
    assert sum(res[0]) == L * int(D.sum())


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["petersen", "q3", "c7", "heawood", "random"]), st.integers(0, 10 ** 6))
def test_extend_automorphism_agree(name, seed):
    g = {"petersen": gr.petersen_graph(), "q3": gr.hamming_graph(3, 2), "c7": gr.cycle_graph(7),
         "heawood": gr.heawood_graph(), "random": connected_random(9, 0.4, seed)}[name]
    D = np.ascontiguousarray(g.dist, dtype=np.int32)
    colors = np.zeros(g.n, dtype=np.int32)
    rng = np.random.default_rng(seed)
    src = np.array([0, 1], dtype=np.int32)
    dst = rng.choice(g.n, 2, replace=False).astype(np.int32)
    outs = [impl.extend_automorphism(D, colors, src, dst) for impl in kernels.BACKENDS.values()]
    found = [o is not None for o in outs]
    assert len(set(found)) == 1
    for o in outs:
        if o is not None:
            o = np.asarray(o)
            assert sorted(o.tolist()) == list(range(g.n))
            assert np.array_equal(D[np.ix_(o, o)], D)
            assert o[0] == dst[0] and o[1] == dst[1]
