"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each kernel runs on the same inputs under both backends; outputs are compared
before timings are reported.
"""

import argparse
import math
import time

import numpy as np

from drgmotion import _fallback, kernels
from drgmotion import graphs as gr
from drgmotion.arrays import FamilyTag
from drgmotion.config import geodesic_counts


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    petersen = gr.petersen_graph()
    j63 = gr.build_family(FamilyTag.johnson(6, 3))
    h33 = gr.build_family(FamilyTag.hamming(3, 3))
    coxeter = gr.coxeter_graph()

    g = gr.dodecahedron_graph()
    yield "min_boundary_exhaustive (dodecahedron, n=20)", \
        lambda impl: impl.min_boundary_exhaustive(g.neighbor_masks(), g.n // 2)

    rng = np.random.default_rng(1)
    subsets = (rng.random((20_000, h33.n)) < 0.5).astype(np.uint8)
    indptr, indices = h33.csr
    yield "boundary_sizes (H(3,3), 20000 subsets)", \
        lambda impl: impl.boundary_sizes(subsets, indptr, indices)

    D, paths = geodesic_counts(coxeter.adjacency)
    L = math.lcm(*{int(x) for x in paths.ravel()})
    scale = np.array([[L // int(x) for x in row] for row in paths], dtype=np.int64)
    tails, heads = (a.astype(np.int32) for a in np.nonzero(coxeter.adjacency))
    D32, P64 = np.ascontiguousarray(D), paths.astype(np.int64)
    yield "edge_geodesic_loads (Coxeter, 84 directed edges)", \
        lambda impl: impl.edge_geodesic_loads(D32, P64, scale, tails, heads)

    for name, h in (("Petersen", petersen), ("J(6,3)", j63)):
        Dh = np.ascontiguousarray(h.dist, dtype=np.int32)
        colors = np.zeros(h.n, dtype=np.int32)

        def chain(impl, Dh=Dh, colors=colors, n=h.n):
            # one stabilizer-chain pass: try every image of every point
            found = 0
            for i in range(n):
                fixed = np.arange(i, dtype=np.int32)
                for y in range(i, n):
                    src = np.append(fixed, i).astype(np.int32)
                    dst = np.append(fixed, y).astype(np.int32)
                    found += impl.extend_automorphism(Dh, colors, src, dst) is not None
            return found
        yield f"extend_automorphism chain ({name})", chain


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "compiled" not in kernels.BACKENDS:
        print("compiled extension not available; build it with `pip install -e . --no-build-isolation`")
        return
    compiled = kernels.BACKENDS["compiled"]
    print(f"{'kernel':<52}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for label, fn in cases():
        tp, outp = best_of(lambda: fn(_fallback), args.repeat)
        tc, outc = best_of(lambda: fn(compiled), args.repeat)
        assert same(outp, outc), label
        print(f"{label:<52}{tp:>11.4f}{tc:>12.4f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
