"""Coherent configurations of distance-regular graphs: coherence checks,
geodesic weights, edge expansion and D_min."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from . import kernels
from .arrays import IntersectionArray, derive, detect_imprimitivity
from .errors import BoundViolation, CoherenceViolation, InvarianceViolation, NotPrimitive, TooLarge
from .graphs import Graph

EXHAUSTIVE_MAX_N = 20


def _relation_diameter(adj: np.ndarray) -> int | None:
    """Diameter of a relation viewed as a digraph; None when not strongly connected."""
    D = shortest_path(csr_matrix(adj.astype(np.int8)), unweighted=True, directed=True)
    if np.isinf(D).any():
        return None
    return int(D.max())


@dataclass(frozen=True, eq=False)
class CoherentConfiguration:
    """Partition of V x V given by an n x n matrix of relation indices.

    Relation 0 is the diagonal. ``numbers[R, S, T]`` is the count of w with
    (u, w) in S and (w, v) in T for any (u, v) in R.
    """

    relmat: np.ndarray
    numbers: np.ndarray
    transpose: tuple[int, ...]
    valencies: tuple[int, ...]
    diameters: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return self.relmat.shape[0]

    @property
    def rank(self) -> int:
        return len(self.valencies)

    def relation(self, r: int) -> np.ndarray:
        return self.relmat == r

    @property
    def is_primitive(self) -> bool:
        return all(dm is not None for dm in self.diameters[1:])

    @property
    def k_max(self) -> int:
        return max(self.valencies[1:]) if self.rank > 1 else 0

    def c(self, R: int, S: int, T: int) -> int:
        return int(self.numbers[R, S, T])

    @classmethod
    def from_partition(cls, relmat) -> "CoherentConfiguration":
        """Verify the axioms and tabulate intersection numbers.

        Labels are renumbered so the diagonal is 0 and the rest keep their
        sorted order.
        """
        relmat = np.asarray(relmat)
        n = relmat.shape[0]
        diag = np.unique(np.diagonal(relmat))
        if diag.size != 1 or (relmat == diag[0]).sum() != n:
            raise CoherenceViolation("the diagonal is not a relation", witness=None)
        order = [diag[0]] + [x for x in np.unique(relmat).tolist() if x != diag[0]]
        lookup = {lab: i for i, lab in enumerate(order)}
        rel = np.vectorize(lookup.__getitem__, otypes=[np.int32])(relmat) if n else relmat.astype(np.int32)
        rank = len(order)
        mats = [(rel == r).astype(np.int64) for r in range(rank)]

        transpose = []
        for r in range(rank):
            t = rel.T[mats[r].astype(bool)]
            if np.unique(t).size != 1 or (rel == t[0]).sum() != mats[r].sum():
                raise CoherenceViolation(f"transpose of relation {r} is not a relation", witness=(r,))
            transpose.append(int(t[0]))

        numbers = np.zeros((rank, rank, rank), dtype=np.int64)
        first = [tuple(int(v) for v in np.argwhere(m)[0]) for m in mats]
        for S in range(rank):
            for T in range(rank):
                M = mats[S] @ mats[T]
                for R in range(rank):
                    vals = M[mats[R].astype(bool)]
                    bad = np.flatnonzero(vals != vals[0])
                    if bad.size:
                        pairs = np.argwhere(mats[R])
                        p1 = tuple(int(v) for v in pairs[bad[0]])
                        raise CoherenceViolation(
                            f"c[{R},{S},{T}] takes values {vals[0]} at {first[R]} and {vals[bad[0]]} at {p1}",
                            witness=(R, S, T, first[R], p1),
                        )
                    numbers[R, S, T] = vals[0]
        valencies = tuple(int(m[0].sum()) for m in mats)
        diameters = (0,) + tuple(_relation_diameter(mats[r].astype(bool)) for r in range(1, rank))
        return cls(rel, numbers, tuple(transpose), valencies, diameters)

    @classmethod
    def from_drg(cls, g: Graph, array: IntersectionArray | None = None) -> "CoherentConfiguration":
        """Distance classes X_0..X_d; relation i is "at distance i"."""
        cfg = cls.from_partition(g.dist)
        if array is not None:
            p = derive(array)
            if cfg.valencies != tuple(p.k_i):
                raise CoherenceViolation(f"valencies {cfg.valencies} disagree with {array}", witness=None)
        return cfg


def path_counts(cfg: CoherentConfiguration, shape) -> np.ndarray:
    """Number of walks u = v_1, ..., v_m = w with (v_i, v_{i+1}) in shape[i-1]."""
    M = np.eye(cfg.n, dtype=np.int64)
    for r in shape:
        M = M @ cfg.relation(r).astype(np.int64)
    return M


def verify_paths(cfg: CoherentConfiguration, max_points: int = 4) -> int:
    """Check that every path count is constant on every relation.

    Returns the number of (shape, relation) pairs checked.
    """
    checked = 0
    for length in range(1, max_points):
        for shape in itertools.product(range(cfg.rank), repeat=length):
            M = path_counts(cfg, shape)
            for R in range(cfg.rank):
                vals = M[cfg.relation(R)]
                if (vals != vals[0]).any():
                    raise CoherenceViolation(f"path shape {shape} not constant on relation {R}",
                                             witness=(R, shape))
                checked += 1
    return checked


# -- geodesic weight ----------------------------------------------------------------

@dataclass(frozen=True)
class GeodesicWeight:
    relation: int
    P: Fraction
    triple_counts: dict = field(repr=False)  # (R, S, T) -> count for the first edge
    distance_sum: int
    nk: int


def geodesic_counts(adj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(distances, number of geodesics) for a connected graph, exact integers."""
    n = adj.shape[0]
    D = shortest_path(csr_matrix(adj.astype(np.int8)), unweighted=True, directed=False)
    if np.isinf(D).any():
        raise InvarianceViolation("relation graph is not connected")
    D = D.astype(np.int32)
    A = adj.astype(object)
    paths = np.eye(n, dtype=object)
    for j in range(1, int(D.max()) + 1):
        prev = np.where(D == j - 1, paths, 0)
        paths = np.where(D == j, prev.dot(A), paths)
    return D, paths


def geodesic_weight(cfg: CoherentConfiguration, relation: int = 1) -> GeodesicWeight:
    adj = cfg.relation(relation)
    if not np.array_equal(adj, adj.T):
        raise InvarianceViolation(f"relation {relation} is not symmetric")
    n = cfg.n
    D, paths = geodesic_counts(adj)
    L = math.lcm(*{int(x) for x in paths.ravel()})
    scale = np.vectorize(lambda p: L // int(p), otypes=[object])(paths)
    tails, heads = (a.astype(np.int32) for a in np.nonzero(adj))
    if n * n * L < 2 ** 62:
        loads = kernels.edge_geodesic_loads(
            np.ascontiguousarray(D), paths.astype(np.int64), scale.astype(np.int64), tails, heads
        )
        loads = [int(x) for x in loads]
    else:
        from . import _fallback

        loads = list(_fallback.edge_geodesic_loads(D, paths, scale, tails, heads))
    per_edge = [Fraction(x, L) for x in loads]
    bad = [i for i, x in enumerate(per_edge) if x != per_edge[0]]
    if bad:
        e0 = (int(tails[0]), int(heads[0]))
        e1 = (int(tails[bad[0]]), int(heads[bad[0]]))
        raise InvarianceViolation(f"P = {per_edge[0]} on {e0} but {per_edge[bad[0]]} on {e1}")
    P = per_edge[0]
    nk = int(adj.sum())
    total = int(D.sum())
    if nk * P != total:
        raise InvarianceViolation(f"nk P = {nk * P} differs from the distance sum {total}")

    z, w = int(tails[0]), int(heads[0])
    rel = cfg.relmat
    on_path = (D[:, z][:, None] + 1 + D[w, :][None, :]) == D
    triples: dict = {}
    for x, y in zip(*np.nonzero(on_path)):
        key = (int(rel[x, z]), int(rel[w, y]), int(rel[x, y]))
        triples[key] = triples.get(key, 0) + 1
    return GeodesicWeight(relation, P, dict(sorted(triples.items())), total, nk)


# -- expansion ------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionResult:
    ratio: Fraction
    witness: tuple[int, ...]
    bound: Fraction  # k / (2 d)
    checked: int
    mode: str


def _relation_graph(cfg_or_graph, relation: int):
    if isinstance(cfg_or_graph, Graph):
        if relation != 1:
            return Graph.from_adjacency(cfg_or_graph.dist == relation)
        return cfg_or_graph
    return Graph.from_adjacency(cfg_or_graph.relation(relation))


def expansion_check(cfg, relation: int = 1, mode: str = "exhaustive", seed: int = 1,
                    samples: int = 100_000) -> ExpansionResult:
    """Minimum of |boundary(S)|/|S| over nonempty S with |S| <= n/2.

    ``mode`` is "exhaustive" (n <= 20) or "sampled" (BFS balls, half-layers
    and uniform subsets from a seeded generator).
    """
    g = _relation_graph(cfg, relation)
    n = g.n
    k = int(g.degrees[0])
    if not g.is_connected:
        raise BoundViolation("relation graph is not connected", witness=None)
    bound = Fraction(k, 2 * g.diameter)
    if mode == "exhaustive":
        if n > EXHAUSTIVE_MAX_N:
            raise TooLarge(f"exhaustive expansion needs n <= {EXHAUSTIVE_MAX_N}, got {n}")
        delta, size, mask = kernels.min_boundary_exhaustive(g.neighbor_masks(), n // 2)
        ratio = Fraction(int(delta), int(size))
        witness = tuple(v for v in range(n) if mask >> v & 1)
        checked = sum(math.comb(n, s) for s in range(1, n // 2 + 1))
    elif mode == "sampled":
        subsets = _sample_subsets(g, seed, samples)
        indptr, indices = g.csr
        best = None
        for start in range(0, len(subsets), 10_000):
            chunk = np.ascontiguousarray(subsets[start:start + 10_000])
            deltas = kernels.boundary_sizes(chunk, indptr, indices)
            sizes = chunk.sum(1)
            r = deltas / sizes
            i = int(np.argmin(r))
            cand = (Fraction(int(deltas[i]), int(sizes[i])), start + i)
            if best is None or cand[0] < best[0]:
                best = cand
        ratio = best[0]
        witness = tuple(np.flatnonzero(subsets[best[1]]).tolist())
        checked = len(subsets)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if ratio < bound:
        raise BoundViolation(f"|delta(S)|/|S| = {ratio} < k/(2d) = {bound}", witness=witness)
    return ExpansionResult(ratio, witness, bound, checked, mode)


def _sample_subsets(g: Graph, seed: int, count: int) -> np.ndarray:
    """Adversarial candidates first (balls, ball plus half a layer), then uniform."""
    n, half = g.n, g.n // 2
    rows = []
    D = g.dist
    for v in range(n):
        order = np.argsort(D[v], kind="stable")
        for r in range(int(D[v].max()) + 1):
            ball = D[v] <= r
            if ball.sum() <= half:
                rows.append(ball.copy())
            layer = order[(D[v][order] == r + 1)]
            extra = layer[: len(layer) // 2]
            hl = ball.copy()
            hl[extra] = True
            if 0 < hl.sum() <= half:
                rows.append(hl)
        for size in range(1, half + 1):
            row = np.zeros(n, dtype=bool)
            row[order[:size]] = True
            rows.append(row)
    rng = np.random.default_rng(seed)
    need = max(count - len(rows), 0)
    sizes = rng.integers(1, half + 1, size=need)
    keys = rng.random((need, n))
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    uniform = ranks < sizes[:, None]
    out = np.vstack([np.array(rows, dtype=bool).reshape(-1, n), uniform])[: max(count, len(rows))]
    return out.astype(np.uint8)


# -- D_min ----------------------------------------------------------------------------

def d_min(cfg: CoherentConfiguration) -> tuple[int, tuple[int, int]]:
    """min over x != y of |{z : r(x,z) != r(y,z)}|, lexicographically first witness."""
    rel = cfg.relmat
    n = cfg.n
    best, witness = None, None
    for x in range(n):
        counts = (rel[x][None, :] != rel).sum(1)
        counts[x] = n + 1
        y = int(np.argmin(counts))
        if best is None or counts[y] < best:
            best, witness = int(counts[y]), (x, y)
    return best, witness


def d_min_lower_bounds(array: IntersectionArray, cfg: CoherentConfiguration | None = None,
                       check_primitive: bool = True) -> dict:
    """{"dmin_bound": (n - k_max)/d, "bandc_bound": eps n / d} as Fractions.

    With a configuration, d in the first bound is the largest relation
    diameter; otherwise the graph diameter stands in for it.
    """
    p = derive(array)
    if check_primitive:
        primitive = cfg.is_primitive if cfg is not None else detect_imprimitivity(array).primitive
        if not primitive:
            raise NotPrimitive(f"{array} is not primitive")
    if cfg is not None and all(dm is not None for dm in cfg.diameters[1:]):
        rel_d = max(cfg.diameters[1:])
    else:
        rel_d = array.d
    dmin_bound = Fraction(p.n - p.k_max, rel_d)
    eps = max((Fraction(min(array.b_at(j), array.c_at(j + 1)), p.k) for j in range(1, array.d)), default=None)
    bandc = eps * p.n / array.d if eps is not None else None
    return {"dmin_bound": dmin_bound, "bandc_bound": bandc, "epsilon": eps, "relation_diameter": rel_d}
