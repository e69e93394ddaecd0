"""Automorphism groups of small graphs, exact motion, and base construction by
halving and splitting sets."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import (
    CapExceeded,
    DiameterTooSmall,
    HypothesisNotMet,
    NotEdgeTransitive,
    NotPrimitive,
    TrivialGroup,
    ZeroFraction,
)
from .graphs import Graph, distance_i_graph, is_primitive

DEFAULT_CAP = 10_000_000
FULL_SCAN_LIMIT = 100_000
SAMPLE_SIZE = 10_000


# -- stabilizer chain ------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerChain:
    """Level i: transversal of Aut fixing 0..i-1 acting on the point i.

    ``transversals[i]`` maps each image y of point i to a permutation
    (int32 array) sending i to y and fixing 0..i-1.
    """

    n: int
    transversals: tuple[dict, ...]

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def generators(self) -> list[np.ndarray]:
        ident = np.arange(self.n)
        return [p for t in self.transversals for p in t.values() if not np.array_equal(p, ident)]


def _dist32(g: Graph) -> np.ndarray:
    return np.ascontiguousarray(g.dist, dtype=np.int32)


def stabilizer_chain(g: Graph) -> StabilizerChain:
    D = _dist32(g)
    n = g.n
    colors = np.zeros(n, dtype=np.int32)
    levels = []
    for i in range(n):
        fixed = np.arange(i, dtype=np.int32)
        trans = {}
        for y in range(i, n):
            src = np.append(fixed, i).astype(np.int32)
            dst = np.append(fixed, y).astype(np.int32)
            perm = kernels.extend_automorphism(D, colors, src, dst)
            if perm is not None:
                trans[y] = np.asarray(perm, dtype=np.int32)
        levels.append(trans)
    return StabilizerChain(n, tuple(levels))


# -- enumerated groups -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PermGroup:
    """All elements as rows of an (order, n) int32 array, lexicographically
    sorted so row 0 is the identity."""

    n: int
    elements: np.ndarray
    generators: tuple = field(default=(), repr=False)

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    def stabilizer_mask(self, points) -> np.ndarray:
        pts = np.asarray(sorted(points), dtype=np.int64)
        if pts.size == 0:
            return np.ones(self.order, dtype=bool)
        return (self.elements[:, pts] == pts[None, :]).all(1)

    def pointwise_stabilizer(self, points) -> np.ndarray:
        return self.elements[self.stabilizer_mask(points)]


def enumerate_chain(chain: StabilizerChain, cap: int = DEFAULT_CAP) -> PermGroup:
    if chain.order > cap:
        raise CapExceeded(f"group order {chain.order} exceeds cap {cap}")
    elems = np.arange(chain.n, dtype=np.int32)[None, :]
    for trans in reversed(chain.transversals):
        if len(trans) == 1:
            continue
        elems = np.concatenate([t[elems] for _, t in sorted(trans.items())])
    order = np.lexsort(elems.T[::-1])
    return PermGroup(chain.n, np.ascontiguousarray(elems[order]), tuple(chain.generators()))


def automorphisms(g: Graph, cap: int = DEFAULT_CAP) -> PermGroup:
    """Full automorphism group; CapExceeded is raised before enumeration."""
    return enumerate_chain(stabilizer_chain(g), cap)


def motion_exact(group: PermGroup) -> tuple[int, np.ndarray]:
    """Minimal support of a nonidentity element, with the first such element."""
    if group.order < 2:
        raise TrivialGroup("the group is trivial")
    supports = (group.elements != np.arange(group.n)[None, :]).sum(1)
    supports[0] = group.n + 1
    i = int(np.argmin(supports))
    return int(supports[i]), group.elements[i].copy()


def motion_search(g: Graph, chain: StabilizerChain | None = None) -> tuple[int, np.ndarray]:
    """Exact motion without enumerating the group.

    A minimal-support element fixes 0..x-1 and moves x for some x. For each x
    the image y only needs one representative per orbit of the stabilizer of
    0..x; the remaining points are then fixed greedily with backtracking,
    bounded by the best fixed-point count found so far.
    """
    D = _dist32(g)
    n = g.n
    chain = chain or stabilizer_chain(g)
    if chain.order < 2:
        raise TrivialGroup("the group is trivial")
    colors = np.zeros(n, dtype=np.int32)
    best_fix, best_perm = -1, None

    def extend(src, dst):
        return kernels.extend_automorphism(D, colors, np.array(src, dtype=np.int32), np.array(dst, dtype=np.int32))

    def dfs(v, src, dst, committed, perm):
        nonlocal best_fix, best_perm
        fix = int((perm == np.arange(n)).sum())
        if fix > best_fix:
            best_fix, best_perm = fix, np.asarray(perm)
        for u in range(v, n):
            # branch: u fixed
            nxt = perm if perm[u] == u else extend(src + [u], dst + [u])
            if nxt is not None:
                dfs(u + 1, src + [u], dst + [u], committed + 1, nxt)
            # branch: u moved, so at most committed + (n - u - 1) fixed points
            if committed + (n - u - 1) <= best_fix:
                return

    for x in range(n):
        if x + (n - x - 2) <= best_fix:
            break
        if len(chain.transversals[x]) < 2:
            continue
        deeper = [p for t in chain.transversals[x + 1:] for p in t.values()]
        reps = _orbit_representatives(n, deeper)
        fixed = list(range(x))
        for y in sorted(chain.transversals[x]):
            if y == x or reps[y] != y:
                continue
            perm = extend(fixed + [x], fixed + [y])
            if perm is not None:
                dfs(x + 1, fixed + [x], fixed + [y], x, perm)
    return n - best_fix, best_perm


def _orbit_representatives(n: int, gens) -> np.ndarray:
    """Smallest point of each orbit of the group generated by ``gens``."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in gens:
        for v in range(n):
            a, b = find(v), find(int(p[v]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return np.array([find(v) for v in range(n)])


def graph_motion(g: Graph, cap: int = 1_000_000) -> int:
    """Exact motion: full scan when the group is small, search otherwise."""
    chain = stabilizer_chain(g)
    if chain.order <= cap:
        return motion_exact(enumerate_chain(chain, cap))[0]
    return motion_search(g, chain)[0]


# -- orbits and splitting --------------------------------------------------------

def orbits_of(elements: np.ndarray, n: int) -> list[tuple[int, ...]]:
    """Orbits of a set of permutations forming a group, sorted by least point."""
    seen = np.zeros(n, dtype=bool)
    out = []
    for v in range(n):
        if not seen[v]:
            orb = np.unique(elements[:, v])
            seen[orb] = True
            out.append(tuple(orb.tolist()))
    return out


def stabilizer_orbits(group: PermGroup, points) -> list[tuple[int, ...]]:
    return orbits_of(group.pointwise_stabilizer(points), group.n)


def find_halving_set(group: PermGroup) -> tuple[int, ...]:
    """Greedy: add the least point of the largest orbit until all orbits are <= n/2."""
    sigma: list[int] = []
    while True:
        orbs = stabilizer_orbits(group, sigma)
        big = max(orbs, key=lambda o: (len(o), -o[0]))
        if 2 * len(big) <= group.n:
            return tuple(sigma)
        sigma.append(big[0])


def _orbit_labels(group: PermGroup, points) -> np.ndarray:
    lab = np.empty(group.n, dtype=np.int64)
    for i, orb in enumerate(stabilizer_orbits(group, points)):
        lab[list(orb)] = i
    return lab


def split_edges(graph: Graph, group: PermGroup, points) -> np.ndarray:
    """Boolean mask over ``graph.edges``: endpoints in different H_points orbits."""
    if graph.m == 0:
        return np.zeros(0, dtype=bool)
    lab = _orbit_labels(group, points)
    e = np.array(graph.edges)
    return lab[e[:, 0]] != lab[e[:, 1]]


def split_fraction(graph: Graph, group: PermGroup, points) -> Fraction:
    mask = split_edges(graph, group, points)
    return Fraction(int(mask.sum()), graph.m)


def _edge_images(graph: Graph, elements: np.ndarray) -> np.ndarray:
    """Edge index of the image of every edge under every element: (|H|, m)."""
    n = graph.n
    e = np.array(graph.edges)
    index = np.full(n * n, -1, dtype=np.int64)
    index[e[:, 0] * n + e[:, 1]] = np.arange(len(e))
    index[e[:, 1] * n + e[:, 0]] = np.arange(len(e))
    u = elements[:, e[:, 0]].astype(np.int64)
    v = elements[:, e[:, 1]].astype(np.int64)
    return index[u * n + v]


def is_edge_transitive(graph: Graph, group: PermGroup) -> bool:
    if graph.m == 0:
        return True
    imgs = _edge_images(graph, group.elements)
    if (imgs < 0).any():
        raise NotEdgeTransitive("group elements do not preserve the edge set")
    return np.unique(imgs[:, 0]).size == graph.m


@dataclass(frozen=True)
class SplitResult:
    delta: tuple[int, ...]
    c: Fraction
    rounds: int
    round_bound: int  # ceil(-log q / log(1 - c)), at least 1
    newly_split: tuple[int, ...]  # per round, edges split by the chosen translate alone
    translates: tuple[int, ...]  # element indices chosen
    full_scan: bool

    @property
    def within_bound(self) -> bool:
        return self.rounds <= self.round_bound


def round_bound(q: int, c: Fraction) -> int:
    if c >= 1:
        return 1
    return max(1, math.ceil(-math.log(q) / math.log(1 - float(c))))


def splitting_set(graph: Graph, group: PermGroup, sigma, seed: int = 1,
                  full_scan_limit: int = FULL_SCAN_LIMIT, sample: int = SAMPLE_SIZE) -> SplitResult:
    """Union of H-translates of sigma splitting every edge.

    Each round picks the translate h(sigma) that alone splits the most still
    unsplit edges (first in element order on ties); the set of edges split by
    h(sigma) is the h-image of those split by sigma.
    """
    sigma = tuple(sorted(sigma))
    if not is_edge_transitive(graph, group):
        raise NotEdgeTransitive(f"{graph!r}: group is not edge-transitive")
    base_mask = split_edges(graph, group, sigma)
    c = Fraction(int(base_mask.sum()), graph.m)
    if c == 0:
        raise ZeroFraction(f"{sigma} splits no edge")
    full = group.order <= full_scan_limit
    if full:
        cand = np.arange(group.order)
    else:
        rng = np.random.default_rng(seed)
        cand = np.sort(rng.choice(group.order, size=min(sample, group.order), replace=False))
    imgs = _edge_images(graph, group.elements[cand])
    base_edges = np.flatnonzero(base_mask)
    covers = np.zeros((len(cand), graph.m), dtype=bool)
    rows = np.repeat(np.arange(len(cand)), len(base_edges))
    covers[rows, imgs[:, base_edges].ravel()] = True

    remaining = np.ones(graph.m, dtype=bool)
    delta: set[int] = set()
    newly, chosen = [], []
    while remaining.any():
        gain = (covers & remaining[None, :]).sum(1)
        i = int(np.argmax(gain))
        if gain[i] == 0:
            raise ZeroFraction("no translate splits a remaining edge")
        h = group.elements[cand[i]]
        delta.update(int(h[s]) for s in sigma)
        newly.append(int(gain[i]))
        chosen.append(int(cand[i]))
        remaining &= ~split_edges(graph, group, delta)
    return SplitResult(tuple(sorted(delta)), c, len(chosen), round_bound(graph.m, c),
                       tuple(newly), tuple(chosen), full)


def verify_pyb_trick(graph: Graph, group: PermGroup, sigma) -> bool:
    """If sigma splits every edge of G and G_2, its pointwise stabilizer is trivial."""
    g2 = Graph.from_adjacency(graph.dist == 2)
    unsplit = []
    for tag, h in (("G", graph), ("G2", g2)):
        mask = split_edges(h, group, sigma)
        unsplit += [(tag, h.edges[i]) for i in np.flatnonzero(~mask)]
    if unsplit:
        raise HypothesisNotMet(f"{len(unsplit)} edges are not split", unsplit=unsplit)
    return group.stabilizer_mask(sigma).sum() == 1


def is_base(group: PermGroup, points) -> bool:
    return int(group.stabilizer_mask(points).sum()) == 1


def minimum_base(group: PermGroup, max_size: int | None = None) -> tuple[int, ...]:
    """Lexicographically first base of least size, by exhaustive search."""
    max_size = group.n if max_size is None else max_size
    for size in range(0, max_size + 1):
        for pts in itertools.combinations(range(group.n), size):
            if is_base(group, pts):
                return pts
    raise CapExceeded(f"no base of size <= {max_size}")


@dataclass(frozen=True)
class BaseResult:
    base: tuple[int, ...]
    halving: tuple[int, ...]
    split: SplitResult
    split2: SplitResult
    trace: tuple[dict, ...]
    group_order: int

    @property
    def size(self) -> int:
        return len(self.base)


def base_via_splitting(graph: Graph, group: PermGroup | None = None, cap: int = DEFAULT_CAP,
                       seed: int = 1, check_primitive: bool = True, check_diameter: bool = True) -> BaseResult:
    """Halving set, then splitting sets for G and G_2, whose union is a base."""
    d = graph.diameter
    if check_diameter and d <= 2:
        raise DiameterTooSmall(f"diameter {d} <= 2")
    if check_primitive and not is_primitive(graph):
        raise NotPrimitive(f"{graph!r} is not primitive")
    group = group if group is not None else automorphisms(graph, cap)
    g2 = distance_i_graph(graph, 2)
    trace = [{"step": "group", "order": group.order}]
    for tag, h in (("G", graph), ("G2", g2)):
        if not is_edge_transitive(h, group):
            raise NotEdgeTransitive(f"Aut is not edge-transitive on {tag}")
    trace.append({"step": "edge_transitive", "G": True, "G2": True})

    sigma = find_halving_set(group)
    orbs = stabilizer_orbits(group, sigma)
    trace.append({"step": "halving_set", "sigma": list(sigma), "max_orbit": max(len(o) for o in orbs)})

    counts = {}
    for tag, h in (("G", graph), ("G2", g2)):
        k = int(h.degrees[0])
        split = int(split_edges(h, group, sigma).sum())
        # each orbit S has at least k|S|/(2d) boundary edges; edges counted at most twice
        expected = Fraction(k * h.n, 4 * d)
        counts[tag] = split
        trace.append({"step": "expansion_count", "graph": tag, "split": split, "edges": h.m,
                      "lower": str(expected), "holds": split >= expected})

    res = splitting_set(graph, group, sigma, seed=seed)
    res2 = splitting_set(g2, group, sigma, seed=seed)
    for tag, r in (("G", res), ("G2", res2)):
        trace.append({"step": "splitting_set", "graph": tag, "c": str(r.c), "rounds": r.rounds,
                      "round_bound": r.round_bound, "delta": list(r.delta), "full_scan": r.full_scan})
    base = tuple(sorted(set(res.delta) | set(res2.delta)))
    trivial = verify_pyb_trick(graph, group, base)
    trace.append({"step": "pyb_trick", "base": list(base), "trivial_stabilizer": bool(trivial)})
    return BaseResult(base, sigma, res, res2, tuple(trace), group.order)
