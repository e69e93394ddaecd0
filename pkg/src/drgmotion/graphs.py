"""Explicit graphs: family generators, distance-regularity checks, distance-i
graphs, Delsarte clique geometries, and halved / folded graphs."""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .arrays import FamilyTag, IntersectionArray, derive, validate
from .errors import (
    CliqueSearchExhausted,
    GraphFormatError,
    HypothesisFails,
    IndexOutOfRange,
    NoGeometry,
    NotAntipodal,
    NotBipartite,
    NotConnected,
    NotDistanceRegular,
    TooLarge,
)
from .spectrum import Spectrum, delsarte_bound

DEFAULT_MAX_VERTICES = 10_000
UNREACHABLE = -1


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``edges`` holds sorted pairs (u, v) with u < v, in increasing order.
    Derived structures (adjacency, distances) are computed lazily and cached.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple | None = None
    tag: FamilyTag | None = None
    name: str | None = None

    @classmethod
    def from_edges(cls, n, edges, labels=None, tag=None, name=None) -> "Graph":
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) outside 0..{n - 1}")
            norm.add((min(u, v), max(u, v)))
        if labels is not None and len(labels) != n:
            raise GraphFormatError(f"{len(labels)} labels for {n} vertices")
        return cls(n, tuple(sorted(norm)), tuple(labels) if labels is not None else None, tag, name)

    @classmethod
    def from_adjacency(cls, adj, **kw) -> "Graph":
        adj = np.asarray(adj, dtype=bool)
        us, vs = np.nonzero(np.triu(adj, 1))
        return cls.from_edges(adj.shape[0], zip(us.tolist(), vs.tolist()), **kw)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        label = self.name or (str(self.tag) if self.tag else "Graph")
        return f"<{label}: n={self.n}, m={len(self.edges)}>"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            e = np.array(self.edges)
            A[e[:, 0], e[:, 1]] = True
            A[e[:, 1], e[:, 0]] = True
        return A

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(np.flatnonzero(row).tolist()) for row in self.adjacency)

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(1)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) as int32 arrays."""
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        indptr[1:] = np.cumsum(self.degrees)
        indices = np.array([v for nb in self.neighbors for v in nb], dtype=np.int32)
        return indptr, indices

    @cached_property
    def dist(self) -> np.ndarray:
        """All-pairs distances as int32, ``UNREACHABLE`` (-1) between components."""
        if self.n == 0:
            return np.zeros((0, 0), dtype=np.int32)
        D = shortest_path(csr_matrix(self.adjacency.astype(np.int8)), unweighted=True, directed=False)
        D[np.isinf(D)] = UNREACHABLE
        return D.astype(np.int32)

    @cached_property
    def is_connected(self) -> bool:
        return self.n > 0 and bool((self.dist[0] >= 0).all())

    @cached_property
    def diameter(self) -> int:
        if not self.is_connected:
            raise NotConnected(f"{self!r} is not connected")
        return int(self.dist.max())

    def neighbor_masks(self) -> np.ndarray:
        """Bitmask of each neighborhood (n <= 63)."""
        if self.n > 63:
            raise TooLarge("bitmask form needs n <= 63")
        return np.array([sum(1 << v for v in nb) for nb in self.neighbors], dtype=np.int64)

    def induced(self, vertices) -> "Graph":
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vertices), edges, labels=tuple(vertices))


def _components(adj: np.ndarray) -> tuple[int, np.ndarray]:
    count, lab = connected_components(csr_matrix(adj.astype(np.int8)), directed=False)
    return count, lab


# -- constructions ---------------------------------------------------------------

def johnson_graph(s: int, d: int) -> Graph:
    verts = list(itertools.combinations(range(1, s + 1), d))
    sets = [set(v) for v in verts]
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2)
             if len(sets[i] & sets[j]) == d - 1]
    return Graph.from_edges(len(verts), edges, labels=verts)


def hamming_graph(d: int, s: int) -> Graph:
    verts = list(itertools.product(range(1, s + 1), repeat=d))
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        for pos in range(d):
            for sym in range(v[pos] + 1, s + 1):
                w = v[:pos] + (sym,) + v[pos + 1:]
                edges.append((i, index[w]))
    return Graph.from_edges(len(verts), edges, labels=verts)


def crown_graph(m: int) -> Graph:
    """K_{m,m} minus the perfect matching i -- m+i."""
    edges = [(i, m + j) for i in range(m) for j in range(m) if i != j]
    labels = [(0, i) for i in range(m)] + [(1, i) for i in range(m)]
    return Graph.from_edges(2 * m, edges, labels=labels)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2), name=f"K{n}")


def kneser_graph(s: int, r: int) -> Graph:
    """r-subsets of {1..s}, adjacent when disjoint."""
    verts = list(itertools.combinations(range(1, s + 1), r))
    sets = [set(v) for v in verts]
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2) if not sets[i] & sets[j]]
    return Graph.from_edges(len(verts), edges, labels=verts)


def petersen_graph() -> Graph:
    g = kneser_graph(5, 2)
    return Graph(g.n, g.edges, g.labels, None, "Petersen")


def odd_graph(r: int) -> Graph:
    g = kneser_graph(2 * r - 1, r - 1)
    return Graph(g.n, g.edges, g.labels, None, f"O{r}")


FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def heawood_graph() -> Graph:
    """Point-line incidence graph of the Fano plane."""
    edges = [(p - 1, 7 + i) for i, line in enumerate(FANO_LINES) for p in line]
    labels = [("p", p) for p in range(1, 8)] + [("L", i) for i in range(7)]
    return Graph.from_edges(14, edges, labels=labels, name="Heawood")


def coxeter_graph() -> Graph:
    """O_4 with the seven Fano lines removed."""
    verts = [t for t in itertools.combinations(range(1, 8), 3) if t not in FANO_LINES]
    sets = [set(v) for v in verts]
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2) if not sets[i] & sets[j]]
    return Graph.from_edges(len(verts), edges, labels=verts, name="Coxeter")


def generalized_petersen(n: int, k: int, name: str | None = None) -> Graph:
    edges = []
    for i in range(n):
        edges += [(i, (i + 1) % n), (i, n + i), (n + i, n + (i + k) % n)]
    return Graph.from_edges(2 * n, edges, name=name or f"GP({n},{k})")


def dodecahedron_graph() -> Graph:
    return generalized_petersen(10, 2, "Dodecahedron")


def desargues_graph() -> Graph:
    return generalized_petersen(10, 3, "Desargues")


def line_graph(g: Graph, name: str | None = None) -> Graph:
    edges = []
    inc: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(g.edges):
        inc.setdefault(u, []).append(i)
        inc.setdefault(v, []).append(i)
    for lst in inc.values():
        edges += itertools.combinations(lst, 2)
    return Graph.from_edges(g.m, edges, labels=g.edges, name=name)


def lcf_graph(shifts, repeats: int, name: str | None = None) -> Graph:
    """Hamiltonian cycle plus chords given in LCF notation."""
    n = len(shifts) * repeats
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, (i + shifts[i % len(shifts)]) % n) for i in range(n)]
    return Graph.from_edges(n, edges, name=name)


def pappus_graph() -> Graph:
    return lcf_graph([5, 7, -7, 7, -7, -5], 3, "Pappus")


def tutte_cage() -> Graph:
    """Tutte's 8-cage (Tutte-Coxeter graph)."""
    return lcf_graph([-13, -9, 7, -7, 9, 13], 5, "Tutte8Cage")


def icosahedron_graph() -> Graph:
    # apex 0, upper ring 1..5, lower ring 6..10, apex 11
    edges = []
    for i in range(5):
        up, nxt = 1 + i, 1 + (i + 1) % 5
        lo, lnxt = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, nxt), (11, lo), (lo, lnxt), (up, lo), (nxt, lo)]
    return Graph.from_edges(12, edges, name="Icosahedron")


def paley_graph(p: int) -> Graph:
    """Quadratic-residue graph on Z_p, p prime with p = 1 mod 4."""
    squares = {(x * x) % p for x in range(1, p)}
    edges = [(i, j) for i, j in itertools.combinations(range(p), 2) if (j - i) % p in squares]
    return Graph.from_edges(p, edges, name=f"Paley({p})")


def complete_multipartite(parts: int, size: int) -> Graph:
    n = parts * size
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if i // size != j // size]
    return Graph.from_edges(n, edges, name=f"K{parts}x{size}")


def clebsch_graph() -> Graph:
    """Folded 5-cube: 4-bit words, adjacent at Hamming distance 1 or 4."""
    edges = [(i, j) for i, j in itertools.combinations(range(16), 2) if bin(i ^ j).count("1") in (1, 4)]
    return Graph.from_edges(16, edges, name="Clebsch")


def shrikhande_graph() -> Graph:
    steps = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    verts = [(a, b) for a in range(4) for b in range(4)]
    edges = [(i, j) for i, j in itertools.combinations(range(16), 2)
             if ((verts[j][0] - verts[i][0]) % 4, (verts[j][1] - verts[i][1]) % 4) in steps]
    return Graph.from_edges(16, edges, labels=verts, name="Shrikhande")


def complement(g: Graph, name: str | None = None) -> Graph:
    A = ~g.adjacency
    np.fill_diagonal(A, False)
    return Graph.from_adjacency(A, labels=g.labels, name=name)


def build_family(tag: FamilyTag, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    kind, p = tag.kind, tag.params
    n = {
        "Johnson": lambda: math.comb(p[0], p[1]),
        "Hamming": lambda: p[1] ** p[0],
        "Crown": lambda: 2 * p[0],
        "Cycle": lambda: p[0],
    }[kind]()
    if n > max_vertices:
        raise TooLarge(f"{tag} has {n} vertices (cap {max_vertices})")
    g = {
        "Johnson": lambda: johnson_graph(p[0], p[1]),
        "Hamming": lambda: hamming_graph(p[0], p[1]),
        "Crown": lambda: crown_graph(p[0]),
        "Cycle": lambda: cycle_graph(p[0]),
    }[kind]()
    return Graph(g.n, g.edges, g.labels, tag, str(tag))


# -- distance regularity ---------------------------------------------------------

def check_drg(g: Graph) -> IntersectionArray:
    """Extract the intersection array, verifying every pair."""
    if not g.is_connected:
        raise NotConnected(f"{g!r} is not connected")
    D, A = g.dist, g.adjacency.astype(np.int64)
    diam = int(D.max())
    if diam == 0:
        raise NotDistanceRegular("single vertex")
    layer_hits = [(D == j).astype(np.int64) @ A for j in range(diam + 1)]
    layer_hits.append(np.zeros_like(A))
    b, c = [], []
    for j in range(diam + 1):
        xs, ys = np.nonzero(D == j)
        cvals = layer_hits[j - 1][xs, ys] if j > 0 else np.zeros(len(xs), dtype=np.int64)
        avals = layer_hits[j][xs, ys]
        bvals = layer_hits[j + 1][xs, ys]
        for name, vals in (("c", cvals), ("a", avals), ("b", bvals)):
            bad = np.flatnonzero(vals != vals[0])
            if bad.size:
                p0 = (int(xs[0]), int(ys[0]))
                p1 = (int(xs[bad[0]]), int(ys[bad[0]]))
                raise NotDistanceRegular(
                    f"{name}_{j} differs: {vals[0]} at {p0}, {vals[bad[0]]} at {p1}", witness=(p0, p1)
                )
        if j < diam:
            b.append(int(bvals[0]))
        if j > 0:
            c.append(int(cvals[0]))
    return validate(b, c)


def distance_i_graph(g: Graph, i: int) -> Graph:
    if not 1 <= i <= g.diameter:
        raise IndexOutOfRange(f"i = {i} outside 1..{g.diameter}")
    return Graph.from_adjacency(g.dist == i, name=f"{g.name or 'G'}_{i}" if g.name else None)


@dataclass(frozen=True)
class DistancePartition:
    source: int
    layers: tuple[tuple[int, ...], ...]


def distance_partition(g: Graph, v: int) -> DistancePartition:
    row = g.dist[v]
    ecc = int(row.max())
    return DistancePartition(v, tuple(tuple(np.flatnonzero(row == i).tolist()) for i in range(ecc + 1)))


def is_primitive(g: Graph, array: IntersectionArray | None = None) -> bool:
    """True iff every distance-i graph (1 <= i <= diameter) is connected.

    ``array`` is accepted for symmetry with the parametric test and ignored.
    """
    D = g.dist
    return all(_components(D == i)[0] == 1 for i in range(1, g.diameter + 1))


def bipartition(g: Graph) -> np.ndarray | None:
    """0/1 colouring by distance parity from vertex 0, or None."""
    color = g.dist[0] % 2
    for u, v in g.edges:
        if color[u] == color[v]:
            return None
    return color


def is_bipartite(g: Graph) -> bool:
    return g.is_connected and bipartition(g) is not None


def antipodal_classes(g: Graph) -> list[tuple[int, ...]] | None:
    """Cliques of the distance-d graph if it is a union of cliques, else None."""
    d = g.diameter
    if d < 2:
        return None
    far = (g.dist == d) | np.eye(g.n, dtype=bool)
    seen, classes = set(), []
    for x in range(g.n):
        if x in seen:
            continue
        cls = tuple(np.flatnonzero(far[x]).tolist())
        if not far[np.ix_(cls, cls)].all():
            return None
        seen.update(cls)
        classes.append(cls)
    return classes


def is_antipodal(g: Graph) -> bool:
    return antipodal_classes(g) is not None


def neighborhood_connectivity(g: Graph) -> tuple[bool, ...]:
    """Whether each local graph G(v) is connected."""
    out = []
    for v in range(g.n):
        nb = list(g.neighbors[v])
        if not nb:
            out.append(False)
            continue
        count, _ = _components(g.adjacency[np.ix_(nb, nb)])
        out.append(count == 1)
    return tuple(out)


# -- cliques ---------------------------------------------------------------------

@dataclass(frozen=True)
class CliqueGeometry:
    cliques: tuple[tuple[int, ...], ...]
    edge_clique: dict = field(compare=False, repr=False)
    delsarte: bool = True

    def cliques_per_vertex(self, n: int) -> list[int]:
        counts = [0] * n
        for cl in self.cliques:
            for v in cl:
                counts[v] += 1
        return counts


def _cliques_of_size(g: Graph, size: int, work_cap: int) -> list[tuple[int, ...]]:
    """All cliques with exactly ``size`` vertices, each listed once, sorted."""
    A = g.adjacency
    found: list[tuple[int, ...]] = []
    work = 0

    def grow(clique, cand):
        nonlocal work
        work += 1
        if work > work_cap:
            raise CliqueSearchExhausted(f"clique search exceeded {work_cap} steps")
        if len(clique) == size:
            found.append(tuple(clique))
            return
        if len(clique) + len(cand) < size:
            return
        for i, v in enumerate(cand):
            rest = [w for w in cand[i + 1:] if A[v, w]]
            grow(clique + [v], rest)

    for u in range(g.n):
        grow([u], [w for w in g.neighbors[u] if w > u])
    return found


def _exact_cover(edges, edge_options, cliques_edges, work_cap: int):
    """Choose cliques covering each edge exactly once (Algorithm X, deterministic)."""
    cols = {e: set(edge_options[e]) for e in edges}
    rows = {c: sorted(es) for c, es in enumerate(cliques_edges)}
    chosen: list[int] = []
    work = 0

    def select(c):
        nonlocal work
        removed = []
        for e in rows[c]:
            work += len(cols[e])
            for other in cols[e]:
                for f in rows[other]:
                    if f != e:
                        cols[f].discard(other)
            removed.append(cols.pop(e))
        return removed

    def deselect(c, removed):
        for e in reversed(rows[c]):
            cols[e] = removed.pop()
            for other in cols[e]:
                for f in rows[other]:
                    if f != e:
                        cols[f].add(other)

    def solve():
        nonlocal work
        work += 1
        if work > work_cap:
            raise CliqueSearchExhausted(f"exact cover search exceeded {work_cap} steps")
        if not cols:
            return True
        # fewest options first, ties by edge order
        e = min(cols, key=lambda x: (len(cols[x]), x))
        for c in sorted(cols[e]):
            chosen.append(c)
            removed = select(c)
            if solve():
                return True
            deselect(c, removed)
            chosen.pop()
        return False

    return list(chosen) if solve() else None


def find_clique_geometry(g: Graph, array: IntersectionArray, spec: Spectrum,
                         work_cap: int = 1_000_000) -> CliqueGeometry:
    """A set of Delsarte cliques partitioning the edge set.

    Every clique of size 1 - k/m is maximal (nothing larger exists), so the
    geometry is found as an exact cover of the edges by such cliques.
    """
    bound = delsarte_bound(array, spec)
    if not isinstance(bound, Fraction) or bound.denominator != 1:
        raise NoGeometry(f"Delsarte bound {bound} is not an integer")
    size = int(bound)
    if size < 2:
        raise NoGeometry(f"Delsarte bound {size} is below 2")
    cliques = _cliques_of_size(g, size, work_cap)
    cliques_edges = [frozenset(itertools.combinations(cl, 2)) for cl in cliques]
    edge_options: dict = {e: [] for e in g.edges}
    for i, es in enumerate(cliques_edges):
        for e in sorted(es):
            edge_options[e].append(i)
    for e, opts in edge_options.items():
        if not opts:
            raise NoGeometry(f"edge {e} lies in no clique of size {size}")
    chosen = _exact_cover(g.edges, edge_options, cliques_edges, work_cap)
    if chosen is None:
        raise NoGeometry(f"cliques of size {size} admit no edge partition")
    chosen.sort()
    geometry = tuple(cliques[i] for i in chosen)
    edge_clique = {e: cliques[i] for i in chosen for e in cliques_edges[i]}
    return CliqueGeometry(geometry, edge_clique)


def max_clique_size(g: Graph) -> int:
    """Clique number by branch and bound (greedy colouring bound)."""
    A = g.adjacency
    best = 0

    def colour_bound(cand):
        colours = 0
        left = list(cand)
        while left:
            colours += 1
            used = []
            rest = []
            for v in left:
                if not any(A[v, u] for u in used):
                    used.append(v)
                else:
                    rest.append(v)
            left = rest
        return colours

    def grow(size, cand):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + colour_bound(cand) <= best:
            return
        for i, v in enumerate(cand):
            if size + len(cand) - i <= best:
                return
            grow(size + 1, [w for w in cand[i + 1:] if A[v, w]])

    grow(0, list(range(g.n)))
    return best


@dataclass(frozen=True)
class MetschClique:
    clique: tuple[int, ...]
    target: int  # ceil(lambda / 2)
    meq_holds: bool  # (lambda+1)^2 > (3k + lambda + 1)(mu - 1)
    metsch_size: int  # lambda + 2 - (ceil(3k / (2(lambda+1))) - 1)(mu - 1)


def metsch_clique(g: Graph, array: IntersectionArray, work_cap: int = 1_000_000) -> MetschClique:
    """A clique of size at least lambda/2 when lambda^2 >= 4 k mu."""
    p = derive(array)
    k, lam, mu = p.k, p.lam, p.mu
    if lam * lam < 4 * k * mu:
        raise HypothesisFails(f"lambda^2 = {lam * lam} < 4 k mu = {4 * k * mu}")
    target = -(-lam // 2)
    meq = (lam + 1) ** 2 > (3 * k + lam + 1) * (mu - 1)
    metsch_size = lam + 2 - (-(-3 * k // (2 * (lam + 1))) - 1) * (mu - 1)
    A = g.adjacency

    def result(cl):
        return MetschClique(tuple(sorted(cl)), target, meq, metsch_size)

    for u, v in g.edges:
        cl = [u, v]
        cand = [w for w in g.neighbors[u] if A[v, w]]
        while cand and len(cl) < target:
            inner = A[np.ix_(cand, cand)].sum(1)
            pick = cand[int(np.argmax(inner))]
            cl.append(pick)
            cand = [w for w in cand if A[pick, w]]
        if len(cl) >= target:
            return result(cl)

    work = 0

    def grow(cl, cand):
        nonlocal work
        work += 1
        if work > work_cap:
            raise CliqueSearchExhausted(f"clique search exceeded {work_cap} steps")
        if len(cl) >= target:
            return cl
        if len(cl) + len(cand) < target:
            return None
        for i, w in enumerate(cand):
            hit = grow(cl + [w], [x for x in cand[i + 1:] if A[w, x]])
            if hit:
                return hit
        return None

    for u, v in g.edges:
        hit = grow([u, v], [w for w in g.neighbors[u] if A[v, w]])
        if hit:
            return result(hit)
    raise CliqueSearchExhausted(f"no clique of size {target} found")


# -- halved / folded ---------------------------------------------------------------

def halved_graphs(g: Graph) -> tuple[Graph, Graph]:
    """The distance-2 graph restricted to each colour class.

    Vertex labels of each half are the original vertex ids.
    """
    color = bipartition(g) if g.is_connected else None
    if color is None:
        raise NotBipartite(f"{g!r} is not bipartite")
    D2 = g.dist == 2
    halves = []
    for side in (0, 1):
        verts = np.flatnonzero(color == side).tolist()
        sub = D2[np.ix_(verts, verts)]
        h = Graph.from_adjacency(sub, labels=tuple(verts))
        halves.append(h)
    return halves[0], halves[1]


def folded_graph(g: Graph) -> Graph:
    """Quotient by the cliques of the distance-d graph.

    Vertex labels are the antipodal classes (tuples of original ids).
    """
    classes = antipodal_classes(g) if g.is_connected else None
    if classes is None:
        raise NotAntipodal(f"{g!r} is not antipodal")
    owner = np.empty(g.n, dtype=np.int64)
    for i, cls in enumerate(classes):
        owner[list(cls)] = i
    edges = {(min(owner[u], owner[v]), max(owner[u], owner[v])) for u, v in g.edges if owner[u] != owner[v]}
    return Graph.from_edges(len(classes), edges, labels=tuple(classes))


def find_isomorphism(g: Graph, h: Graph) -> np.ndarray | None:
    """A map v -> phi[v] from g onto h preserving distances, or None.

    Searches automorphisms of the disjoint union that send vertex 0 of g into h.
    """
    from . import kernels

    if g.n != h.n or g.m != h.m or sorted(g.degrees.tolist()) != sorted(h.degrees.tolist()):
        return None
    n = g.n
    D = np.full((2 * n, 2 * n), UNREACHABLE, dtype=np.int32)
    D[:n, :n] = g.dist
    D[n:, n:] = h.dist
    colors = np.zeros(2 * n, dtype=np.int32)
    for y in range(n):
        perm = kernels.extend_automorphism(D, colors, np.array([0], dtype=np.int32),
                                           np.array([n + y], dtype=np.int32))
        if perm is not None:
            return np.asarray(perm[:n]) - n
    return None


# -- file format --------------------------------------------------------------------

def write_edge_list(g: Graph, path: str, metadata: bool = True) -> None:
    """Text format: "n m" then one "u v" line per edge; optional JSON sidecar."""
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")
    if metadata and (g.labels is not None or g.tag is not None or g.name):
        meta = {
            "labels": [list(x) if isinstance(x, tuple) else x for x in g.labels] if g.labels else None,
            "family": str(g.tag) if g.tag else None,
            "name": g.name,
        }
        with open(path + ".json", "w") as fh:
            json.dump(meta, fh, sort_keys=True)


def _freeze(x):
    return tuple(_freeze(y) for y in x) if isinstance(x, list) else x


def read_edge_list(path: str) -> Graph:
    with open(path) as fh:
        rows = [line.split() for line in fh if line.strip() and not line.startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphFormatError(f"{path}: first line must be 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None
    if len(edges) != m:
        raise GraphFormatError(f"{path}: header says {m} edges, found {len(edges)}")
    labels = tag = name = None
    if os.path.exists(path + ".json"):
        with open(path + ".json") as fh:
            meta = json.load(fh)
        labels = tuple(_freeze(x) for x in meta["labels"]) if meta.get("labels") else None
        tag = FamilyTag.parse(meta["family"]) if meta.get("family") else None
        name = meta.get("name")
    g = Graph.from_edges(n, edges, labels=labels, tag=tag, name=name)
    if g.m != m:
        raise GraphFormatError(f"{path}: duplicate edges")
    return g
