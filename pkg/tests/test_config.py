import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgmotion import graphs as gr
from drgmotion.arrays import FamilyTag
from drgmotion.config import (
    CoherentConfiguration,
    d_min,
    d_min_lower_bounds,
    expansion_check,
    geodesic_weight,
    path_counts,
    verify_paths,
)
from drgmotion.errors import BoundViolation, CoherenceViolation, NotPrimitive, TooLarge


def geodesic_oracle(g):
    """P per directed edge by enumerating every shortest path with networkx."""
    h = nx.Graph(list(g.edges))
    load = {}
    for x, y in itertools.permutations(range(g.n), 2):
        paths = list(nx.all_shortest_paths(h, x, y))
        for p in paths:
            for e in zip(p, p[1:]):
                load[e] = load.get(e, 0) + Fraction(1, len(paths))
    return set(load.values())


def expansion_oracle(g):
    best = None
    for size in range(1, g.n // 2 + 1):
        for S in itertools.combinations(range(g.n), size):
            s = set(S)
            cut = sum((u in s) != (v in s) for u, v in g.edges)
            r = Fraction(cut, size)
            best = r if best is None or r < best else best
    return best


def test_petersen_configuration(petersen):
    cfg = CoherentConfiguration.from_drg(petersen)
    assert cfg.rank == 3
    assert cfg.c(2, 1, 1) == 1
    assert cfg.valencies == (1, 3, 6)
    assert cfg.is_primitive


def test_cube_configuration(q3):
    cfg = CoherentConfiguration.from_drg(q3)
    assert cfg.rank == 4
    assert not cfg.is_primitive
    broken = gr.Graph.from_edges(8, q3.edges[1:])
    with pytest.raises(CoherenceViolation):
        CoherentConfiguration.from_drg(broken)


def test_partition_rejects_bad_input():
    rel = np.array([[0, 1, 1], [1, 0, 2], [1, 2, 0]])
    with pytest.raises(CoherenceViolation):
        CoherentConfiguration.from_partition(rel)
    with pytest.raises(CoherenceViolation):
        CoherentConfiguration.from_partition(np.array([[0, 1], [2, 0]]))
    # directed triangle: two mutually transposed relations
    rel = np.array([[0, 1, 2], [2, 0, 1], [1, 2, 0]])
    cfg = CoherentConfiguration.from_partition(rel)
    assert cfg.transpose == (0, 2, 1)
    assert cfg.c(0, 1, 2) == 1 and cfg.c(2, 1, 1) == 1


def test_path_counts_match_numbers(petersen):
    cfg = CoherentConfiguration.from_drg(petersen)
    M = path_counts(cfg, (1, 1))
    for R in range(3):
        assert set(M[cfg.relation(R)]) == {cfg.c(R, 1, 1)}
    assert verify_paths(cfg, 4) == (3 + 9 + 27) * 3


@pytest.mark.parametrize("build,P", [
    (lambda: gr.cycle_graph(5), Fraction(3)),
    (lambda: gr.build_family(FamilyTag.hamming(3, 2)), Fraction(4)),
    (gr.petersen_graph, Fraction(5)),
    (lambda: gr.cycle_graph(6), Fraction(9, 2)),
    (lambda: gr.build_family(FamilyTag.johnson(6, 3)), Fraction(10, 3)),
])
def test_geodesic_weight(build, P):
    g = build()
    gw = geodesic_weight(CoherentConfiguration.from_drg(g))
    assert gw.P == P
    assert gw.nk * gw.P == gw.distance_sum
    assert geodesic_oracle(g) == {P}


def test_geodesic_weight_cube_sum(q3):
    gw = geodesic_weight(CoherentConfiguration.from_drg(q3))
    assert (gw.distance_sum, gw.nk) == (96, 24)


def test_expansion_small():
    res = expansion_check(CoherentConfiguration.from_drg(gr.cycle_graph(6)))
    assert res.ratio == Fraction(2, 3) and res.bound == Fraction(1, 3)
    res = expansion_check(CoherentConfiguration.from_drg(gr.petersen_graph()))
    assert res.bound == Fraction(3, 4)
    assert res.ratio == expansion_oracle(gr.petersen_graph())
    assert res.checked == sum(len(list(itertools.combinations(range(10), s))) for s in range(1, 6))


def test_expansion_detects_violation():
    star = gr.Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    with pytest.raises(BoundViolation):
        expansion_check(star)


def test_expansion_limits(h33):
    with pytest.raises(TooLarge):
        expansion_check(CoherentConfiguration.from_drg(h33))
    a = expansion_check(CoherentConfiguration.from_drg(h33), mode="sampled", samples=2000, seed=3)
    b = expansion_check(CoherentConfiguration.from_drg(h33), mode="sampled", samples=2000, seed=3)
    assert a == b and a.checked == 2000


def test_sampled_never_below_exhaustive(j63):
    cfg = CoherentConfiguration.from_drg(j63)
    ex = expansion_check(cfg)
    sm = expansion_check(cfg, mode="sampled", samples=5000)
    assert sm.ratio >= ex.ratio


@pytest.mark.parametrize("g", [gr.cycle_graph(7), gr.heawood_graph(), gr.complete_multipartite(3, 2)])
def test_expansion_matches_oracle(g):
    assert expansion_check(g).ratio == expansion_oracle(g)


def test_dmin_values(petersen, q3):
    assert d_min(CoherentConfiguration.from_drg(petersen))[0] == 6
    cfg = CoherentConfiguration.from_drg(q3)
    value, (x, y) = d_min(cfg)
    brute = min(int((cfg.relmat[a] != cfg.relmat[b]).sum()) for a, b in itertools.combinations(range(8), 2))
    assert value == brute == 4
    assert (cfg.relmat[x] != cfg.relmat[y]).sum() == value
    assert d_min(CoherentConfiguration.from_drg(gr.complete_graph(6)))[0] == 2


def test_dmin_bounds(petersen, j63):
    arr = gr.check_drg(petersen)
    b = d_min_lower_bounds(arr, CoherentConfiguration.from_drg(petersen))
    assert b["dmin_bound"] == 2 and b["bandc_bound"] == Fraction(5, 3) and b["epsilon"] == Fraction(1, 3)
    arr = gr.check_drg(j63)
    with pytest.raises(NotPrimitive):
        d_min_lower_bounds(arr)
    b = d_min_lower_bounds(arr, check_primitive=False)
    assert b["dmin_bound"] == Fraction(11, 3)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["pet", "c7", "k33", "heawood", "j52", "paley13"]), st.integers(0, 10 ** 6))
def test_configuration_is_relabelling_invariant(name, seed):
    g = {"pet": gr.petersen_graph, "c7": lambda: gr.cycle_graph(7),
         "k33": lambda: gr.complete_multipartite(2, 3), "heawood": gr.heawood_graph,
         "j52": lambda: gr.build_family(FamilyTag.johnson(5, 2)), "paley13": lambda: gr.paley_graph(13)}[name]()
    perm = np.random.default_rng(seed).permutation(g.n)
    h = gr.Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    a, b = CoherentConfiguration.from_drg(g), CoherentConfiguration.from_drg(h)
    assert np.array_equal(a.numbers, b.numbers)
    assert geodesic_weight(a).P == geodesic_weight(b).P
    assert d_min(a)[0] == d_min(b)[0]
