import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgmotion import graphs as gr
from drgmotion.arrays import FamilyTag, IntersectionArray, derive, family_array, validate
from drgmotion.errors import (
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
from drgmotion.spectrum import spectrum


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_build_family_sizes(j63, q3):
    assert (j63.n, j63.m) == (20, 90)
    assert (q3.n, q3.m) == (8, 12)
    crown = gr.build_family(FamilyTag.crown(4))
    assert (crown.n, crown.m) == (8, 12)
    assert gr.find_isomorphism(crown, q3) is not None


def test_build_family_cap():
    with pytest.raises(TooLarge):
        gr.build_family(FamilyTag.johnson(30, 10))


@pytest.mark.parametrize("tag", [
    FamilyTag.johnson(4, 2), FamilyTag.johnson(5, 2), FamilyTag.johnson(6, 3), FamilyTag.johnson(7, 3),
    FamilyTag.hamming(2, 3), FamilyTag.hamming(3, 2), FamilyTag.hamming(3, 3), FamilyTag.hamming(4, 2),
    FamilyTag.crown(4), FamilyTag.crown(5), FamilyTag.crown(8), FamilyTag.cycle(5), FamilyTag.cycle(6),
])
def test_family_roundtrip(tag):
    assert gr.check_drg(gr.build_family(tag)) == family_array(tag)


def test_family_matches_networkx():
    assert nx.is_isomorphic(to_nx(gr.build_family(FamilyTag.hamming(3, 2))), nx.hypercube_graph(3))
    assert nx.is_isomorphic(to_nx(gr.petersen_graph()), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(gr.dodecahedron_graph()), nx.dodecahedral_graph())
    assert nx.is_isomorphic(to_nx(gr.heawood_graph()), nx.heawood_graph())
    assert nx.is_isomorphic(to_nx(gr.pappus_graph()), nx.pappus_graph())
    assert nx.is_isomorphic(to_nx(gr.desargues_graph()), nx.desargues_graph())
    assert nx.is_isomorphic(to_nx(gr.icosahedron_graph()), nx.icosahedral_graph())
    assert nx.is_isomorphic(to_nx(gr.tutte_cage()), nx.LCF_graph(30, [-13, -9, 7, -7, 9, 13], 5))


def test_check_drg_examples(petersen, q3):
    assert gr.check_drg(petersen) == IntersectionArray((3, 2), (1, 1))
    assert gr.check_drg(q3) == IntersectionArray((3, 2, 1), (1, 2, 3))
    broken = gr.Graph.from_edges(8, q3.edges[1:])
    with pytest.raises(NotDistanceRegular):
        gr.check_drg(broken)
    with pytest.raises(NotConnected):
        gr.check_drg(gr.Graph.from_edges(4, [(0, 1), (2, 3)]))


@pytest.mark.parametrize("build,array", [
    (gr.heawood_graph, ((3, 2, 2), (1, 1, 3))),
    (gr.coxeter_graph, ((3, 2, 2, 1), (1, 1, 1, 2))),
    (gr.dodecahedron_graph, ((3, 2, 1, 1, 1), (1, 1, 1, 2, 3))),
    (gr.desargues_graph, ((3, 2, 2, 1, 1), (1, 1, 2, 2, 3))),
    (gr.pappus_graph, ((3, 2, 2, 1), (1, 1, 2, 3))),
    (gr.tutte_cage, ((3, 2, 2, 2), (1, 1, 1, 3))),
    (gr.icosahedron_graph, ((5, 2, 1), (1, 2, 5))),
    (gr.clebsch_graph, ((5, 4), (1, 2))),
    (gr.shrikhande_graph, ((6, 3), (1, 2))),
    (lambda: gr.odd_graph(4), ((4, 3, 3), (1, 1, 2))),
    (lambda: gr.line_graph(gr.petersen_graph()), ((4, 2, 1), (1, 1, 4))),
    (lambda: gr.paley_graph(13), ((6, 3), (1, 3))),
])
def test_named_arrays(build, array):
    assert gr.check_drg(build()) == IntersectionArray(*array)


def test_distance_i_graph(petersen, q3):
    g2 = gr.distance_i_graph(petersen, 2)
    assert g2.n == 10 and set(g2.degrees) == {6}
    assert g2 == gr.complement(petersen)
    g3 = gr.distance_i_graph(q3, 3)
    assert g3.m == 4 and set(g3.degrees) == {1}
    assert gr.distance_i_graph(petersen, 1) == petersen
    with pytest.raises(IndexOutOfRange):
        gr.distance_i_graph(petersen, 3)


def test_primitivity(petersen, q3, j63, h33):
    assert gr.is_primitive(petersen)
    assert not gr.is_primitive(q3)
    # J(6,3) pairs complementary 3-sets at distance 3
    assert not gr.is_primitive(j63)
    assert gr.is_antipodal(j63)
    assert gr.is_primitive(h33)


def test_distance_partition(petersen):
    part = gr.distance_partition(petersen, 0)
    assert [len(x) for x in part.layers] == [1, 3, 6]


def test_clique_geometry_h33(h33):
    arr = gr.check_drg(h33)
    geo = gr.find_clique_geometry(h33, arr, spectrum(arr))
    assert len(geo.cliques) == 27 and all(len(c) == 3 for c in geo.cliques)
    assert set(geo.cliques_per_vertex(27)) == {3}
    # axis lines: two coordinates agree across each line
    for c in geo.cliques:
        labels = [h33.labels[v] for v in c]
        assert sum(len({x[i] for x in labels}) == 1 for i in range(3)) == 2


def test_clique_geometry_j63(j63):
    arr = gr.check_drg(j63)
    geo = gr.find_clique_geometry(j63, arr, spectrum(arr))
    assert all(len(c) == 4 for c in geo.cliques)
    assert set(geo.cliques_per_vertex(20)) == {3}
    covered = sorted(e for c in geo.cliques for e in itertools.combinations(sorted(c), 2))
    assert covered == sorted(j63.edges)


def test_bang_koolen_regime_h2_11():
    # lambda = 9 exceeds m^2 mu = 8, so a geometry must exist
    g = gr.build_family(FamilyTag.hamming(2, 11))
    arr = gr.check_drg(g)
    spec = spectrum(arr)
    p = derive(arr)
    assert p.lam > spec.m ** 2 * p.mu
    geo = gr.find_clique_geometry(g, arr, spec)
    assert set(geo.cliques_per_vertex(g.n)) == {-spec.m_integer} == {2}
    assert all(len(c) == 11 for c in geo.cliques)
    assert len(set(gr.neighborhood_connectivity(g))) == 1


def test_geometry_transversal_design():
    # K_{4x5}: edges split into transversal 4-cliques (two orthogonal latin squares of order 5)
    g = gr.complete_multipartite(4, 5)
    arr = gr.check_drg(g)
    geo = gr.find_clique_geometry(g, arr, spectrum(arr))
    covered = sorted(tuple(sorted(e)) for c in geo.cliques for e in itertools.combinations(c, 2))
    assert covered == sorted(g.edges)


def test_geometry_search_cap():
    # order 6 has no orthogonal latin square pair; a small cap gives up loudly
    g = gr.complete_multipartite(4, 6)
    arr = gr.check_drg(g)
    with pytest.raises(CliqueSearchExhausted):
        gr.find_clique_geometry(g, arr, spectrum(arr), work_cap=5_000)


def test_no_geometry_petersen(petersen):
    arr = gr.check_drg(petersen)
    with pytest.raises(NoGeometry):
        gr.find_clique_geometry(petersen, arr, spectrum(arr))


def test_metsch():
    h = gr.build_family(FamilyTag.hamming(2, 20))
    arr = gr.check_drg(h)
    mc = gr.metsch_clique(h, arr)
    assert len(mc.clique) >= 9 and mc.target == 9
    for u, v in itertools.combinations(mc.clique, 2):
        assert h.adjacency[u, v]


def test_metsch_hypothesis(j63, petersen):
    for g in (j63, petersen):
        with pytest.raises(HypothesisFails):
            gr.metsch_clique(g, gr.check_drg(g))


def test_halved_folded(q3, petersen):
    halves = gr.halved_graphs(q3)
    k4 = gr.complete_graph(4)
    assert all(gr.find_isomorphism(h, k4) is not None for h in halves)
    assert sorted(halves[0].labels + halves[1].labels) == list(range(8))
    folded = gr.folded_graph(q3)
    assert gr.find_isomorphism(folded, k4) is not None
    with pytest.raises(NotAntipodal):
        gr.folded_graph(petersen)
    with pytest.raises(NotBipartite):
        gr.halved_graphs(petersen)


def test_max_clique_against_networkx():
    for g in (gr.petersen_graph(), gr.build_family(FamilyTag.johnson(6, 3)), gr.shrikhande_graph(),
              gr.paley_graph(17), gr.icosahedron_graph(), gr.complete_multipartite(3, 4)):
        want = max(len(c) for c in nx.find_cliques(to_nx(g)))
        assert gr.max_clique_size(g) == want


def test_isomorphism_rejects():
    assert gr.find_isomorphism(gr.shrikhande_graph(), gr.build_family(FamilyTag.hamming(2, 4))) is None
    assert gr.find_isomorphism(gr.cycle_graph(6), gr.cycle_graph(7)) is None


def test_edge_list_roundtrip(tmp_path, j63):
    p = tmp_path / "j.edges"
    gr.write_edge_list(j63, str(p))
    g = gr.read_edge_list(str(p))
    assert g == j63
    assert g.tag == j63.tag and g.labels == j63.labels
    assert p.read_text().splitlines()[0] == "20 90"


@pytest.mark.parametrize("text", ["", "3\n", "3 1\n0 5\n", "3 2\n0 1\n", "2 1\n0 0\n", "x y\n"])
def test_edge_list_errors(tmp_path, text):
    p = tmp_path / "bad.edges"
    p.write_text(text)
    with pytest.raises(GraphFormatError):
        gr.read_edge_list(str(p))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2 ** 20))
def test_random_relabel_preserves_check(n_base, seed):
    rng = np.random.default_rng(seed)
    g = gr.cycle_graph(n_base + 2) if seed % 2 else gr.petersen_graph()
    perm = rng.permutation(g.n)
    h = gr.Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert gr.check_drg(h) == gr.check_drg(g)
    phi = gr.find_isomorphism(g, h)
    assert phi is not None
    assert {tuple(sorted((phi[u], phi[v]))) for u, v in g.edges} == set(h.edges)


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 12), st.floats(0.2, 0.8), st.integers(0, 1000))
def test_check_drg_agrees_with_networkx(n, p, seed):
    h = nx.gnp_random_graph(n, p, seed=seed)
    g = gr.Graph.from_edges(n, list(h.edges))
    if not nx.is_connected(h):
        with pytest.raises(NotConnected):
            gr.check_drg(g)
        return
    if nx.is_distance_regular(h):
        b, c = nx.intersection_array(h)
        assert gr.check_drg(g) == validate(b, c)
    else:
        with pytest.raises(NotDistanceRegular):
            gr.check_drg(g)
