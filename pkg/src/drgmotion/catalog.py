"""Built-in catalog of small distance-regular graphs and the checks run on it.

The catalog holds the named examples plus every realization, among the
constructions below, of an intersection array on at most 30 vertices found by
exhaustive array search. Isomorphic duplicates are dropped.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import graphs as gr
from .arrays import (
    FamilyTag,
    SphereOrderWarning,
    derive,
    detect_imprimitivity,
    diameter_log_bound_holds,
    enumerate_arrays,
    family_array,
)
from .certifier import certify
from .config import CoherentConfiguration, d_min, expansion_check, geodesic_weight, verify_paths
from .errors import DrgError
from .graphs import Graph
from .groups import enumerate_chain, motion_exact, motion_search, stabilizer_chain
from .spectrum import MATCH_TOL, check_eigen_gap, delsarte_clique_cap, spectrum

MAX_N = 30
ENUMERATION_CAP = 1_000_000
SAMPLES = 100_000
GEOMETRY_WORK_CAP = 200_000


@dataclass(frozen=True)
class Entry:
    name: str
    graph: Graph
    source: str  # "named", "search" or "extra"


def _fam(tag: FamilyTag) -> Graph:
    return gr.build_family(tag)


def named_graphs() -> list[tuple[str, Graph]]:
    out = [("Petersen", gr.petersen_graph())]
    tags = [FamilyTag.johnson(4, 2), FamilyTag.johnson(5, 2), FamilyTag.johnson(6, 3),
            FamilyTag.hamming(2, 3), FamilyTag.hamming(3, 2), FamilyTag.hamming(3, 3)]
    tags += [FamilyTag.crown(m) for m in range(4, 9)]
    tags += [FamilyTag.cycle(5), FamilyTag.cycle(6)]
    out += [(str(t), _fam(t)) for t in tags]
    return out


def construction_pool(max_n: int = MAX_N) -> list[tuple[str, Graph]]:
    """Every construction on at most ``max_n`` vertices, in a fixed order."""
    pool: list[tuple[str, Graph]] = []

    def add(name, build, n):
        if n <= max_n:
            pool.append((name, build()))

    for s in range(4, max_n + 1):
        for d in range(2, s // 2 + 1):
            add(f"Johnson({s},{d})", lambda s=s, d=d: _fam(FamilyTag.johnson(s, d)), math.comb(s, d))
    for d in range(2, 6):
        for s in range(2, max_n + 1):
            if not (d == 2 and s == 2) and s ** d <= max_n:
                add(f"Hamming({d},{s})", lambda d=d, s=s: _fam(FamilyTag.hamming(d, s)), s ** d)
    for m in range(4, max_n // 2 + 1):
        add(f"Crown({m})", lambda m=m: _fam(FamilyTag.crown(m)), 2 * m)
    for n in range(3, max_n + 1):
        add(f"Cycle({n})", lambda n=n: _fam(FamilyTag.cycle(n)), n)
    for n in range(2, max_n + 1):
        add(f"K{n}", lambda n=n: gr.complete_graph(n), n)
    for parts in range(2, max_n // 2 + 1):
        for size in range(2, max_n // parts + 1):
            add(f"K{parts}x{size}", lambda p=parts, s=size: gr.complete_multipartite(p, s), parts * size)
    for p in (13, 17, 29):
        add(f"Paley({p})", lambda p=p: gr.paley_graph(p), p)
    for s in range(5, max_n + 1):
        add(f"Kneser({s},2)", lambda s=s: gr.kneser_graph(s, 2), math.comb(s, 2))
    for s in range(3, max_n + 1):
        add(f"co-Hamming(2,{s})", lambda s=s: gr.complement(_fam(FamilyTag.hamming(2, s))), s * s)
    named = [
        ("Petersen", gr.petersen_graph, 10), ("Icosahedron", gr.icosahedron_graph, 12),
        ("Heawood", gr.heawood_graph, 14), ("LinePetersen", lambda: gr.line_graph(gr.petersen_graph()), 15),
        ("Clebsch", gr.clebsch_graph, 16), ("co-Clebsch", lambda: gr.complement(gr.clebsch_graph()), 16),
        ("Shrikhande", gr.shrikhande_graph, 16),
        ("co-Shrikhande", lambda: gr.complement(gr.shrikhande_graph()), 16),
        ("Pappus", gr.pappus_graph, 18), ("Dodecahedron", gr.dodecahedron_graph, 20),
        ("Desargues", gr.desargues_graph, 20), ("Coxeter", gr.coxeter_graph, 28),
        ("Tutte8Cage", gr.tutte_cage, 30),
    ]
    for name, build, n in named:
        add(name, build, n)
    return pool


def extra_graphs() -> list[tuple[str, Graph]]:
    """Larger graphs kept for their motion/bound gap."""
    return [("O4", gr.odd_graph(4))]


def _quiet_check(g: Graph):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SphereOrderWarning)
        return gr.check_drg(g)


def build_catalog(max_n: int = MAX_N, extras: bool = True) -> list[Entry]:
    """Named graphs, then realizations of searched arrays, then extras above max_n."""
    entries: list[Entry] = []
    by_array: dict = {}

    def admit(name, g, source):
        arr = _quiet_check(g)
        for other in by_array.get(arr, []):
            if gr.find_isomorphism(g, other) is not None:
                return
        by_array.setdefault(arr, []).append(g)
        entries.append(Entry(name, Graph(g.n, g.edges, g.labels, g.tag, name), source))

    for name, g in named_graphs():
        admit(name, g, "named")
    searched = set(searched_arrays(max_n))
    for name, g in construction_pool(max_n):
        if _quiet_check(g) in searched:
            admit(name, g, "search")
    if extras:
        for name, g in extra_graphs():
            admit(name, g, "extra")
    return entries


def searched_arrays(max_n: int = MAX_N) -> list:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SphereOrderWarning)
        return list(enumerate_arrays(max_n - 1, max_n - 1, max_n))


def unrealized_arrays(entries: list[Entry], max_n: int = MAX_N) -> list:
    have = {_quiet_check(e.graph) for e in entries}
    return [a for a in searched_arrays(max_n) if a not in have]


# -- checks -----------------------------------------------------------------------------

def exact_motion(g: Graph, cap: int = ENUMERATION_CAP) -> tuple[int, str]:
    chain = stabilizer_chain(g)
    if chain.order <= cap:
        return motion_exact(enumerate_chain(chain, cap))[0], "enumeration"
    return motion_search(g, chain)[0], "search"


def adjacency_spectrum_matches(g: Graph, spec) -> bool:
    vals = np.sort(np.linalg.eigvalsh(g.adjacency.astype(float)))[::-1]
    k = spec.k
    tol = MATCH_TOL * k * 10  # dense solver noise on repeated eigenvalues
    distinct = [vals[0]]
    for v in vals[1:]:
        if distinct[-1] - v > 1e-6 * k:
            distinct.append(v)
    if len(distinct) != len(spec.eigenvalues):
        return False
    return all(abs(x - y) <= max(tol, MATCH_TOL * k) for x, y in zip(distinct, spec.eigenvalues))


def run_entry(entry: Entry, seed: int = 1, samples: int = SAMPLES) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SphereOrderWarning)
        return _run_entry(entry, seed, samples)


def _run_entry(entry: Entry, seed: int, samples: int) -> dict:
    g = entry.graph
    checks: dict[str, bool] = {}
    notes: dict[str, str] = {}
    array = _quiet_check(g)
    p = derive(array)
    n, k, d = p.n, p.k, array.d
    if g.tag is not None:
        checks["family_roundtrip"] = family_array(g.tag) == array

    spec = spectrum(array)
    checks["spectrum_match"] = adjacency_spectrum_matches(g, spec)
    try:
        check_eigen_gap(array, spec)
        checks["eigen_gap"] = True
    except DrgError:
        checks["eigen_gap"] = False
    checks["delsarte_cap"] = delsarte_clique_cap(array, spec) >= gr.max_clique_size(g)
    if d >= 2:
        checks["lambda_mu"] = 2 * p.lam <= k + p.mu
    if k >= 3:
        checks["diameter_log"] = diameter_log_bound_holds(array)
    ratios = [Fraction(p.k_i[i + 1], p.k_i[i]) for i in range(d)]
    checks["ratio_chain"] = all(x >= y for x, y in zip(ratios, ratios[1:]))

    cfg = CoherentConfiguration.from_drg(g, array)
    checks["coherence"] = True
    if n <= MAX_N:
        verify_paths(cfg, 4)
        checks["paths"] = True
    gw = geodesic_weight(cfg)
    checks["geodesic_weight"] = gw.nk * gw.P == gw.distance_sum
    mode = "exhaustive" if n <= 20 else "sampled"
    exp = expansion_check(cfg, 1, mode=mode, seed=seed, samples=samples)
    checks["expansion"] = exp.ratio >= exp.bound
    dm, _ = d_min(cfg)

    motion, how = exact_motion(g)
    rep = certify(array, g)
    violations = [b.prop for b in rep.numeric_bounds
                  if (b.value >= motion if b.strict else b.value > motion)]
    checks["soundness"] = not violations
    checks["motion_ge_dmin"] = motion >= dm
    if cfg.is_primitive and d >= 1:
        rel_d = max(cfg.diameters[1:])
        checks["relation_diameters"] = rel_d <= d
        checks["dmin_valency_bound"] = dm * rel_d >= n - cfg.k_max
    if k >= 3:
        imp = detect_imprimitivity(array)
        checks["imprimitivity_flags"] = (imp.bipartite == gr.is_bipartite(g)
                                         and imp.antipodal == gr.is_antipodal(g))
        if imp.bipartite and d >= 2:
            halves = gr.halved_graphs(g)
            checks["halved_not_bipartite"] = not any(gr.is_bipartite(h) for h in halves)
            if d >= 3:
                mh = [exact_motion(h)[0] for h in halves]
                checks["halved_motion_sum"] = motion >= sum(mh)
        if imp.antipodal and d >= 3:
            f = gr.folded_graph(g)
            mf = exact_motion(f)[0]
            checks["folded_motion_scaling"] = motion * f.n >= mf * n
    if d >= 2:
        geo = None
        if spec.m_integer is not None:
            try:
                geo = gr.find_clique_geometry(g, array, spec, work_cap=GEOMETRY_WORK_CAP)
            except DrgError as exc:
                notes["geometry"] = type(exc).__name__
        if geo is not None:
            # every vertex lies in -m cliques; local graphs all connected or all not
            checks["cliques_per_vertex"] = set(geo.cliques_per_vertex(n)) == {-spec.m_integer}
            checks["local_graphs_uniform"] = len(set(gr.neighborhood_connectivity(g))) == 1
        if p.lam > spec.m ** 2 * p.mu:
            checks["bang_koolen_geometry"] = geo is not None
    if d >= 2 and p.lam * p.lam >= 4 * k * p.mu and p.lam > 0:
        mc = gr.metsch_clique(g, array)
        checks["metsch_clique"] = 2 * len(mc.clique) >= p.lam
    return {
        "name": entry.name,
        "source": entry.source,
        "n": n,
        "k": k,
        "d": d,
        "array": str(array),
        "family": [str(t) for t in rep.family],
        "best_bound": None if rep.best_bound is None else str(rep.best_bound),
        "motion": motion,
        "motion_method": how,
        "dmin": dm,
        "P": str(gw.P),
        "expansion": {"mode": exp.mode, "ratio": str(exp.ratio), "bound": str(exp.bound)},
        "violations": violations,
        "checks": checks,
        "notes": notes,
        "pass": all(checks.values()),
    }


def run_catalog(entries: list[Entry] | None = None, seed: int = 1, samples: int = SAMPLES) -> dict:
    entries = entries if entries is not None else build_catalog()
    rows = [run_entry(e, seed=seed, samples=samples) for e in entries]
    unrealized = unrealized_arrays(entries)
    return {
        "rows": rows,
        "graphs": len(rows),
        "failures": [r["name"] for r in rows if not r["pass"]],
        "unrealized_arrays": len(unrealized),
        "pass": all(r["pass"] for r in rows),
    }


def summary_table(result: dict) -> str:
    head = f"{'graph':<18}{'n':>4}{'k':>4}{'d':>3}  {'best bound':>22}{'motion':>8}  status"
    lines = [head, "-" * len(head)]
    for r in result["rows"]:
        bb = r["best_bound"] if r["best_bound"] is not None else "-"
        if r["family"]:
            bb = f"{bb} [{r['family'][0]}]" if r["best_bound"] else f"[{r['family'][0]}]"
        lines.append(f"{r['name']:<18}{r['n']:>4}{r['k']:>4}{r['d']:>3}  {bb:>22}{r['motion']:>8}  "
                     f"{'pass' if r['pass'] else 'FAIL'}")
    lines.append(f"{result['graphs']} graphs, {len(result['failures'])} failures, "
                 f"{result['unrealized_arrays']} searched arrays without a construction")
    return "\n".join(lines)
