"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import math
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from drgmotion import graphs as gr
from drgmotion.arrays import FamilyTag, derive, diameter_log_bound_holds, enumerate_arrays
from drgmotion.config import CoherentConfiguration, d_min, expansion_check
from drgmotion.groups import automorphisms, base_via_splitting, is_base, motion_exact, stabilizer_orbits
from drgmotion.spectrum import spectrum

NAMED = ["Petersen", "Johnson(4,2)", "Johnson(5,2)", "Johnson(6,3)", "Hamming(2,3)", "Hamming(3,2)",
         "Hamming(3,3)", "Crown(5)", "Crown(6)", "Crown(7)", "Crown(8)", "Cycle(5)", "Cycle(6)"]


@pytest.fixture()
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number:>2}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else ""))
        assert ok, detail
    return emit


def rows_by_name(run):
    return {r["name"]: r for r in run.result["rows"]}


def test_01_catalog_soundness(catalog_run, report):
    rows = catalog_run.result["rows"]
    names = {r["name"] for r in rows}
    violations = [(r["name"], r["violations"]) for r in rows if r["violations"] or not r["checks"]["soundness"]]
    # Crown(4) is listed under its other name Hamming(3,2)
    named_ok = set(NAMED) <= names
    ok = not violations and named_ok and catalog_run.seconds <= 60 and catalog_run.result["pass"]
    report(1, "catalog soundness", ok,
           f"{len(rows)} graphs, {len(violations)} violations, {catalog_run.seconds:.1f} s")


def test_02_spot_values(petersen, q3, j63, h33, report):
    got = {name: motion_exact(automorphisms(g))[0] for name, g in
           (("Petersen", petersen), ("Q3", q3), ("J(6,3)", j63), ("H(3,3)", h33))}
    dm = d_min(CoherentConfiguration.from_drg(petersen))[0]
    ok = got == {"Petersen": 6, "Q3": 4, "J(6,3)": 12, "H(3,3)": 18} and dm == 6
    report(2, "exact spot values", ok, f"motions {got}, D_min(Petersen) = {dm}")


def test_03_geodesic_weight(catalog_run, report):
    rows = rows_by_name(catalog_run)
    all_ok = all(r["checks"]["geodesic_weight"] for r in rows.values())
    spots = {name: Fraction(rows[name]["P"]) for name in ("Cycle(5)", "Hamming(3,2)", "Petersen")}
    ok = all_ok and spots == {"Cycle(5)": 3, "Hamming(3,2)": 4, "Petersen": 5}
    report(3, "geodesic-weight invariance", ok, f"P spots {dict((k, str(v)) for k, v in spots.items())}")


def test_04_edge_expansion(catalog_run, report):
    t0 = time.perf_counter()
    small = [e for e in catalog_run.entries if e.graph.n <= 20]
    for e in small:
        res = expansion_check(CoherentConfiguration.from_drg(e.graph), mode="exhaustive")
        assert res.ratio >= res.bound
    elapsed = time.perf_counter() - t0
    rows = catalog_run.result["rows"]
    large = [r for r in rows if r["n"] > 20]
    sampled_ok = all(r["expansion"]["mode"] == "sampled" and r["checks"]["expansion"] for r in large)
    ok = elapsed <= 30 and sampled_ok and all(r["checks"]["expansion"] for r in rows)
    report(4, "edge expansion", ok,
           f"{len(small)} exhaustive in {elapsed:.1f} s, {len(large)} sampled with 1e5 subsets")


def test_05_spectral(catalog_run, report):
    rows = catalog_run.result["rows"]
    bad = [r["name"] for r in rows
           if not (r["checks"]["spectrum_match"] and r["checks"]["eigen_gap"] and r["checks"]["delsarte_cap"])]
    report(5, "spectral checks", not bad, f"{len(rows)} graphs, failures {bad}")


def test_06_parameter_identities(catalog_run, report):
    count, bad = 0, []
    for a in enumerate_arrays(12, 4):
        count += 1
        p = derive(a)
        ratios = [Fraction(p.k_i[i + 1], p.k_i[i]) for i in range(a.d)]
        ok = all(x >= y for x, y in zip(ratios, ratios[1:]))
        if a.d >= 2:
            ok = ok and 2 * p.lam <= p.k + p.mu and Fraction(p.k, p.mu) > ratios[1]
        if a.k >= 3:
            ok = ok and diameter_log_bound_holds(a) and a.d <= 5 * math.log2(p.n)
        if not ok:
            bad.append(str(a))
    rows = catalog_run.result["rows"]
    cat_bad = [r["name"] for r in rows
               if not all(r["checks"].get(c, True) for c in ("lambda_mu", "diameter_log", "ratio_chain"))]
    report(6, "parameter identities", not bad and not cat_bad,
           f"{count} arrays with k <= 12, d <= 4 and {len(rows)} catalog graphs")


def test_07_clique_geometry(h33, j63, report):
    per = {}
    for name, g in (("H(3,3)", h33), ("J(6,3)", j63)):
        arr = gr.check_drg(g)
        spec = spectrum(arr)
        geo = gr.find_clique_geometry(g, arr, spec)
        per[name] = (set(geo.cliques_per_vertex(g.n)), -spec.m_integer)
    h = gr.build_family(FamilyTag.hamming(2, 20))
    arr = gr.check_drg(h)
    p = derive(arr)
    mc = gr.metsch_clique(h, arr)
    ok = all(cnt == {m} for cnt, m in per.values()) and len(mc.clique) >= 9 \
        and p.lam ** 2 == 324 and 4 * p.k * p.mu == 304
    report(7, "clique geometry", ok, f"cliques per vertex {per}, Metsch clique size {len(mc.clique)}")


@pytest.mark.parametrize("name", ["Petersen", "J(6,3)", "H(3,3)"])
def test_08_base_pipeline(name, petersen, j63, h33, report):
    g = {"Petersen": petersen, "J(6,3)": j63, "H(3,3)": h33}[name]
    t0 = time.perf_counter()
    # Petersen has diameter 2 and J(6,3) is antipodal; both run with the matching check relaxed
    res = base_via_splitting(g, check_primitive=name != "J(6,3)", check_diameter=name != "Petersen")
    elapsed = time.perf_counter() - t0
    grp = automorphisms(g)
    halving_ok = 2 * max(len(o) for o in stabilizer_orbits(grp, res.halving)) <= g.n
    rounds_ok = True
    for r, h in ((res.split, g), (res.split2, gr.distance_i_graph(g, 2))):
        c = r.c
        want = 1 if c == 1 else max(1, math.ceil(-math.log2(h.m) / math.log2(1 - c)))
        rounds_ok = rounds_ok and r.rounds <= want
    pyb = [s for s in res.trace if s["step"] == "pyb_trick"][0]["trivial_stabilizer"]
    ok = halving_ok and rounds_ok and pyb and is_base(grp, res.base) and elapsed <= 120
    report(8, f"base pipeline on {name}", ok,
           f"base {list(res.base)}, rounds {res.split.rounds}/{res.split2.rounds}, {elapsed:.2f} s")


def test_09_imprimitive_reductions(q3, catalog_run, report):
    k4 = gr.complete_graph(4)
    halves = gr.halved_graphs(q3)
    halved_ok = all(gr.find_isomorphism(h, k4) is not None for h in halves)
    folded_ok = gr.find_isomorphism(gr.folded_graph(q3), k4) is not None
    rows = catalog_run.result["rows"]
    bip = [r["name"] for r in rows if "halved_motion_sum" in r["checks"]]
    anp = [r["name"] for r in rows if "folded_motion_scaling" in r["checks"]]
    inst_ok = all(r["checks"].get("halved_motion_sum", True) and r["checks"].get("folded_motion_scaling", True)
                  for r in rows)
    ok = halved_ok and folded_ok and inst_ok and bip and anp
    report(9, "imprimitive reductions", ok, f"{len(bip)} bipartite and {len(anp)} antipodal instances")


def test_10_determinism(report):
    cmd = [sys.executable, "-m", "drgmotion", "--json", "catalog"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    report(10, "determinism of catalog --json", a == b and len(a) > 0, f"{len(a)} bytes")
