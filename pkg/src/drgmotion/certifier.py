"""Motion certificates from intersection arrays.

The pipeline mirrors the case analysis for primitive and imprimitive
distance-regular graphs. Every numeric bound names the result it rests on;
bounds whose constant is not explicit are kept as ConditionalBound entries
and never counted in ``best_bound``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arrays import FamilyTag, IntersectionArray, derive, detect_imprimitivity, match_family
from .errors import (
    DiameterTooSmall,
    DrgError,
    HypothesisChainBroken,
    NotImprimitive,
    NotPrimitive,
    RecursionBottom,
)
from .spectrum import MATCH_TOL, Spectrum, exact_integer_root, spectrum

GRANULARITY = 10 ** 9


def _down(x: float) -> Fraction:
    """Largest multiple of 1e-9 not above x."""
    return Fraction(math.floor(x * GRANULARITY), GRANULARITY)


def _fmt(x) -> str | None:
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


@dataclass(frozen=True)
class Bound:
    """motion >= value (motion > value when ``strict``)."""

    prop: str
    value: Fraction
    justification: str
    strict: bool = False

    conditional = False

    def to_dict(self) -> dict:
        return {"prop": self.prop, "value": str(self.value), "conditional": False,
                "strict": self.strict, "justification": self.justification}


@dataclass(frozen=True)
class ConditionalBound:
    """A bound carrying an unspecified universal constant C."""

    prop: str
    form: str
    justification: str

    conditional = True

    def to_dict(self) -> dict:
        return {"prop": self.prop, "value": self.form, "conditional": True,
                "strict": False, "justification": self.justification}


@dataclass
class CertificateReport:
    array: IntersectionArray
    trace: list = field(default_factory=list)
    bounds: list = field(default_factory=list)
    family: tuple[FamilyTag, ...] = ()

    @property
    def numeric_bounds(self) -> list[Bound]:
        return [b for b in self.bounds if not b.conditional]

    @property
    def best_bound(self) -> Fraction | None:
        vals = [b.value for b in self.numeric_bounds]
        return max(vals) if vals else None

    @property
    def result(self) -> str:
        if self.family and self.numeric_bounds:
            return "family+bound"
        if self.family:
            return "family"
        if self.numeric_bounds:
            return "bound"
        if self.bounds:
            return "conditional"
        return "none"

    def step(self, prop: str, verdict: str, **hypotheses) -> None:
        self.trace.append({"prop": prop, "hypotheses": {k: _fmt(v) for k, v in hypotheses.items()},
                           "verdict": verdict})

    def add(self, bound) -> None:
        self.bounds.append(bound)

    def to_dict(self) -> dict:
        return {
            "input": self.array.to_dict(),
            "trace": self.trace,
            "bounds": [b.to_dict() for b in self.bounds],
            "family": [str(t) for t in self.family],
            "best_bound": _fmt(self.best_bound),
            "result": self.result,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def text(self) -> str:
        lines = [f"array {self.array}"]
        for s in self.trace:
            hyp = ", ".join(f"{k}={v}" for k, v in s["hypotheses"].items())
            lines.append(f"  [{s['prop']}] {s['verdict']}" + (f" ({hyp})" if hyp else ""))
        for b in self.bounds:
            tag = " (conditional)" if b.conditional else ""
            rel = ">" if getattr(b, "strict", False) else ">="
            lines.append(f"  bound {rel} {b.to_dict()['value']} by {b.prop}{tag}")
        if self.family:
            lines.append("  family: " + ", ".join(str(t) for t in self.family))
        lines.append(f"  best bound: {_fmt(self.best_bound)}")
        return "\n".join(lines)


# -- spectral helpers ---------------------------------------------------------------

def _exact_eigs(array: IntersectionArray, spec: Spectrum):
    """(theta, m) as ints when exact, else None."""
    th = exact_integer_root(array, spec.theta) if array.d >= 1 else None
    return th, spec.m_integer


def zerow_bound(array: IntersectionArray, spec: Spectrum) -> Bound:
    p = derive(array)
    k, n = p.k, p.n
    q = max(p.lam, p.mu)
    th, m = _exact_eigs(array, spec)
    if th is not None and m is not None:
        xi = max(th, -m)
        value = Fraction(n * (k - xi - q), k)
        how = f"xi = {xi} exact"
    else:
        xi_up = spec.xi + MATCH_TOL * k
        value = _down(n * (k - xi_up - q) / k)
        how = f"xi ~ {spec.xi!r} rounded up"
    return Bound("zero_weight_radius", value, f"n(k - xi - q)/k with q = max(lambda, mu) = {q}; {how}")


def unconditional_bounds(array: IntersectionArray, spec: Spectrum | None = None, cfg=None,
                         check_primitive: bool = True) -> list[Bound]:
    """Zero-weight, D_min-by-valency and D_min-by-(b, c) bounds.

    ``cfg`` (a CoherentConfiguration) replaces the diameter surrogate with the
    true relation diameters.
    """
    from .config import d_min_lower_bounds

    spec = spec or spectrum(array)
    if check_primitive and not detect_imprimitivity(array).primitive:
        raise NotPrimitive(f"{array} is not primitive")
    if array.d < 2:
        return [zerow_bound(array, spec)]
    lb = d_min_lower_bounds(array, cfg, check_primitive=False)
    out = [zerow_bound(array, spec)]
    out.append(Bound("dmin_max_valency", lb["dmin_bound"],
                     f"motion >= D_min >= (n - k_max)/{lb['relation_diameter']}"))
    if lb["bandc_bound"] is not None:
        out.append(Bound("dmin_intersection_numbers", lb["bandc_bound"],
                         f"motion >= D_min >= eps n/d with eps = {lb['epsilon']}"))
    return out


# -- the geometric dichotomy ------------------------------------------------------------

@dataclass(frozen=True)
class GeometricCertificate:
    checks: dict  # name -> bool

    @property
    def all_hold(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class GeomOutcome:
    branch: str  # "large_c2", "small_lambda", "geometric"
    bound: Bound | None
    certificate: GeometricCertificate | None
    hypotheses: dict


def geom_certificate(array: IntersectionArray, spec: Spectrum | None = None,
                     check_primitive: bool = True) -> GeomOutcome:
    """Either a numeric bound, or a verified Delsarte-geometric certificate."""
    from .errors import ValencyTwo

    if array.k < 3:
        raise ValencyTwo(f"valency {array.k}")
    d = array.d
    if d < 3:
        raise DiameterTooSmall(f"diameter {d} < 3")
    if check_primitive and not detect_imprimitivity(array).primitive:
        raise NotPrimitive(f"{array} is not primitive")
    spec = spec or spectrum(array)
    p = derive(array)
    k, n, lam, mu, c2 = p.k, p.n, p.lam, p.mu, array.c_at(2)
    c2_threshold = Fraction(k, 20 * d ** 4)
    hyp = {"c2": c2, "k/(20d^4)": c2_threshold, "lambda": lam, "k/(2d)": Fraction(k, 2 * d)}

    if c2 > c2_threshold:
        # ratio chain k_{i+1}/k_i <= b_1/c_2 < 20 d^4 gives k_max/(20d^4) < n - k_max
        chain_ok = Fraction(k, c2) < 20 * d ** 4 and Fraction(p.k_max, 20 * d ** 4) < n - p.k_max
        if not chain_ok:
            raise HypothesisChainBroken("k_max/(20d^4) < n - k_max fails", step="large_c2")
        hyp["k_max"] = p.k_max
        if 2 * p.k_max >= n:
            b = Bound("large_c2_dmin", Fraction(n, 40 * d ** 5), "c2 > k/(20d^4), k_max >= n/2: D_min >= n/(40d^5)")
        else:
            b = Bound("large_c2_dmin", Fraction(n, 2 * d), "c2 > k/(20d^4), k_max < n/2: D_min > n/(2d)")
        return GeomOutcome("large_c2", b, None, hyp)

    if Fraction(lam) < Fraction(k, 2 * d):
        b = Bound("small_lambda_expansion", Fraction(n, 2),
                  "c2 <= k/(20d^4) and lambda < k/(2d): no automorphism has support <= n/2", strict=True)
        return GeomOutcome("small_lambda", b, None, hyp)

    m = spec.m
    guard = MATCH_TOL * k
    checks = {
        "lambda^2 >= 4 k mu": lam * lam >= 4 * k * mu,
        "-m < 5d": -m + guard < 5 * d,
        "lambda > m^2 mu": (lam > spec.m_integer ** 2 * mu) if spec.m_integer is not None
        else lam > (m * m) * mu + guard,
        "mu < lambda": mu < lam,
    }
    cert = GeometricCertificate(checks)
    if not cert.all_hold:
        failed = [name for name, ok in checks.items() if not ok]
        raise HypothesisChainBroken(f"geometric chain fails at {failed[0]}", step=failed[0])
    return GeomOutcome("geometric", None, cert, hyp)


# -- primitive pipeline -----------------------------------------------------------------

def epsilon_for(d: int) -> Fraction:
    return Fraction(1, 6 * (5 * d) ** 4 * d)


def eta_for(d: int) -> Fraction:
    return Fraction(1, 8 * d * d)


def primitive_pipeline(array: IntersectionArray, spec: Spectrum | None = None, graph=None,
                       check_primitive: bool = True) -> CertificateReport:
    spec = spec or spectrum(array)
    rep = CertificateReport(array)
    prim = detect_imprimitivity(array)
    if check_primitive and not prim.primitive:
        raise NotPrimitive(f"{array} is not primitive")
    p = derive(array)
    n, d = p.n, array.d

    cfg = None
    if graph is not None:
        from .config import CoherentConfiguration, d_min

        cfg = CoherentConfiguration.from_drg(graph, array)
        value, pair = d_min(cfg)
        rep.add(Bound("dmin_exact", Fraction(value), f"motion >= D_min = {value}, witness pair {pair}"))
        rep.step("dmin_exact", "computed on the explicit graph", d_min=value)
    for b in unconditional_bounds(array, spec, cfg if prim.primitive else None, check_primitive=False):
        rep.add(b)
        rep.step(b.prop, f"motion >= {b.value}")

    fam = _family(rep, array, graph)
    if fam:
        rep.family = fam
        return rep
    if d < 3:
        rep.step("case_analysis", "not applicable below diameter 3", d=d)
        return rep

    rep.add(ConditionalBound("primitive_universal", f"C*{n}/{d ** 6}",
                             "motion >= C n/d^6 unless Johnson or Hamming"))
    outcome = geom_certificate(array, spec, check_primitive=False)
    rep.step("geometric_dichotomy", outcome.branch, **outcome.hypotheses)
    if outcome.bound is not None:
        rep.add(outcome.bound)
        return rep
    rep.step("geometric_chain", "Delsarte-geometric", **outcome.certificate.checks)
    _main_cases(rep, array, spec, graph)
    return rep


def _main_cases(rep: CertificateReport, array: IntersectionArray, spec: Spectrum, graph) -> None:
    p = derive(array)
    n, k, d, lam, mu = p.n, p.k, array.d, p.lam, p.mu
    b1 = array.b_at(1)
    eps = epsilon_for(d)
    guard = MATCH_TOL * k
    theta, m = spec.theta, spec.m

    for j in range(1, d):
        if array.b_at(j) >= eps * k and array.c_at(j + 1) >= eps * k:
            rep.add(Bound("dmin_intersection_numbers", eps * n / d, f"b_{j}, c_{j + 1} >= eps k with eps = {eps}"))
            rep.step("epsilon_b_and_c", "applies", j=j, eps=eps)
            return

    if theta + guard < float((1 - eps) * b1):
        chain = {
            "-m <= (1-eps) b1": -m + guard <= float((1 - eps) * b1),
            "mu <= lambda": mu <= lam,
            "b1 >= k/4": 4 * b1 >= k,
        }
        if not all(chain.values()):
            bad = next(name for name, ok in chain.items() if not ok)
            raise HypothesisChainBroken(f"spectral case fails at {bad}", step=bad)
        rep.add(Bound("spectral_gap_case", eps * n / 4, "zero-weight bound with xi <= (1-eps) b1"))
        rep.step("spectral_gap_case", "bound n eps/4", eps=eps, **chain)
        return

    if mu >= 3:
        hyp = {
            "k >= max(|m|^3, 29)": k + guard >= max(abs(m) ** 3, 29),
            "theta + 1 > (1-eps) b1": theta + 1 > float((1 - eps) * b1),
            "eps < 0.0065": eps < Fraction(65, 10000),
        }
        if graph is not None:
            from .graphs import neighborhood_connectivity

            hyp["neighborhoods connected"] = all(neighborhood_connectivity(graph))
            verdict = "hypotheses verified" if all(hyp.values()) else "hypotheses fail"
        else:
            verdict = "hypotheses partially verified (neighborhood connectivity needs the graph)"
        s = Fraction(k, d) + d
        predicted = f"Johnson({s},{d})" if s.denominator == 1 else None
        rep.step("johnson_recognition", verdict, predicted=predicted, **hyp)
        return

    if mu == 2:
        hyp = {
            "eps < 1/(6 m^4 d)": float(eps) < 1 / (6 * m ** 4 * d),
            "some i: b_i, c_i <= eps k": any(array.b_at(i) <= eps * k and array.c_at(i) <= eps * k
                                             for i in range(1, d + 1)),
        }
        s = Fraction(k, d) + 1
        predicted = f"Hamming({d},{s})" if s.denominator == 1 else None
        rep.step("hamming_recognition", "hypotheses verified" if all(hyp.values()) else "hypotheses fail",
                 predicted=predicted, **hyp)
        return

    # mu == 1
    if spec.m_integer == -2:
        if k > 4:
            rep.add(Bound("geometric_smallest_eigenvalue_two", Fraction(n, 16), "mu = 1, m = -2, k > 4"))
            rep.step("geometric_smallest_eigenvalue_two", "bound n/16", k=k)
        else:
            rep.step("geometric_smallest_eigenvalue_two", "k <= 4: not applicable", k=k)
        return
    if -m + guard >= 3 or (spec.m_integer is not None and spec.m_integer <= -3):
        eta = eta_for(d)
        hyp = {
            "xi <= k(1-eta)": spec.xi + guard <= float(k * (1 - eta)),
            "k >= m^2": k >= m * m + guard,
            "k >= 4(-m)/eta": k >= float(4 * -m / eta) + guard,
        }
        if all(hyp.values()):
            rep.add(Bound("geometric_mu_one", eta * n / 4, f"mu = 1, -m >= 3, eta = {eta}"))
            rep.step("geometric_mu_one", "bound n eta/4", eta=eta, **hyp)
        else:
            rep.step("geometric_mu_one", "hypotheses fail", eta=eta, **hyp)
        return
    raise HypothesisChainBroken(f"mu = 1 with -3 < m = {m!r} != -2", step="integral_m")


# -- imprimitive pipeline ------------------------------------------------------------------

def imprimitive_pipeline(graph, array: IntersectionArray | None = None) -> CertificateReport:
    from .graphs import check_drg, folded_graph, halved_graphs, is_antipodal, is_bipartite, is_primitive

    array = array or check_drg(graph)
    imp = detect_imprimitivity(array)
    if imp.primitive:
        raise NotImprimitive(f"{array} is primitive")
    d = array.d
    if d < 3:
        raise DiameterTooSmall(f"diameter {d} < 3")
    p = derive(array)
    n = p.n
    spec = spectrum(array)
    rep = CertificateReport(array)
    z = zerow_bound(array, spec)
    rep.add(z)
    rep.step(z.prop, f"motion >= {z.value}")
    _exact_dmin(rep, graph)

    fam = _family(rep, array, graph)
    if fam:
        rep.family = fam
        return rep
    bip, anp = is_bipartite(graph), is_antipodal(graph)
    rep.step("imprimitivity", "explicit graph", bipartite=bip, antipodal=anp)

    if bip:
        halves = halved_graphs(graph)
        try:
            subs = [_sub_report(h) for h in halves]
        except RecursionBottom as exc:
            rep.step("halved_sum", f"skipped: {exc}")
            subs = None
        hyp = {"halved not bipartite": not any(is_bipartite(h) for h in halves)}
        if d % 2 == 1 or not anp:
            hyp["halved primitive"] = all(is_primitive(h) for h in halves)
        rep.step("halved_structure", "checked", **hyp)
        if not all(hyp.values()):
            raise HypothesisChainBroken("halved graph structure", step="halved_structure")
        if subs is not None:
            vals = [s.best_bound for s in subs]
            if all(v is not None for v in vals):
                total = sum(vals)
                rep.add(Bound("halved_sum", total, f"motion >= motion(G+) + motion(G-) >= {vals[0]} + {vals[1]}"))
                rep.step("halved_sum", f"motion >= {total}")
        if d == 3:
            rep.add(Bound("bipartite_diameter_three", Fraction(n, 6), "bipartite, d = 3, not a crown graph"))
            rep.step("bipartite_diameter_three", "bound n/6")
        elif not anp:
            rep.add(ConditionalBound("halved_primitive_universal", f"C*{n}/{2 * (d // 2) ** 6}",
                                     "halved graph primitive: motion >= gamma_(d/2) n / 2"))
        elif d == 4:
            rep.add(Bound("bipartite_antipodal_diameter_four", Fraction(15, 100) * n, "bipartite and antipodal, d = 4"))
            rep.step("bipartite_antipodal_diameter_four", "bound 0.15 n")
        elif d % 2 == 0:
            rep.add(ConditionalBound("folded_bipartite_universal", f"min(C*{n}/{2 * (d // 2) ** 6}, {n}/6)",
                                     "folded graph bipartite, not antipodal"))

    if anp and (d % 2 == 1 or not bip):
        folded = folded_graph(graph)
        nf = folded.n
        prim = is_primitive(folded) if folded.diameter >= 1 else False
        rep.step("folded_structure", "checked", folded_primitive=prim, folded_n=nf)
        if not prim:
            raise HypothesisChainBroken("folded graph is not primitive", step="folded_structure")
        try:
            sub = _sub_report(folded)
            if sub.best_bound is not None and sub.best_bound > 0:
                alpha = sub.best_bound / nf
                rep.add(Bound("folded_scaling", alpha * n, f"motion(folded) >= {alpha} * {nf}"))
                rep.step("folded_scaling", f"motion >= {alpha * n}", alpha=alpha)
        except RecursionBottom as exc:
            rep.step("folded_scaling", f"skipped: {exc}")
        if d == 3:
            rep.add(Bound("antipodal_diameter_three", Fraction(n, 13), "antipodal, d = 3"))
            rep.step("antipodal_diameter_three", "bound n/13")
        elif nf <= 28:
            rep.add(Bound("antipodal_small_folded", Fraction(n, 14), f"antipodal, folded graph on {nf} <= 28 vertices"))
            rep.step("antipodal_small_folded", "bound n/14")
        else:
            rep.add(ConditionalBound("antipodal_universal", f"min(C*{n}/{(d // 2) ** 6}, {n}/8)",
                                     "folded graph primitive"))
    return rep


def _family(rep: CertificateReport, array: IntersectionArray, graph) -> tuple[FamilyTag, ...]:
    """Array-level family match, confirmed by isomorphism when a graph is given."""
    from .graphs import build_family, find_isomorphism

    fam = match_family(array)
    rep.step("family_match", "matched" if fam else "no family", tags=", ".join(str(t) for t in fam) or None)
    if fam and graph is not None:
        confirmed = tuple(t for t in fam if find_isomorphism(graph, build_family(t)) is not None)
        rep.step("family_isomorphism", "confirmed" if confirmed else "graph is not the family graph",
                 tags=", ".join(str(t) for t in confirmed) or None)
        fam = confirmed
    return fam


def _exact_dmin(rep: CertificateReport, graph) -> None:
    from .config import CoherentConfiguration, d_min

    cfg = CoherentConfiguration.from_drg(graph)
    value, pair = d_min(cfg)
    rep.add(Bound("dmin_exact", Fraction(value), f"motion >= D_min = {value}, witness pair {pair}"))
    rep.step("dmin_exact", "computed on the explicit graph", d_min=value)


def _sub_report(sub_graph) -> CertificateReport:
    from .graphs import check_drg

    if sub_graph.diameter < 2:
        raise RecursionBottom(f"reduced graph has diameter {sub_graph.diameter}")
    return certify(check_drg(sub_graph), sub_graph)


# -- dispatcher ----------------------------------------------------------------------------

def certify(array: IntersectionArray, graph=None) -> CertificateReport:
    """Route an array (and optional graph) to the matching pipeline."""
    if array.k <= 2:
        rep = CertificateReport(array)
        rep.family = _family(rep, array, graph)
        rep.step("valency_two", "cycles are excluded; no bound certified", k=array.k)
        return rep
    spec = spectrum(array)
    imp = detect_imprimitivity(array)
    if array.d == 1:
        rep = CertificateReport(array)
        b = zerow_bound(array, spec)
        rep.add(b)
        rep.step(b.prop, f"motion >= {b.value}")
        if graph is not None:
            _exact_dmin(rep, graph)
        return rep
    if imp.primitive:
        return primitive_pipeline(array, spec, graph)
    if graph is None or array.d < 3:
        rep = CertificateReport(array)
        b = zerow_bound(array, spec)
        rep.add(b)
        rep.step(b.prop, f"motion >= {b.value}")
        rep.family = _family(rep, array, graph)
        reason = "diameter below 3" if array.d < 3 else "reductions need the explicit graph"
        rep.step("imprimitive", f"no reduction: {reason}", bipartite=imp.bipartite, antipodal=imp.antipodal)
        if graph is not None:
            _exact_dmin(rep, graph)
        return rep
    return imprimitive_pipeline(graph, array)


def safe_certify(array: IntersectionArray, graph=None) -> tuple[CertificateReport | None, str | None]:
    try:
        return certify(array, graph), None
    except DrgError as exc:
        return None, f"{type(exc).__name__}: {exc}"
