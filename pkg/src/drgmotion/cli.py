"""Command-line front end: ``drgmotion <subcommand> ...``.

Exit codes: 0 ok, 1 library error (class name printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from . import __version__
from . import graphs as gr
from .arrays import FamilyTag, IntersectionArray, SphereOrderWarning, derive, detect_imprimitivity
from .errors import DrgError
from .spectrum import spectrum


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


def _load_array(text: str) -> IntersectionArray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--array is not JSON: {exc}") from None
    return IntersectionArray.from_dict(obj)


def _load_graph(path: str):
    try:
        return gr.read_edge_list(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _input(args):
    """(array, graph) from --array or --graph."""
    if getattr(args, "graph", None):
        g = _load_graph(args.graph)
        return gr.check_drg(g), g
    if getattr(args, "array", None):
        return _load_array(args.array), None
    raise UsageError("need --array or --graph")


def _need_graph(args):
    if not args.graph:
        raise UsageError("need --graph")
    return _load_graph(args.graph)


# -- subcommands -------------------------------------------------------------------------

def cmd_validate(args):
    array = _load_array(args.array)
    p = derive(array)
    out = {"array": array.to_dict(), "valid": True, "n": p.n, "k": p.k, "lambda": p.lam, "mu": p.mu,
           "sphere_sizes": list(p.k_i), "k_max": p.k_max, "a": list(p.a)}
    text = f"{array}: valid, n={p.n}, k={p.k}, lambda={p.lam}, mu={p.mu}, spheres={list(p.k_i)}"
    return out, text


def cmd_analyze(args):
    from .certifier import certify

    array, g = _input(args)
    rep = certify(array, g)
    return rep.to_dict(), rep.text()


def cmd_generate(args):
    fam = args.family.lower()
    if fam == "johnson":
        tag = FamilyTag.johnson(args.s, args.d)
    elif fam == "hamming":
        tag = FamilyTag.hamming(args.d, args.s)
    elif fam == "crown":
        tag = FamilyTag.crown(args.m if args.m is not None else args.s)
    elif fam == "cycle":
        tag = FamilyTag.cycle(args.n if args.n is not None else args.s)
    else:
        raise UsageError(f"unknown family {args.family}")
    g = gr.build_family(tag)
    gr.write_edge_list(g, args.out)
    out = {"family": str(tag), "n": g.n, "edges": g.m, "path": args.out}
    return out, f"wrote {tag}: {g.n} vertices, {g.m} edges to {args.out}"


def cmd_check_drg(args):
    g = _load_graph(args.graph)
    array = gr.check_drg(g)
    return array.to_dict(), f"distance-regular with array {array}"


def cmd_motion(args):
    from .groups import enumerate_chain, motion_exact, motion_search, stabilizer_chain

    if args.certify:
        from .certifier import certify

        array, g = _input(args)
        rep = certify(array, g)
        best = rep.best_bound
        out = {"best_bound": None if best is None else str(best),
               "family": [str(t) for t in rep.family], "result": rep.result}
        return out, f"certified motion >= {best}" + (f"; family {out['family']}" if rep.family else "")
    g = _need_graph(args)
    chain = stabilizer_chain(g)
    if chain.order <= args.cap:
        value, witness = motion_exact(enumerate_chain(chain, args.cap))
        how = "enumeration"
    else:
        value, witness = motion_search(g, chain)
        how = "search"
    out = {"motion": value, "group_order": chain.order, "witness": [int(x) for x in witness], "method": how}
    return out, str(value)


def cmd_expansion(args):
    from .config import CoherentConfiguration, expansion_check

    g = _need_graph(args)
    cfg = CoherentConfiguration.from_drg(g)
    mode = "exhaustive" if args.exhaustive else "sampled"
    res = expansion_check(cfg, args.relation, mode=mode, seed=args.seed, samples=args.samples)
    out = {"ratio": str(res.ratio), "bound": str(res.bound), "witness": list(res.witness),
           "checked": res.checked, "mode": res.mode}
    return out, f"min |boundary|/|S| = {res.ratio} >= {res.bound} over {res.checked} sets ({res.mode})"


def cmd_dmin(args):
    from .config import CoherentConfiguration, d_min, d_min_lower_bounds

    array, g = _input(args)
    out = {}
    cfg = None
    if g is not None:
        cfg = CoherentConfiguration.from_drg(g, array)
        value, wit = d_min(cfg)
        out["dmin"] = value
        out["witness"] = list(wit)
    if array.k > 2 and detect_imprimitivity(array).primitive:
        out.update(_fmt(d_min_lower_bounds(array, cfg)))
    text = ", ".join(f"{k}={v}" for k, v in out.items())
    return out, text


def cmd_geometry(args):
    g = _need_graph(args)
    array = gr.check_drg(g)
    spec = spectrum(array)
    out = {}
    try:
        geo = gr.find_clique_geometry(g, array, spec)
        out["geometry"] = {"cliques": [list(c) for c in geo.cliques],
                           "per_vertex": sorted(set(geo.cliques_per_vertex(g.n)))}
        text = f"Delsarte geometry: {len(geo.cliques)} cliques of size {len(geo.cliques[0])}"
    except DrgError as exc:
        out["geometry"] = None
        out["geometry_error"] = type(exc).__name__
        text = f"no Delsarte geometry ({type(exc).__name__})"
    try:
        mc = gr.metsch_clique(g, array)
        out["metsch"] = {"clique": list(mc.clique), "target": mc.target, "meq": mc.meq_holds}
        text += f"; clique of size {len(mc.clique)} >= {mc.target}"
    except DrgError as exc:
        out["metsch"] = None
        out["metsch_error"] = type(exc).__name__
    return out, text


def cmd_base(args):
    from .groups import base_via_splitting

    g = _need_graph(args)
    res = base_via_splitting(g, seed=args.seed, check_primitive=not args.no_primitive_check)
    out = {"base": list(res.base), "halving": list(res.halving), "group_order": res.group_order,
           "trace": list(res.trace)}
    return out, f"base {list(res.base)} (halving set {list(res.halving)}, |Aut| = {res.group_order})"


def cmd_catalog(args):
    from .catalog import SAMPLES, run_catalog, summary_table

    res = run_catalog(seed=args.seed, samples=args.samples or SAMPLES)
    return res, summary_table(res)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="drgmotion", description="Motion bounds for distance-regular graphs.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--threads", type=int, default=None, help="accepted for compatibility; runs single-threaded")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        # global flags also accepted after the subcommand
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--threads", type=int, default=argparse.SUPPRESS)
        return sp

    sp = add("validate", cmd_validate, "validate an intersection array")
    sp.add_argument("--array", required=True)
    for name, fn, h in (("analyze", cmd_analyze, "run the certifier"), ("dmin", cmd_dmin, "D_min and its bounds")):
        sp = add(name, fn, h)
        sp.add_argument("--array")
        sp.add_argument("--graph")
    sp = add("generate", cmd_generate, "write a family graph")
    sp.add_argument("--family", required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--out", required=True)
    sp = add("check-drg", cmd_check_drg, "verify distance-regularity")
    sp.add_argument("--graph", required=True)
    sp = add("motion", cmd_motion, "exact motion or certified bound")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--certify", action="store_true")
    sp.add_argument("--graph")
    sp.add_argument("--array")
    sp.add_argument("--cap", type=int, default=1_000_000)
    sp = add("expansion", cmd_expansion, "edge expansion check")
    sp.add_argument("--graph", required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--relation", type=int, default=1)
    sp = add("geometry", cmd_geometry, "Delsarte and Metsch cliques")
    sp.add_argument("--graph", required=True)
    sp = add("base", cmd_base, "base via halving and splitting sets")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--no-primitive-check", action="store_true")
    sp = add("catalog", cmd_catalog, "run all checks on the built-in catalog")
    sp.add_argument("--samples", type=int, default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.command == "generate":
            fam = args.family.lower()
            if fam in ("johnson", "hamming") and (args.s is None or args.d is None):
                raise UsageError("--s and --d are required for this family")
        if args.command == "motion" and not args.certify and not args.graph:
            raise UsageError("motion --exact needs --graph")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SphereOrderWarning)
            out, text = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DrgError as exc:
        name = type(exc).__name__
        if args.json:
            print(json.dumps({"error": name, "message": str(exc)}, sort_keys=True, indent=2))
        else:
            print(f"{name}: {exc}")
        return 1
    if args.json:
        print(json.dumps(_fmt(out), sort_keys=True, indent=2))
    else:
        print(text)
    if args.command == "catalog" and not out["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
