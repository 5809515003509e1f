"""Command line entry point.

    antialg check-axioms --algebra asl2
    antialg cohomology --algebra asl2 --module trivial --max-degree 2 --json

Exit codes: 0 all checks pass, 1 violations found, 2 input error.
``ANTIALG_CONVENTIONS`` may point at a JSON file pinning calibrated choices
(see ``DEFAULT_CONVENTIONS``).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import catalog
from .graded import GradedVector, Report, check_antialgebra, check_superalgebra

log = logging.getLogger("antialg")

DEFAULT_CONVENTIONS = {
    "cohomology": "calibrated",
    "gamma": "printed",
    "geometry": {"sigma": 1, "order": "YX", "koszul": True},
    "frep": {"c_l": "1/2", "c_e": "1/2", "odd_sign": -1},
    "superize": {"sym": "half-sum", "odd_factor": "1"},
    "derivation_odd_sign": 1,
}


class InputError(Exception):
    pass


def load_conventions(env=None) -> dict:
    env = os.environ if env is None else env
    conv = json.loads(json.dumps(DEFAULT_CONVENTIONS))
    path = env.get("ANTIALG_CONVENTIONS")
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                pinned = json.load(fh)
        except (OSError, ValueError) as exc:
            raise InputError("cannot read ANTIALG_CONVENTIONS file %s: %s" % (path, exc))
        for k, v in pinned.items():
            if k not in conv:
                raise InputError("unknown convention key %r" % k)
            if isinstance(conv[k], dict):
                conv[k].update(v)
            else:
                conv[k] = v
    return conv


def _algebra(args):
    if args.spec:
        return catalog.load_spec(args.spec)
    if not args.algebra:
        raise InputError("give --algebra or --spec")
    A = catalog.by_name(args.algebra)
    if A.is_family and args.window is not None:
        A = A.with_window(_window(args.window))
    if A.is_family and not A.even_basis:
        raise InputError("window %s is too small for %s" % (A.window, A.name))
    return A


def _window(w, least=Fraction(1, 2)):
    w = Fraction(w)
    if w < least:
        raise InputError("window %s is too small (need at least %s)" % (w, least))
    return w


def _summary(rep: Report):
    fams = sorted(rep.checked)
    bad = set(rep.failed())
    lines = ["%s: %d/%d identity families pass" % (rep.subject, len(fams) - len(bad), len(fams))]
    for v in rep.violations[:20]:
        d = v.defect if isinstance(v.defect, (str, GradedVector)) else json.dumps(v.to_json()["defect"], sort_keys=True)
        lines.append("  %s at (%s): %s" % (v.identity, ", ".join(map(str, v.witness)), d))
    if len(rep.violations) > 20:
        lines.append("  ... %d more" % (len(rep.violations) - 20))
    return "\n".join(lines)


def cmd_check_axioms(args, conv):
    A = _algebra(args)
    rep = check_antialgebra(A) if A.kind == "antialgebra" else check_superalgebra(A)
    return rep.ok, rep.to_json(), _summary(rep)


def cmd_derivations(args, conv):
    from . import derivations as der
    A = _algebra(args)
    s = conv["derivation_odd_sign"]
    if A.is_family:
        if A.family_name != "AK1":
            raise InputError("derivations of family algebras: only ak1 is supported")
        rep = der.check_K1_action(int(A.window), odd_sign=s)
        return rep.ok, rep.to_json(), _summary(rep)
    Der, ops = der.derivation_algebra(A, odd_sign=s)
    jac = check_superalgebra(Der)
    out = {"algebra": A.name, "dims": list(Der.dims), "super_jacobi": jac.ok,
           "table": catalog.spec_dict(Der)}
    ok = jac.ok
    if A.name == "asl2":
        T, rep = der.der_asl2_base_change(A)
        out["osp12_base_change"] = {str(k): v.to_json() for k, v in T.items()}
        out["osp12_match"] = rep.ok and rep.info["rank"] == 5
        ok = ok and out["osp12_match"]
    text = "Der(%s): dims %d|%d, super-Jacobi %s" % (A.name, *Der.dims, "ok" if jac.ok else "FAILS")
    if "osp12_match" in out:
        text += ", matches osp(1|2): %s" % out["osp12_match"]
    return ok, out, text


def cmd_superize(args, conv):
    from . import superization as sup
    A = _algebra(args)
    cfg = sup.SuperizeConfig(conv["superize"]["sym"], Fraction(conv["superize"]["odd_factor"]))
    T, S, wd = sup.superize(A, cfg)
    jac = check_superalgebra(T)
    oracle = sup.quotient_rank_oracle(A)
    ok = jac.ok and wd.ok and oracle == T.dims[0]
    out = {"algebra": A.name, "dims": list(T.dims), "super_jacobi": jac.ok,
           "well_defined": wd.ok, "oracle_even_dim": oracle, "table": catalog.spec_dict(T)}
    return ok, out, "g(%s): dims %d|%d, super-Jacobi %s, well-defined %s" % (
        A.name, *T.dims, jac.ok, wd.ok)


def cmd_rep(args, conv):
    from . import representations as R
    f = conv["frep"]
    c_l, c_e, s = Fraction(f["c_l"]), Fraction(f["c_e"]), int(f["odd_sign"])
    window = _window(args.window if args.window is not None else 3, 1)
    if args.action == "frep":
        rep = R.build_FRep(window, c_l=c_l, c_e=c_e, odd_sign=s)
        r = R.check_rep(rep, columns=rep.module.interior())
        r.info["constants"] = {"c_l": c_l, "c_e": c_e, "odd_sign": s}
        return r.ok, r.to_json(), _summary(r)
    if args.action == "casimir":
        rep = R.frep_asl2(window, c_l, c_e, s)
        E, A, B = R.asl2_operators(rep)
        cols = rep.module.interior()
        rel = R.check_asl2_rep(E, A, B, cols)
        cas = R.casimir_check(E, A, B, cols)
        out = {"relations": rel.to_json(), "casimir": cas.to_json()}
        return rel.ok and cas.ok, out, "%s\n%s" % (_summary(rel), _summary(cas))
    if args.action == "check":
        if not args.rep_file:
            raise InputError("rep check needs --rep FILE")
        A = _algebra(args)
        rep = load_rep(args.rep_file, A)
        r = R.check_rep(rep)
        return r.ok, r.to_json(), _summary(r)
    raise InputError("unknown rep action %r" % args.action)


def load_rep(path, A):
    from .linalg import RatMatrix
    from . import representations as R
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
        d0, d1 = d["dims"]
        n = d0 + d1
        mats = {}
        names = {str(l): l for l in A.basis}
        for lab, entries in d["chi"].items():
            if lab not in names:
                raise InputError("%s: label %r is not in %s" % (path, lab, A.name))
            mats[names[lab]] = RatMatrix(n, n, {(int(i), int(j)): Fraction(c) for i, j, c in entries})
        return R.finite_rep(A, (d0, d1), mats)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError("cannot read representation %s: %s" % (path, exc))


def cmd_geo(args, conv):
    from . import geometry as G
    g = conv["geometry"]
    c = G.Convention(int(g["sigma"]), g["order"], bool(g["koszul"]))
    if args.action == "verify-ak1":
        w = _window(args.window if args.window is not None else 5, 1)
        rep = G.verify_taylor(w, c)
        wins, _ = G.calibrate_geometry(w)
        rep.info["calibration"] = [x.to_json() for x in wins]
        return rep.ok and wins == [c], rep.to_json(), _summary(rep)
    if args.action == "invariants":
        deg = args.max_degree if args.max_degree is not None else 1
        basis = G.invariant_bivector_space(deg, conv=c)
        PL = [G.POISSON, G.LAMBDA]
        spans = G.in_span(basis, PL)
        inside = G.in_span(basis + PL, PL)
        out = {"degree": deg, "dimension": len(basis), "spans_P_Lambda": spans, "inside_P_Lambda": inside,
               "basis": [{"%s^%s %s" % (u, v, m): str(x) for (u, v, m), x in sorted(G.bivector_coords(B).items())}
                         for B in basis]}
        return inside, out, "invariant bivectors (coefficient degree <= %d): dim %d, span {P, Lambda}: %s" % (
            deg, len(basis), spans)
    raise InputError("unknown geo action %r" % args.action)


def cmd_cohomology(args, conv):
    from . import cohomology as H
    A = _algebra(args)
    if A.is_family:
        raise InputError("cohomology needs a finite algebra")
    M = catalog.module_by_name(A, args.module or "trivial")
    K = args.max_degree if args.max_degree is not None else 2
    mode = conv["cohomology"]
    out = {}
    for k in range(1, K + 1):
        e, o = H.cohomology_dims(M, k, mode)
        out[str(k)] = {"even": e, "odd": o}
    d2 = H.verify_d2(M, min(K + 1, 3), conventions=mode)
    if not d2.ok:
        log.warning("delta^2 != 0 for %s; %s", M.name, d2.failed())
    text = "\n".join("H^%s: %d|%d" % (k, v["even"], v["odd"]) for k, v in out.items())
    return d2.ok, out, text


def cmd_cocycle(args, conv):
    from . import cohomology as H
    if args.name != "gamma":
        raise InputError("only the gamma cocycle is available")
    w = _window(args.window if args.window is not None else 4, 1)
    res = H.gamma_cocycle(w, conventions=conv["gamma"])
    ok = not res["defects"] and not res["certificate"]["solvable"]
    out = {"window": str(w), "checked": res["checked"], "conventions": res["conventions"],
           "defects": [{"degree": list(pq), "even": list(xs), "odd": list(ys), "value": v.to_json()}
                       for pq, xs, ys, v in res["defects"]],
           "certificate": res["certificate"]}
    text = "gamma on ak1 window %s: %s (%d arguments), delta c = gamma solvable: %s" % (
        w, "cocycle" if not res["defects"] else "%d defects" % len(res["defects"]),
        res["checked"], res["certificate"]["solvable"])
    return ok, out, text


def cmd_associator(args, conv):
    from . import associator as asc
    A = _algebra(args)
    rep = asc.skew_equivalence(asc.bracket_to_m(A))
    return rep.ok, rep.to_json(), _summary(rep)


COMMANDS = {
    "check-axioms": cmd_check_axioms,
    "derivations": cmd_derivations,
    "superize": cmd_superize,
    "rep": cmd_rep,
    "geo": cmd_geo,
    "cohomology": cmd_cohomology,
    "cocycle": cmd_cocycle,
    "associator": cmd_associator,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="antialg", description="Exact computations with Lie antialgebras.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--algebra", help="asl2, ah1:<kappa>, ak1:<window>, k1:<window>, osp12")
        p.add_argument("--spec", help="path to an .alg.json file")
        p.add_argument("--module", help="trivial, adjoint, coadjoint or a .mod.json file")
        p.add_argument("--window", type=Fraction)
        p.add_argument("--max-degree", "--degree", dest="max_degree", type=int)
        p.add_argument("--json", action="store_true", help="print a JSON report")
        return p

    for verb in ("check-axioms", "derivations", "superize", "cohomology", "associator"):
        common(sub.add_parser(verb))
    p = common(sub.add_parser("rep"))
    p.add_argument("action", choices=["check", "frep", "casimir"])
    p.add_argument("--rep", dest="rep_file", help="representation JSON for 'rep check'")
    p = common(sub.add_parser("geo"))
    p.add_argument("action", choices=["verify-ak1", "invariants"])
    p = common(sub.add_parser("cocycle"))
    p.add_argument("name", choices=["gamma"])
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        conv = load_conventions()
        ok, data, text = COMMANDS[args.verb](args, conv)
    except (InputError, catalog.SpecError, KeyError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if args.json:
        out.write(json.dumps(data, indent=2, sort_keys=True, default=str) + "\n")
    else:
        out.write(text + "\n")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
