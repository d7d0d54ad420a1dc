"""Command-line front end.

Exit codes: 0 all checks passed, 1 verification failure, 2 usage or parse
error.  --json switches to machine-readable reports; --seed fixes the
sampling randomness.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import load_catalog, verify_catalog
from .deteq import ClassMember, MemberError, is_symmetry
from .expr import ExprError
from .jets import GEOMETRIC_COORDS, VectorField, commutator
from .liealg import LieAlgebraSpan, NotClosed, algebra_invariants, closure_check
from .parser import ParseError, parse
from .ptrans import (
    NotAdmissible,
    PointTransformation,
    pushforward_field,
    pushforward_theta,
    verify_admissible,
)
from .solver import SolverConfig, dimension_profile, solve_symmetries

USAGE_ERROR = 2
CHECK_FAILED = 1


def _parse_components(text, coords=GEOMETRIC_COORDS):
    comps = {c: "0" for c in coords}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"component {part!r} is not of the form coord=expr", 0)
        name, expr = part.split("=", 1)
        name = name.strip()
        if name not in comps:
            raise ParseError(f"unknown coordinate {name!r}", 0, coords)
        comps[name] = expr
    return tuple(parse(comps[c]) for c in coords)


def _field_arg(text) -> VectorField:
    return VectorField(GEOMETRIC_COORDS, _parse_components(text))


def _map_arg(text, inverse_text=None) -> PointTransformation:
    T, X, U = _parse_components(text)
    inv = None
    if inverse_text:
        Ti, Xi, Ui = _parse_components(inverse_text)
        inv = PointTransformation(Ti, Xi, Ui, check=False)
    return PointTransformation(T, X, U, inverse=inv, check=False)


def _member(args) -> ClassMember:
    return ClassMember(args.f, args.g)


def _emit(args, payload, ok):
    if args.json:
        payload = dict(payload)
        payload["ok"] = bool(ok)
        print(json.dumps(payload, indent=2, default=str))
    return 0 if ok else CHECK_FAILED


def cmd_check_invariance(args):
    theta = _member(args)
    q = _field_arg(args.field)
    rep = is_symmetry(q, theta, seed=args.seed)
    ok = rep.is_symmetry
    if not args.json:
        print(f"{'PASS' if ok else 'FAIL'}: field {q} on f={theta.f}, g={theta.g}")
        for i, v in enumerate(rep.residuals, start=1):
            print(f"  determining equation {i}: {v!r}")
        print(f"  jet-criterion check: {rep.criterion!r}")
    return _emit(args, {"command": "check-invariance", "residuals": [repr(v) for v in rep.residuals], "criterion": repr(rep.criterion)}, ok)


def cmd_solve(args):
    theta = _member(args)
    cfg = SolverConfig(seed=args.seed, mode=args.mode, extra_basis=tuple(args.extra_basis))
    res = solve_symmetries(theta, args.degree, cfg)
    fields = res.span.basis if res.span else []
    if not args.json:
        print(f"{len(fields)} basis fields at degree {args.degree} ({res.mode} mode):")
        for q in fields:
            print(f"  {q}")
        if res.closure is not None and isinstance(res.closure, NotClosed):
            print(f"  warning: span not closed: {res.closure}")
    return _emit(
        args,
        {
            "command": "solve",
            "dimension": res.dimension,
            "degree": args.degree,
            "mode": res.mode,
            "fields": [repr(q) for q in fields],
        },
        True,
    )


def cmd_profile(args):
    theta = _member(args)
    cfg = SolverConfig(seed=args.seed, mode=args.mode, extra_basis=tuple(args.extra_basis))
    dims = dimension_profile(theta, args.degree, cfg)
    if not args.json:
        print(f"dimension profile for degrees 0..{args.degree}: {dims}")
    return _emit(args, {"command": "profile", "dimensions": dims}, True)


def cmd_pushforward(args):
    phi = _map_arg(args.map, args.inverse)
    payload = {"command": "pushforward"}
    if args.field:
        q = _field_arg(args.field)
        out = pushforward_field(phi, q)
        payload["field"] = repr(out)
        if not args.json:
            print(f"pushed field: {out}")
    else:
        theta = _member(args)
        out = pushforward_theta(phi, theta, seed=args.seed)
        payload["f"] = str(out.f)
        payload["g"] = str(out.g)
        if not args.json:
            print(f"f~ = {out.f}")
            print(f"g~ = {out.g}")
    return _emit(args, payload, True)


def cmd_verify_admissible(args):
    theta = _member(args)
    phi = _map_arg(args.map, args.inverse)
    if args.target_f and args.target_g:
        target = ClassMember(args.target_f, args.target_g)
    else:
        target = pushforward_theta(phi, theta, seed=args.seed)
    rep = verify_admissible(theta, phi, target, seed=args.seed)
    ok = rep.verified
    if not args.json:
        print(f"{'PASS' if ok else 'FAIL'} ({rep.mode} mode)")
        for name, (cond_ok, detail) in rep.conditions.items():
            print(f"  {name}: {'ok' if cond_ok else 'VIOLATED'} [{detail!r}]")
    return _emit(args, {"command": "verify-admissible", "report": rep.to_json(), "mode": rep.mode}, ok)


def cmd_commutators(args):
    fields = [_field_arg(f) for f in args.field]
    span = LieAlgebraSpan(fields, seed=args.seed)
    cc = closure_check(span)
    payload = {"command": "commutators"}
    if isinstance(cc, NotClosed):
        payload["closed"] = False
        payload["witness"] = repr(cc)
        if not args.json:
            print(f"not closed: {cc}")
        return _emit(args, payload, False)
    payload["closed"] = True
    payload["structure_constants"] = [
        [[str(v) for v in row] for row in plane] for plane in cc
    ]
    if not args.json:
        n = len(fields)
        for i in range(n):
            for j in range(i + 1, n):
                terms = [
                    (str(c) + "*b" + str(k + 1))
                    for k, c in enumerate(cc[i][j])
                    if c
                ]
                print(f"[b{i+1}, b{j+1}] = {' + '.join(terms) if terms else '0'}")
    return _emit(args, payload, True)


def cmd_algebra_invariants(args):
    fields = [_field_arg(f) for f in args.field]
    span = LieAlgebraSpan(fields, seed=args.seed)
    inv = algebra_invariants(span)
    if not args.json:
        print(f"dimension:          {inv.dim}")
        print(f"derived dimension:  {inv.derived_dim}")
        print(f"center dimension:   {inv.center_dim}")
        print(f"killing signature:  {inv.killing_signature}")
    return _emit(
        args,
        {
            "command": "algebra-invariants",
            "dim": inv.dim,
            "derived_dim": inv.derived_dim,
            "center_dim": inv.center_dim,
            "killing_signature": list(inv.killing_signature),
        },
        True,
    )


def cmd_verify_catalog(args):
    jobs = args.jobs or os.cpu_count() or 1
    reports = verify_catalog(seed=args.seed, probe=args.probe, jobs=jobs)
    fails = [r for r in reports if not r.verdict]
    cat = load_catalog()
    n_fam = sum(len(f.defaults) for f in cat.families.values())
    if args.json:
        print(
            json.dumps(
                {
                    "command": "verify-catalog",
                    "checks": [r.to_json() for r in reports],
                    "failures": len(fails),
                    "ok": not fails,
                },
                indent=2,
            )
        )
    else:
        for r in reports:
            print(r)
            if r.witness is not None:
                print(f"    {r.witness}")
        verdict = "all PASS" if not fails else f"{len(fails)} FAILED"
        print(
            f"{cat.n_subcases} cases, {n_fam} family instances, "
            f"{len(cat.additional_equivalences)} additional equivalences: {verdict}"
        )
    return 0 if not fails else CHECK_FAILED


def cmd_catalog(args):
    if args.action != "export":
        raise ParseError(f"unknown catalog action {args.action!r}", 0, ("export",))
    if args.format != "json":
        raise ParseError(f"unsupported format {args.format!r}", 0, ("json",))
    print(json.dumps(load_catalog().to_json(), indent=2))
    return 0


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")


def build_parser():
    ap = argparse.ArgumentParser(prog="wavesym", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-invariance", help="check one field against one member")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--field", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_check_invariance)

    p = sub.add_parser("solve", help="all polynomial-ansatz symmetries of a member")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--extra-basis", dest="extra_basis", action="append", default=[],
                   choices=("exp2t", "trig2t"))
    _add_common(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("profile", help="nullspace dimensions for degrees 0..d")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--extra-basis", dest="extra_basis", action="append", default=[],
                   choices=("exp2t", "trig2t"))
    _add_common(p)
    p.set_defaults(fn=cmd_profile)

    p = sub.add_parser("pushforward", help="push a member or field through a map")
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--map", required=True)
    p.add_argument("--inverse")
    p.add_argument("--field")
    _add_common(p)
    p.set_defaults(fn=cmd_pushforward)

    p = sub.add_parser("verify-admissible", help="verify a transformation triple")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--inverse")
    p.add_argument("--target-f", dest="target_f")
    p.add_argument("--target-g", dest="target_g")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_admissible)

    p = sub.add_parser("commutators", help="commutator table of a span")
    p.add_argument("--field", action="append", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_commutators)

    p = sub.add_parser("algebra-invariants", help="exact isomorphism invariants")
    p.add_argument("--field", action="append", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_algebra_invariants)

    p = sub.add_parser("verify-catalog", help="re-check the whole catalog")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--probe", action="store_true", help="run solver maximality probes")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_catalog)

    p = sub.add_parser("catalog", help="catalog data commands")
    p.add_argument("action", choices=("export",))
    p.add_argument("--format", default="json")
    _add_common(p)
    p.set_defaults(fn=cmd_catalog)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return args.fn(args)
    except (ParseError, MemberError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (NotAdmissible, NotClosed) as exc:  # verification failures
        print(f"verification failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
