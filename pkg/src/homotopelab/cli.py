"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 enumeration budget exceeded.  The default enumeration budget can be
overridden with the HOMOTOPELAB_BUDGET environment variable or --budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .algebra import DEFAULT_ENUM_BUDGET, Algebra
from .constructions import (
    doubled_chain_quiver,
    ground_field_algebra,
    kronecker_quiver,
    matrix_algebra,
    path_algebra,
    quantum_exterior,
    two_dim_homotope,
    two_dim_nonassoc,
    word16,
    word16_delta,
)
from .errors import BudgetExceeded
from .fingerprints import (
    enumerate_idempotents,
    enumerate_square_zero,
    idempotent_commutator_fingerprint,
    mu_spectrum,
)
from .linalg import LinearMap, Matrix
from .poly import quartic_invariants
from .scalars import Field
from .serialize import dumps, load, save
from .tensor import Trilinear, det_poly, pencil_quartic
from .verify import DEFAULT_SEED, run_checks

_BUILDERS = {
    "two-dim": (False, lambda lam, f: two_dim_nonassoc(f)),
    "two-dim-homotope": (True, lambda lam, f: two_dim_homotope(lam, f)),
    "quantum-exterior": (True, lambda lam, f: quantum_exterior(lam, f)),
    "word16": (False, lambda lam, f: word16(f)),
    "word16-homotope": (True, lambda lam, f: word16(f).left_delta_homotope(word16_delta(lam, f))),
    "mat2-word16": (False, lambda lam, f: matrix_algebra(word16(f), 2)),
    "ground": (False, lambda lam, f: ground_field_algebra(f)),
    "kronecker-path": (False, lambda lam, f: path_algebra(kronecker_quiver(), f)),
    "chain6-path": (False, lambda lam, f: path_algebra(doubled_chain_quiver(6), f)),
}


def _default_budget():
    return int(os.environ.get("HOMOTOPELAB_BUDGET", DEFAULT_ENUM_BUDGET))


def _parse_coords(text, field):
    return tuple(field.parse_scalar(part) for part in text.split(","))


def _parse_map(text, field):
    rows = json.loads(text)
    return LinearMap(Matrix.from_rows([[field.parse_scalar(str(v)) for v in row]
                                       for row in rows], field))


def _emit(obj, out=None):
    text = dumps(obj) if isinstance(obj, (Algebra, Trilinear, Matrix)) else json.dumps(obj, indent=1)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        print(text)


def _cmd_algebra_build(args):
    if args.name not in _BUILDERS:
        print(f"unknown algebra name {args.name!r}; known: {', '.join(sorted(_BUILDERS))}",
              file=sys.stderr)
        return 2
    needs_lam, builder = _BUILDERS[args.name]
    field = Field.parse(args.field)
    lam = None
    if needs_lam:
        if args.lam is None:
            print(f"{args.name} needs --lambda", file=sys.stderr)
            return 2
        lam = field.parse_scalar(args.lam)
    alg = builder(lam, field)
    _emit(alg, args.output)
    return 0


def _cmd_algebra_check(args):
    try:
        alg = load(args.file)
    except Exception as exc:
        print(json.dumps({"file": args.file, "valid": False, "reason": str(exc)}, indent=1))
        return 1
    if not isinstance(alg, Algebra):
        print(json.dumps({"file": args.file, "valid": False,
                          "reason": "file does not hold an algebra"}, indent=1))
        return 1
    print(json.dumps({
        "file": args.file,
        "valid": True,
        "field": alg.field.name,
        "dim": alg.dim,
        "unital": alg.unit is not None,
        "associative": alg.is_associative(),
    }, indent=1))
    return 0


def _cmd_homotope(args):
    alg = load(args.file)
    if not isinstance(alg, Algebra):
        print("homotope needs an algebra file", file=sys.stderr)
        return 2
    field = alg.field
    if args.delta is not None:
        delta = _parse_coords(args.delta, field)
        out = (alg.left_delta_homotope(delta) if args.side == "left"
               else alg.right_delta_homotope(delta))
    else:
        if not (args.f1 and args.f2 and args.g):
            print("need either --delta or all of --f1/--f2/--g", file=sys.stderr)
            return 2
        out = alg.homotope(_parse_map(args.f1, field), _parse_map(args.f2, field),
                           _parse_map(args.g, field))
    if args.augment:
        out = out.augment_unit()
    _emit(out, args.output)
    return 0


def _cmd_detpoly(args):
    obj = load(args.file)
    if isinstance(obj, Algebra):
        tensor = obj.structure
    elif isinstance(obj, Trilinear):
        tensor = obj
    else:
        print("detpoly needs a tensor or algebra file", file=sys.stderr)
        return 2
    p = det_poly(tensor, args.slot)
    print(json.dumps({
        "file": args.file,
        "slot": args.slot,
        "degree": p.total_degree(),
        "polynomial": str(p),
    }, indent=1))
    return 0


def _cmd_pencil(args):
    field = Field.parse(args.field)
    diag = _parse_coords(args.bhat, field)
    row = _parse_coords(args.b, field)
    col = _parse_coords(args.u, field)
    q = pencil_quartic(diag, row, col, field)
    inv = quartic_invariants(q)
    fmt = field.format_scalar
    print(json.dumps({
        "field": field.name,
        "quartic": str(q),
        "coefficients": [fmt(c) for c in q.coeffs()],
        "delta0": fmt(inv.delta0),
        "delta1": fmt(inv.delta1),
        "disc": fmt(inv.disc),
        "j": None if inv.j is None else fmt(inv.j),
        "note": None if inv.j is not None else
            "repeated root: j undefined; coincidences of invariants are inconclusive",
    }, indent=1))
    return 0


def _cmd_fingerprint(args):
    alg = load(args.file)
    if not isinstance(alg, Algebra):
        print("fingerprint needs an algebra file", file=sys.stderr)
        return 2
    if args.field:
        target = Field.parse(args.field)
        if target.p is None:
            print("fingerprints need a prime field", file=sys.stderr)
            return 2
        if alg.field.p is None:
            alg = alg.reduce_mod(target.p)
        elif alg.field != target:
            print(f"file is over {alg.field.name}, cannot move to {target.name}",
                  file=sys.stderr)
            return 2
    budget = args.budget if args.budget is not None else _default_budget()
    fmt = alg.field.format_scalar
    t0 = time.perf_counter()
    record = {"fingerprint": args.kind, "file": args.file, "field": alg.field.name,
              "dim": alg.dim, "budget": budget, "seed": None}
    if args.kind == "idem":
        elems = enumerate_idempotents(alg, budget)
        record["count"] = len(elems)
        if len(elems) <= 100:
            record["elements"] = [[fmt(c) for c in e] for e in elems]
    elif args.kind == "sqzero":
        elems = enumerate_square_zero(alg, budget)
        record["count"] = len(elems)
        if len(elems) <= 100:
            record["elements"] = [[fmt(c) for c in e] for e in elems]
    elif args.kind == "mu":
        record["spectrum"] = [fmt(c) for c in mu_spectrum(alg, budget)]
    else:
        record["multiset"] = [fmt(c) for c in idempotent_commutator_fingerprint(alg, budget)]
    record["elapsed_s"] = round(time.perf_counter() - t0, 4)
    print(json.dumps(record, indent=1))
    return 0


def _cmd_welltempered(args):
    alg = load(args.file)
    if not isinstance(alg, Algebra):
        print("welltempered needs an algebra file", file=sys.stderr)
        return 2
    delta = _parse_coords(args.delta, alg.field)
    result = alg.is_well_tempered(delta)
    print(json.dumps({"file": args.file, "delta": list(args.delta.split(",")),
                      "well_tempered": result}, indent=1))
    return 0


def _cmd_verify(args):
    only = set(args.only) if args.only else None
    print(f"seed: {args.seed}")
    results = run_checks(seed=args.seed, quick=args.quick, only=only)
    all_ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{res.cid:2}] {status}  {res.name} ({res.elapsed:.2f}s)")
        if not res.passed:
            print(f"      {res.detail}")
            all_ok = False
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if all_ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="homotopelab",
                                 description="exact homotope and tensor toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="build or validate algebra files")
    alg_sub = alg.add_subparsers(dest="subcommand", required=True)
    b = alg_sub.add_parser("build", help="construct a named algebra family member")
    b.add_argument("name", help=f"one of: {', '.join(sorted(_BUILDERS))}")
    b.add_argument("--lambda", dest="lam", default=None, help="family parameter")
    b.add_argument("--field", default="Q", help='"Q" or "F<p>" (default Q)')
    b.add_argument("-o", "--output", default=None)
    b.set_defaults(fn=_cmd_algebra_build)
    c = alg_sub.add_parser("check", help="validate an algebra file")
    c.add_argument("file")
    c.set_defaults(fn=_cmd_algebra_check)

    h = sub.add_parser("homotope", help="build a homotope of an algebra file")
    h.add_argument("file")
    h.add_argument("--delta", default=None, help="comma-separated coordinates")
    h.add_argument("--side", choices=("left", "right"), default="left")
    h.add_argument("--f1", default=None, help="JSON matrix")
    h.add_argument("--f2", default=None, help="JSON matrix")
    h.add_argument("--g", default=None, help="JSON matrix")
    h.add_argument("--augment", action="store_true", help="adjoin a unit afterwards")
    h.add_argument("-o", "--output", default=None)
    h.set_defaults(fn=_cmd_homotope)

    d = sub.add_parser("detpoly", help="determinantal polynomial of a tensor slot")
    d.add_argument("file")
    d.add_argument("--slot", type=int, choices=(1, 2, 3), required=True)
    d.set_defaults(fn=_cmd_detpoly)

    p = sub.add_parser("pencil", help="pencil quartic det(xI + y(D + u b)) and invariants")
    p.add_argument("--bhat", required=True, help="4 diagonal entries, comma-separated")
    p.add_argument("--b", required=True, help="row 4-vector, comma-separated")
    p.add_argument("--u", required=True, help="column 4-vector, comma-separated")
    p.add_argument("--field", default="Q")
    p.set_defaults(fn=_cmd_pencil)

    fp = sub.add_parser("fingerprint", help="finite-field censuses and invariants")
    fp.add_argument("file")
    fp.add_argument("--kind", choices=("idem", "sqzero", "mu", "commfp"), required=True)
    fp.add_argument("--field", default=None, help="prime field for the scan, e.g. F5")
    fp.add_argument("--budget", type=int, default=None)
    fp.set_defaults(fn=_cmd_fingerprint)

    wt = sub.add_parser("welltempered", help="test the two-sided span condition")
    wt.add_argument("file")
    wt.add_argument("--delta", required=True, help="comma-separated coordinates")
    wt.set_defaults(fn=_cmd_welltempered)

    v = sub.add_parser("paper-verify", help="run the built-in verification suite")
    v.add_argument("--quick", action="store_true", help="reduced sample sizes")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--only", type=int, nargs="*", default=None, help="check ids to run")
    v.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
