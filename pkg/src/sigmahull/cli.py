"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition error, 3 resource cap.
Human-readable summaries go to stdout; ``--out`` writes the JSON run report.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, grs, mxp
from .code import (
    LinearCode,
    TooLarge,
    VerificationFailure,
    galois_hull,
    hull,
    intersection_dim,
)
from .families import (
    FAMILIES,
    PARAMS,
    VARIANTS,
    ConstructionError,
    FamilyError,
    FamilySpec,
    TargetUnreachable,
    check_preconditions,
    compare_table,
    construct_mds_with_hull,
    legal_instances,
    table_rows,
)
from .gf import FieldError, FieldTooLarge, field_new, subfield_lattice
from .grs import GrsError
from .linalg import DimensionMismatch, random_invertible
from .mxp import MxpError
from .semilinear import InvalidSigma, SigmaMap
from .suites import TIERS, run_tier

log = logging.getLogger("sigmahull")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# -- helpers ------------------------------------------------------------------------------


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _report(args, inputs, results, t0: float) -> dict:
    argv = {k: v for k, v in vars(args).items() if k != "func"}
    return {
        "command": args.command,
        "args": argv,
        "inputs_digest": _digest(inputs),
        "inputs": inputs,
        "results": results,
        "seconds": round(time.perf_counter() - t0, 4),
        "version": __version__,
    }


def _emit(args, report: dict) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(report, indent=1, default=str) + "\n")
        print(f"report written to {args.out}")


def _sigma_for(args, ctx, n: int) -> SigmaMap:
    if args.sigma and args.galois is not None:
        raise UsageError("give either --sigma or --galois, not both")
    if args.sigma:
        d = _load(args.sigma)
        sigma = SigmaMap.from_json(d, ctx)
        if sigma.n != n:
            raise UsageError(f"sigma acts on {sigma.n} coordinates, code length {n}")
        return sigma
    ell = 0 if args.galois is None else args.galois
    return SigmaMap.galois(ctx, n, ell)


def _print_dims(title: str, rep) -> None:
    print(title)
    for k, v in rep.dims.items():
        print(f"  {k:<22} {v}")
    if rep.oracle_dim is not None:
        print(f"  {'oracle':<22} {rep.oracle_dim}")


# -- field --------------------------------------------------------------------------------


def _term(c: int, i: int) -> str:
    x = "" if i == 0 else "x" if i == 1 else f"x^{i}"
    return str(c) if not x else x if c == 1 else f"{c}{x}"


def cmd_field(args) -> int:
    t0 = time.perf_counter()
    modulus = tuple(args.modulus) if args.modulus else None
    ctx = field_new(args.p, args.e, modulus)
    lattice = subfield_lattice(ctx)
    poly = " + ".join(_term(c, i) for i, c in reversed(list(enumerate(ctx.modulus))) if c)
    print(f"GF({args.p}^{args.e}) = GF({ctx.q})")
    print(f"  modulus     {poly}   coefficients {list(ctx.modulus)}")
    print(f"  alpha       {ctx.alpha} = {ctx.to_coeffs(ctx.alpha)}")
    print("  subfields   " + ", ".join(f"GF({s['order']})" for s in lattice))
    _emit(args, _report(args, {"p": args.p, "e": args.e},
                        {"field": ctx.descriptor(), "alpha": ctx.alpha, "subfields": lattice}, t0))
    return EXIT_OK


# -- random fixtures ----------------------------------------------------------------------


def cmd_random(args) -> int:
    ctx = field_new(args.p, args.e)
    rng = np.random.default_rng(args.seed)
    if args.kind == "code":
        obj = LinearCode.random(ctx, args.n, args.k, rng).to_json()
    elif args.kind == "sigma":
        d = SigmaMap.random(ctx, args.n, rng).to_json()
        d["field"] = ctx.descriptor()
        obj = d
    elif args.kind == "mxp":
        cons = tuple(LinearCode.random(ctx, args.n, int(rng.integers(0, args.n + 1)), rng)
                     for _ in range(args.k))
        A = random_invertible(ctx, args.k, rng)
        # quasi-orthogonal A so the default Euclidean hull formula applies
        N = mxp.find_quasi_orthogonalizer(A, "euclidean", rng)
        if N is not None:
            A = N.T @ A
        obj = mxp.MxpSpec(cons, A).to_json()
    else:
        a = rng.choice(ctx.q, size=args.n, replace=False)
        v = rng.integers(1, ctx.q, size=args.n)
        obj = grs.GrsSpec(ctx, tuple(map(int, a)), tuple(map(int, v)), args.k).to_json()
    text = json.dumps(obj, indent=1)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


# -- hull / intersect ---------------------------------------------------------------------


def cmd_hull(args) -> int:
    t0 = time.perf_counter()
    d = _load(args.code)
    C = LinearCode.from_json(d)
    verify = not args.no_verify
    if args.sigma:
        sigma = _sigma_for(args, C.ctx, C.n)
        rep = hull(C, sigma, verify=verify)
        label = "sigma hull"
    else:
        ell = 0 if args.galois is None else args.galois
        if not 0 <= ell < C.ctx.e:
            raise UsageError(f"--galois {ell} outside [0, {C.ctx.e - 1}]")
        rep = galois_hull(C, ell, verify=verify)
        label = f"{ell}-Galois hull"
    _print_dims(f"[{C.n},{C.k}] code over GF({C.ctx.q}), {label}:", rep)
    res = rep.to_json(with_basis=args.basis)
    _emit(args, _report(args, {"code": d, "sigma": args.sigma, "galois": args.galois}, res, t0))
    return EXIT_OK if (not verify or rep.consistent) else EXIT_VERIFY


def cmd_intersect(args) -> int:
    t0 = time.perf_counter()
    da, db = _load(args.a), _load(args.b)
    if args.mxp:
        sa, sb = mxp.MxpSpec.from_json(da), mxp.MxpSpec.from_json(db)
        out, mu = mxp.intersect_mxp(sa, sb, verify=not args.no_verify)
        print(f"intersection of matrix-product codes: dimension {out.k}, ratios {mu}")
        res = {"dim": out.k, "mu": mu}
        if args.basis:
            res["basis"] = out.gen.to_json()
        _emit(args, _report(args, {"a": da, "b": db}, res, t0))
        return EXIT_OK
    C1, C2 = LinearCode.from_json(da), LinearCode.from_json(db)
    if C1.n != C2.n or C1.ctx != C2.ctx:
        raise UsageError("codes must share length and field")
    sigma = _sigma_for(args, C1.ctx, C1.n)
    results = {}
    ok = True
    for which in (1, 2) if args.which == 0 else (args.which,):
        rep = intersection_dim(C1, C2, sigma, which, verify=not args.no_verify)
        _print_dims(f"dim(C1 ∩ C2), form {which}:", rep)
        results[f"form{which}"] = rep.to_json(with_basis=args.basis)
        ok &= args.no_verify or rep.consistent
    _emit(args, _report(args, {"a": da, "b": db}, results, t0))
    return EXIT_OK if ok else EXIT_VERIFY


# -- mxp ----------------------------------------------------------------------------------


def _kron_for(args, ctx, spec: mxp.MxpSpec) -> mxp.SigmaKron:
    if args.sigma:
        return mxp.SigmaKron.from_json(_load(args.sigma), ctx)
    ell = 0 if args.galois is None else args.galois
    if not 0 <= ell < ctx.e:
        raise UsageError(f"--galois {ell} outside [0, {ctx.e - 1}]")
    return mxp.SigmaKron.galois(ctx, spec.t, spec.n, ell)


def cmd_mxp(args) -> int:
    t0 = time.perf_counter()
    d = _load(args.spec)
    spec = mxp.MxpSpec.from_json(d)
    ctx = spec.ctx
    if args.action == "build":
        C = mxp.build(spec)
        print(f"C(A): [{C.n},{C.k}] over GF({ctx.q}) from {spec.k} constituents of length {spec.n}")
        res = {"code": C.to_json()}
    elif args.action == "dual":
        sk = _kron_for(args, ctx, spec)
        out = mxp.sigma_dual_mxp(spec, sk, verify=True)
        D = mxp.build(out)
        print(f"dual: [{D.n},{D.k}], B = {out.A.tolist()}; matches the direct dual")
        res = {"dual_spec": out.to_json(), "B": out.A.to_json()}
    else:
        sk = _kron_for(args, ctx, spec)
        rep, mu = mxp.sigma_hull_mxp(spec, sk, verify=True)
        _print_dims(f"hull of C(A), multipliers {mu}:", rep)
        res = {"hull": rep.to_json(with_basis=args.basis), "mu": mu}
    _emit(args, _report(args, {"spec": d, "sigma": args.sigma, "galois": args.galois}, res, t0))
    return EXIT_OK


# -- family -------------------------------------------------------------------------------


def _family_spec(args, k: int, h: int) -> FamilySpec:
    params = {}
    for name in PARAMS[args.family]:
        val = getattr(args, name)
        if val is None:
            raise UsageError(f"--{name} is required for the {args.family} family")
        params[name] = val
    return FamilySpec(args.family, args.variant, args.l, args.p, args.e, params, k, h)


def _construct_json(fs: FamilySpec, verify: bool) -> dict:
    c = construct_mds_with_hull(fs, verify=verify)
    return c.to_json()


def _print_table(family: str, check: bool) -> bool:
    ok = True
    if check:
        for row in compare_table(family):
            r = row["row"]
            bad = [k for k, v in row["checks"].items() if not v]
            ok &= not bad
            verdict = "ok" if not bad else f"MISMATCH {bad[:4]}"
            print(f"  ell={r['ell']} p={r['p']} e={r['e']}: {len(row['checks'])} cells {verdict}")
        return ok
    for row in table_rows(family):
        for var in row["variants"]:
            ns = list(var["n"].items())
            ks = list(var["k_bound"].items())
            print(f"  ell={row['ell']} p={row['p']} e={row['e']} {var['variant']:<4} "
                  f"n={ns[0][1]}..{ns[-1][1]}  k<={ks[0][1]}..{ks[-1][1]}  h<={var['h_max']}")
    return ok


def cmd_family(args) -> int:
    t0 = time.perf_counter()
    if args.table:
        ok = _print_table(args.table, args.check_arithmetic)
        res = compare_table(args.table) if args.check_arithmetic else table_rows(args.table)
        _emit(args, _report(args, {"table": args.table}, res, t0))
        return EXIT_OK if ok else EXIT_VERIFY
    if not args.family:
        raise UsageError("--family (or --table) is required")
    if args.variant not in VARIANTS[args.family]:
        raise UsageError(f"variant {args.variant!r} not available for {args.family}")
    for name in ("p", "e", "l"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")
    verify = not args.no_verify
    if args.sweep:
        base = _family_spec(args, 1, 0)
        pre = check_preconditions(base)
        structural = [c for c in pre if c["check"] not in ("1 <= k <= bound", "0 <= h <= h_max")]
        if not all(c["ok"] for c in structural):
            _print_report(structural)
            _emit(args, _report(args, base.to_json(), {"preconditions": structural}, t0))
            return EXIT_USAGE
        todo = legal_instances(base)
    else:
        if args.k is None or args.h is None:
            raise UsageError("--k and --h are required without --sweep")
        todo = [_family_spec(args, args.k, args.h)]
        pre = check_preconditions(todo[0])
        if not all(c["ok"] for c in pre):
            _print_report(pre)
            _emit(args, _report(args, todo[0].to_json(), {"preconditions": pre}, t0))
            return EXIT_USAGE
    if args.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            outs = list(pool.map(_construct_json, todo, [verify] * len(todo)))
    else:
        outs = [_construct_json(fs, verify) for fs in todo]
    for fs, o in zip(todo, outs):
        hdim = o["hull"]["oracle_dim"] if o["hull"] else "unverified"
        print(f"  {fs.family} {fs.variant}: [{o['length']},{fs.k}] target h={fs.h} "
              f"oracle h={hdim} d={o['min_distance']} ({o['mds']})")
    print(f"{len(outs)} instance(s) constructed")
    _emit(args, _report(args, [fs.to_json() for fs in todo], outs, t0))
    return EXIT_OK


def _print_report(pre: list[dict]) -> None:
    print("precondition report:")
    for c in pre:
        print(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['check']}  {c['detail']}")


# -- selftest -----------------------------------------------------------------------------


def cmd_selftest(args) -> int:
    t0 = time.perf_counter()
    names = list(TIERS[args.tier])
    if args.list:
        for n in names:
            print(n)
        return EXIT_OK
    only = None
    if args.only:
        # each token selects every check whose name contains it
        unknown = [t for t in args.only if not any(t.lower() in n.lower() for n in names)]
        if unknown:
            raise UsageError(f"unknown checks: {unknown}")
        only = {n for n in names if any(t.lower() in n.lower() for t in args.only)}
    results = run_tier(args.tier, args.seed, only)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<36} {r.instances:>6} instances  "
              f"{r.failures} failures  {r.seconds:.1f}s")
    ok = all(r.ok for r in results)
    _emit(args, _report(args, {"tier": args.tier, "seed": args.seed},
                        [r.to_json() for r in results], t0))
    return EXIT_OK if ok else EXIT_VERIFY


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sigmahull", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, sigma=False):
        p.add_argument("--out", help="write the JSON run report here")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-verify", action="store_true", help="skip oracle cross-checks")
        if sigma:
            p.add_argument("--sigma", help="sigma descriptor JSON")
            p.add_argument("--galois", type=int, help="use the ell-Galois form")
            p.add_argument("--basis", action="store_true", help="include a basis in the report")
        return p

    p = common(sub.add_parser("field", help="field parameters"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--modulus", type=int, nargs="+", help="lower coefficients of a monic modulus")
    p.set_defaults(func=cmd_field)

    p = common(sub.add_parser("random", help="write a random code/sigma/mxp/grs fixture"))
    p.add_argument("kind", choices=["code", "sigma", "mxp", "grs"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_random)

    p = common(sub.add_parser("hull", help="hull dimension of a code"), sigma=True)
    p.add_argument("code")
    p.set_defaults(func=cmd_hull)

    p = common(sub.add_parser("intersect", help="dimension of an intersection"), sigma=True)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--which", type=int, choices=[0, 1, 2], default=0, help="0 runs both forms")
    p.add_argument("--mxp", action="store_true", help="inputs are matrix-product specs")
    p.set_defaults(func=cmd_intersect)

    p = common(sub.add_parser("mxp", help="matrix-product codes"), sigma=True)
    p.add_argument("action", choices=["build", "dual", "hull"])
    p.add_argument("spec")
    p.set_defaults(func=cmd_mxp)

    p = common(sub.add_parser("family", help="MDS codes with a prescribed Galois hull"))
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--variant", default="n", choices=["n", "n+1", "n+2"])
    p.add_argument("--p", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--l", type=int, help="ell")
    for name in ("t", "r", "m", "x1", "x2", "a", "w"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--sweep", action="store_true", help="every legal (k, h)")
    p.add_argument("--table", choices=FAMILIES, help="print a parameter table")
    p.add_argument("--check-arithmetic", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_family)

    p = common(sub.add_parser("selftest", help="property suite"))
    p.add_argument("--tier", choices=list(TIERS), default="small")
    p.add_argument("--list", action="store_true")
    p.add_argument("--only", nargs="+")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (VerificationFailure, ConstructionError, TargetUnreachable) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (TooLarge, FieldTooLarge) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, FieldError, FamilyError, GrsError, MxpError, InvalidSigma,
            DimensionMismatch, KeyError) as exc:
        pre = getattr(exc, "report", None)
        if pre:
            _print_report(pre)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
