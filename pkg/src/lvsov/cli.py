"""Command-line front end: ``lvsov <command> [options]``."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .gauge_sov.abel import abel_linearity_probe, track, write_divisor_csv
from .gauge_sov.recipes import NonGenericPoint, UnsupportedClass, apply_gauge, gauge_recipe, pattern_violations
from .gauge_sov.separation import Divisor, level_set_dimension, theta_test
from .lotka_volterra.center import center_spec, sharpness
from .lotka_volterra.certify import OutOfScope, certify, pq_realization_check, table
from .lotka_volterra.flows import FlowAborted, FlowSystem, initial_state, integrate
from .lotka_volterra.integrals import extract_im
from .lotka_volterra.model import check_range, lv_model
from .lotka_volterra.sov import divisor_trajectory
from .monodromy.classify import random_T
from .monodromy.lax import lax_product, lax_product_class
from .monodromy.patterns import MonodromyClass, product_residues
from .poly_core.newton import newton_genus
from .poly_core.poly import char_poly
from .symbolic_poisson.residual import matrix_bracket_residual, residual_size
from .symbolic_poisson.structures import bracket

SUITES = ("rtt", "involution", "center", "pattern", "pq", "dimension")
TABLE_DEFAULTS = {2: (3, 12), 3: (5, 17)}


class UsageError(ValueError):
    pass


def _check(name, ok, residual=0, **extra) -> dict:
    out = {"name": name, "status": "PASS" if ok else "FAIL", "residual": residual}
    out.update(extra)
    return out


def _class_from_args(args) -> MonodromyClass:
    have_L = args.L is not None
    have_m = args.m is not None or args.n1 is not None or args.n2 is not None
    if have_L == have_m:
        raise UsageError("give exactly one of --L or (--m, --n1, --n2)")
    if have_L:
        check_range(args.N, args.L)
        return lax_product_class(args.N, args.L)
    if None in (args.m, args.n1, args.n2):
        raise UsageError("--m, --n1 and --n2 must be given together")
    return MonodromyClass(args.N, args.m, args.n1, args.n2)


def _need_L(args) -> int:
    if args.L is None:
        raise UsageError(f"{args.command} requires --L")
    check_range(args.N, args.L)
    return args.L


def _state(args, L: int) -> np.ndarray:
    if args.init:
        return io.read_state(args.init, L)
    return initial_state(L, args.seed)


def cmd_classify(args) -> tuple[dict, bool]:
    cls = _class_from_args(args)
    out = {"N": cls.N, "m": cls.m, "n1": cls.n1, "n2": cls.n2}
    if args.L is not None:
        m, m1, m2, k, k1, k2 = product_residues(args.N, args.L)
        out.update({"L": args.L, "m1": m1, "m2": m2, "k": k, "k1": k1, "k2": k2})
        cert = certify(args.N, args.L, args.seed)
        out.update({"g": cert.g, "n_H": cert.n_H, "n0": cert.n0})
    else:
        out["g"] = newton_genus(char_poly(random_T(cls, args.seed).matrix))[0]
    return out, True


def _suite_rtt(args) -> list[dict]:
    N = args.N
    checks = []
    T, s = lax_product(N, 1)
    size = residual_size(matrix_bracket_residual(T, s))
    checks.append(_check(f"single site N={N}", size == 0, size, exact_zero=size == 0))
    if args.L is not None:
        T, s = lax_product(N, args.L)
        size = residual_size(matrix_bracket_residual(T, s))
        checks.append(_check(f"product N={N} L={args.L}", size == 0, size, exact_zero=size == 0))
    return checks


def _suite_involution(args) -> list[dict]:
    L = _need_L(args)
    model = lv_model(args.N, L)
    im = extract_im(model, seed=args.seed)
    s = model.structure
    checks = []
    for i in range(im.n_H):
        for j in range(i + 1, im.n_H):
            size = len(bracket(im.H[i], im.H[j], s).terms)
            checks.append(_check(f"{{H{i + 1},H{j + 1}}}", size == 0, size, exact_zero=size == 0))
    if not checks:
        checks.append(_check("single integral", True, 0, exact_zero=True))
    return checks


def _suite_center(args) -> list[dict]:
    L = _need_L(args)
    spec = center_spec(args.N, L, verify=False)
    s = lv_model(args.N, L).structure
    checks = []
    for (k, i), P in spec.generator_list():
        size = sum(len(bracket(s.gen(n), P, s).terms) for n in range(L))
        checks.append(_check(f"P_{k}^({i}) central", size == 0, size, exact_zero=size == 0))
    for k, noncentral in sharpness(args.N, L).items():
        checks.append(_check(f"P_{k} not central (k outside K)", noncentral))
    checks.append(_check("n0", True, 0, n0=spec.n0, generators=len(spec.generators)))
    return checks


def _suite_pattern(args) -> list[dict]:
    cls = _class_from_args(args)
    gauge_recipe(cls)
    bad, singular = 0, 0
    for seed in range(args.samples):
        try:
            rep = apply_gauge(random_T(cls, args.seed + seed))
        except NonGenericPoint:
            singular += 1
            continue
        bad += len(pattern_violations(rep))
    return [_check(f"eta pattern {cls}", bad == 0 and singular < args.samples, bad, samples=args.samples,
                   singular=singular)]


def _suite_pq(args) -> list[dict]:
    L = _need_L(args)
    rep = pq_realization_check(args.N, L)
    return [_check("P/Q realization", rep.passed, len(rep.mismatches), pairs=rep.pairs,
                   mismatches=[list(p) for p in rep.mismatches])]


def _suite_dimension(args) -> list[dict]:
    cls = _class_from_args(args)
    T = random_T(cls, args.seed)
    g = newton_genus(char_poly(T.matrix))[0]
    dT = level_set_dimension(T, "T", args.tol)
    dM = level_set_dimension(T, "M", args.tol)
    return [
        _check("M-level dimension == g", dM.value == g and not dM.indeterminate, abs(dM.value - g),
               dimension=dM.value, g=g),
        _check("gauge removes N-1 dimensions", dT.value - dM.value == cls.N - 1 and not dT.indeterminate,
               abs(dT.value - dM.value - (cls.N - 1)), T_dimension=dT.value),
    ]


def cmd_verify(args) -> tuple[dict, bool]:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    runner = globals()[f"_suite_{args.suite}"]
    checks = runner(args)
    ok = all(c["status"] == "PASS" for c in checks)
    return {"suite": args.suite, "N": args.N, "L": args.L, "status": "PASS" if ok else "FAIL",
            "checks": checks, "seed": args.seed}, ok


def _flow_key(args):
    if args.flow == "all":
        return "all"
    return int(args.flow)


def cmd_simulate(args) -> tuple[dict, bool]:
    L = _need_L(args)
    system = FlowSystem(args.N, L)
    V0 = _state(args, L)
    try:
        tr = integrate(system, _flow_key(args), V0, args.t_end, args.dt, method=args.method)
        aborted = ""
    except FlowAborted as exc:
        tr = getattr(exc, "trajectory", None)
        aborted = str(exc)
        if tr is None:
            raise
    if args.out:
        io.write_trajectory_csv(args.out, tr.t, tr.V, tr.H)
    ok = not aborted and all(v <= args.tol for v in tr.drift.values())
    checks = [_check(f"drift {k}", v <= args.tol, v) for k, v in tr.drift.items()]
    return {"N": args.N, "L": L, "flow": args.flow, "method": args.method, "t_end": args.t_end, "dt": args.dt,
            "samples": len(tr.t), "aborted": aborted, "status": "PASS" if ok else "FAIL", "checks": checks,
            "seed": args.seed}, ok


def cmd_divisor(args) -> tuple[dict, bool]:
    L = _need_L(args)
    system = FlowSystem(args.N, L)
    V0 = _state(args, L)
    tr, F, points = divisor_trajectory(system, _flow_key(args), V0, args.t_end, args.dt, args.method)
    tracked, hit = track(points)
    if args.out:
        write_divisor_csv(args.out, tr.t[: len(tracked)], tracked)
    theta = [theta_test(Divisor([tuple(p) for p in P]), F) for P in tracked]
    probe = abel_linearity_probe(tr.t, points, F)
    flat = probe.max_flatness
    ok = flat <= args.abel_tol and not any(theta) and not probe.truncated
    checks = [
        _check("Abel velocity flatness", flat <= args.abel_tol, flat, per_form=list(probe.flatness),
               monomials=[list(m) for m in probe.monomials]),
        _check("divisor off theta locus", not any(theta), sum(theta)),
    ]
    return {"N": args.N, "L": L, "g": int(tracked.shape[1]) if tracked.size else 0, "samples": len(tracked),
            "truncated": probe.truncated or None, "status": "PASS" if ok else "FAIL", "checks": checks,
            "seed": args.seed}, ok


def cmd_table(args) -> tuple[str, bool]:
    lo, hi = TABLE_DEFAULTS.get(args.N, (2 * args.N - 1, 2 * args.N + 9))
    lo = args.Lmin if args.Lmin is not None else lo
    hi = args.Lmax if args.Lmax is not None else hi
    if hi < lo:
        raise UsageError("--Lmax must not be below --Lmin")
    return io.write_table_csv(args.out, table(args.N, lo, hi, args.seed)), True


def cmd_certify(args) -> tuple[dict, bool]:
    L = _need_L(args)
    cert = certify(args.N, L, args.seed)
    return cert.to_dict(), cert.passed


COMMANDS = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "divisor": cmd_divisor,
    "table": cmd_table,
    "certify": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, required=True)
    common.add_argument("--L", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--n1", type=int)
    common.add_argument("--n2", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance")
    common.add_argument("--out", help="output path (CSV or JSON depending on command)")

    dyn = argparse.ArgumentParser(add_help=False)
    dyn.add_argument("--t-end", dest="t_end", type=float, help="default 10 (simulate) or 5 (divisor)")
    dyn.add_argument("--dt", type=float, default=1e-3)
    dyn.add_argument("--method", choices=("rk4", "dopri"), default="rk4")
    dyn.add_argument("--flow", default="1", help="integral index, or 'all' for the sum of all integrals")
    dyn.add_argument("--init", help='JSON file {"V": [...]}')

    p = argparse.ArgumentParser(prog="lvsov", description="Separation of variables for LV(N, L) lattices.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="monodromy class, genus and counts")
    v = sub.add_parser("verify", parents=[common], help="exact verification suites")
    v.add_argument("suite", help="one of: " + ", ".join(SUITES))
    v.add_argument("--samples", type=int, default=50)
    sub.add_parser("simulate", parents=[common, dyn], help="integrate a flow, write trajectory CSV")
    d = sub.add_parser("divisor", parents=[common, dyn], help="divisor trajectory and Abel probe")
    d.add_argument("--abel-tol", dest="abel_tol", type=float, default=1e-6)
    t = sub.add_parser("table", parents=[common], help="L-g table")
    t.add_argument("--Lmin", type=int)
    t.add_argument("--Lmax", type=int)
    sub.add_parser("certify", parents=[common], help="integrability certificate")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "t_end", 0) is None:
        args.t_end = 5.0 if args.command == "divisor" else 10.0
    try:
        result, ok = COMMANDS[args.command](args)
    except (UsageError, ValueError, OutOfScope, UnsupportedClass, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FlowAborted, NonGenericPoint) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        text = io.dumps(result)
        if args.out and args.command in ("classify", "verify", "certify"):
            io.write_json(result, args.out)
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
