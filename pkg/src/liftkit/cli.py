"""Batch front door: generate, solve, verify, roundtrip, self-test.

Every command reads/writes JSON with schema tag "liftkit/1" and is
deterministic for a fixed seed and configuration.  Exit codes: 0 all
checks passed, 1 usage or unreadable input, 2 a verification threshold
failed, 3 a numeric guard tripped inside the computation.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import ConfigError, LiftkitError
from .hardy import column_operator, default_grid
from .lifting import (InterpolationProblem, central_C, random_constrained_z,
                      random_problem, solve_from_Z, uniqueness_certificate,
                      verify_solution, z_from_C)
from .linalg import Subspace, operator_norm
from .modelspace import (check_decompositions, h_from_Z_theta, model_space,
                         mult_contraction_test, random_inner,
                         random_multiplier, z_from_H_theta)
from .rcl import (data_set_from_omega, gamma_to_B, omega_roundtrip_residual,
                  random_data_set, underlying_contraction, validate_data_set,
                  verify_rcl)
from .serialize import (SCHEMA, dataset_from_json, dataset_to_json, dumps,
                        load, poly_from_json, poly_to_json, problem_from_json,
                        problem_to_json, save, schur_from_json, schur_to_json)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_NUMERIC = 3

GEN_OMEGA_SCALE = 0.45
GEN_Z_SCALE = 0.5


def _parse(argv):
    ap = argparse.ArgumentParser(
        prog="liftkit",
        description="interpolation, lifting and model-space batch checks")
    ap.add_argument("--cmd", required=True,
                    choices=["gen", "solve", "verify", "fiber", "rcl",
                             "modelspace", "selftest"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--degree", type=int, default=24)
    ap.add_argument("--dims", default="2,2,1",
                    help="U,Y,dimF for generated problems")
    ap.add_argument("--in", dest="inp", default=None)
    ap.add_argument("--out", dest="out", default=None)
    ap.add_argument("--tol-verify", type=float, default=1e-9)
    ap.add_argument("--tol-contract", type=float, default=1e-8)
    args = ap.parse_args(argv)
    if args.degree < 4:
        ap.error("--degree must be at least 4")
    if args.tol_verify <= 0 or args.tol_contract <= 0:
        ap.error("tolerances must be positive")
    try:
        u, y, f = (int(x) for x in args.dims.split(","))
    except ValueError:
        ap.error("--dims expects three comma-separated integers")
    if u < 0 or y < 0 or f < 0 or f > u:
        ap.error("--dims requires 0 <= dimF <= U and Y >= 0")
    args.u, args.y, args.f = u, y, f
    return args


def _envelope(args, **fields) -> dict:
    out = {"schema": SCHEMA, "command": args.cmd, "seed": args.seed,
           "degree": args.degree,
           "tolerances": {"verify": args.tol_verify,
                          "contract": args.tol_contract}}
    out.update(fields)
    return out


def _problem_and_z(args, payload_in):
    if payload_in is not None:
        p = problem_from_json(payload_in["problem"])
        if "Z" in payload_in:
            return p, schur_from_json(payload_in["Z"])
    else:
        p = random_problem(args.u, args.y, args.f, args.seed,
                           scale=GEN_OMEGA_SCALE)
    Z = random_constrained_z(p, 2, args.seed + 1, scale=GEN_Z_SCALE)
    return p, Z


def _report_fields(rep) -> dict:
    return {"recurrence_residual": rep.recurrence_residual,
            "partial_gram_excess": rep.partial_gram_excess,
            "grid_sup_norm": rep.grid_sup_norm, "degree": rep.degree}


def _cmd_gen(args, payload_in):
    p, Z = _problem_and_z(args, payload_in)
    out = _envelope(args, problem=problem_to_json(p), Z=schur_to_json(Z),
                    unique=uniqueness_certificate(p), ok=True, failures=[])
    return out, EXIT_OK


def _cmd_solve(args, payload_in):
    p, Z = _problem_and_z(args, payload_in)
    N = args.degree
    H = solve_from_Z(p, Z, N, constraint_tol=args.tol_contract)
    rep = verify_solution(p, H, N)
    failures = []
    if rep.recurrence_residual > args.tol_verify:
        failures.append(f"recurrence_residual {rep.recurrence_residual:.3e} "
                        f"exceeds {args.tol_verify:g}")
    if rep.partial_gram_excess > args.tol_contract:
        failures.append(f"partial_gram_excess {rep.partial_gram_excess:.3e} "
                        f"exceeds {args.tol_contract:g}")
    out = _envelope(args, problem=problem_to_json(p), H=poly_to_json(H),
                    report=_report_fields(rep), ok=not failures,
                    failures=failures)
    return out, EXIT_OK if not failures else EXIT_VERIFY


def _cmd_verify(args, payload_in):
    if payload_in is None:
        raise ConfigError("verify requires --in with a problem and H")
    p = problem_from_json(payload_in["problem"])
    H = poly_from_json(payload_in["H"])
    rep = verify_solution(p, H, H.degree)
    failures = []
    if rep.recurrence_residual > args.tol_verify:
        failures.append(f"recurrence_residual {rep.recurrence_residual:.3e} "
                        f"exceeds {args.tol_verify:g}")
    if rep.partial_gram_excess > args.tol_contract:
        failures.append(f"partial_gram_excess {rep.partial_gram_excess:.3e} "
                        f"exceeds {args.tol_contract:g}")
    out = _envelope(args, report=_report_fields(rep), ok=not failures,
                    failures=failures)
    return out, EXIT_OK if not failures else EXIT_VERIFY


def _cmd_fiber(args, payload_in):
    p, Z = _problem_and_z(args, payload_in)
    N = args.degree
    H = solve_from_Z(p, Z, N, constraint_tol=args.tol_contract)
    Gamma = column_operator(H, N)
    C = central_C(p, Gamma)
    Z1 = z_from_C(p, H, Gamma, C, N)
    H1 = solve_from_Z(p, Z1, N, constraint_tol=args.tol_contract)
    keep = max(0, N - 4)
    diff = max(operator_norm(H.coeff(n) - H1.coeff(n)) for n in range(keep + 1))
    grid = default_grid(N)
    constraint = 0.0
    if p.F.dim > 0:
        constraint = max(operator_norm(Z1.eval(z) @ p.F.basis - p.omega)
                         for z in grid.points)
    failures = []
    if diff > 1e-7:
        failures.append(f"fiber roundtrip residual {diff:.3e} exceeds 1e-07")
    if constraint > args.tol_contract:
        failures.append(f"constraint residual {constraint:.3e} exceeds "
                        f"{args.tol_contract:g}")
    out = _envelope(args, roundtrip_residual=diff,
                    constraint_residual=constraint,
                    w0_residual=Z1.meta["w0_residual"], ok=not failures,
                    failures=failures)
    return out, EXIT_OK if not failures else EXIT_VERIFY


def _cmd_rcl(args, payload_in):
    if payload_in is not None:
        ds = dataset_from_json(payload_in["dataset"])
    else:
        ds = random_data_set(args.seed, u=args.u, y=args.y, f=args.f)
    N = args.degree
    valid = validate_data_set(ds)
    failures = [] if valid else ["data set constraints violated"]
    fields = {"dataset": dataset_to_json(ds), "valid": valid}
    if valid:
        p = underlying_contraction(ds)
        Z = random_constrained_z(p, 2, args.seed + 2, scale=GEN_Z_SCALE)
        H = solve_from_Z(p, Z, N, constraint_tol=args.tol_contract)
        cand = gamma_to_B(ds, column_operator(H, N), N)
        rep = verify_rcl(ds, cand, N)
        fields["projection_residual"] = rep.projection_residual
        fields["intertwining_residual"] = rep.intertwining_residual
        if not rep.ok(args.tol_contract):
            failures.append(
                f"lifting residuals ({rep.projection_residual:.3e}, "
                f"{rep.intertwining_residual:.3e}) exceed {args.tol_contract:g}")
    out = _envelope(args, ok=not failures, failures=failures, **fields)
    return out, EXIT_OK if not failures else EXIT_VERIFY


def _cmd_modelspace(args, payload_in):
    del payload_in
    N = max(args.degree, 32)
    theta = random_inner(args.seed, 2, 1)
    ms = model_space(theta, N)
    dec = check_decompositions(theta, ms)
    Hf = random_multiplier(theta, 2, N, args.seed + 3, scale=GEN_Z_SCALE)
    mb = mult_contraction_test(Hf, ms)
    Z = z_from_H_theta(theta, Hf, ms, N)
    H1 = h_from_Z_theta(theta, Z, N)
    keep = max(0, N - theta.degree_bound - 4)
    diff = max(operator_norm(Hf.coeff(n) - H1.coeff(n))
               for n in range(keep + 1))
    failures = []
    if not dec.ok(args.tol_verify * 10):
        failures.append(f"decomposition residuals {max(dec):.3e} exceed "
                        f"{args.tol_verify * 10:g}")
    if not mb.contractive:
        failures.append(f"multiplication norm {mb.norm:.6f} exceeds 1")
    if diff > 1e-6:
        failures.append(f"multiplier roundtrip residual {diff:.3e} exceeds 1e-06")
    out = _envelope(args, model_dim=ms.basis.dim, h0_dim=ms.H0_basis.dim,
                    decomposition_residuals=list(map(float, dec[:4])),
                    mult_norm=mb.norm, roundtrip_residual=diff,
                    ok=not failures, failures=failures)
    return out, EXIT_OK if not failures else EXIT_VERIFY


def _cmd_selftest(args, payload_in):
    del payload_in
    N = args.degree
    suites = {}
    failures = []

    def record(name, value, tol):
        ok = value <= tol
        suites[name] = {"max_residual": float(value), "tol": tol,
                        "pass": bool(ok)}
        if not ok:
            failures.append(f"{name} {value:.3e} exceeds {tol:g}")

    fixture = InterpolationProblem(U_dim=1, Y_dim=1, F=Subspace(1, np.eye(1)),
                                   omega1=np.array([[0.6]]),
                                   omega2=np.array([[0.8]]))
    Hfix = solve_from_Z(fixture, random_constrained_z(fixture, 2, args.seed),
                        N)
    record("scalar_fixture",
           max(abs(Hfix.coeff(n)[0, 0] - 0.6 * 0.8 ** n) for n in range(N + 1)),
           1e-12)

    worst = 0.0
    for k in range(5):
        p = random_problem(2, 2, 1, args.seed + 10 + k, scale=0.9)
        Z = random_constrained_z(p, 2, args.seed + 40 + k)
        rep = verify_solution(p, solve_from_Z(p, Z, N), N)
        worst = max(worst, rep.recurrence_residual, rep.partial_gram_excess)
    record("solve_verify", worst, 1e-9)

    worst = 0.0
    # the extracted parameter meets the 1e-8 grid constraint only once the
    # truncation tail has decayed, so this suite pins its own degree
    Nf = max(N, 24)
    for k in range(3):
        p = random_problem(2, 2, 1, args.seed + 70 + k, scale=GEN_OMEGA_SCALE)
        Z = random_constrained_z(p, 2, args.seed + 80 + k, scale=GEN_Z_SCALE)
        H = solve_from_Z(p, Z, Nf)
        Gamma = column_operator(H, Nf)
        Z1 = z_from_C(p, H, Gamma, central_C(p, Gamma), Nf)
        H1 = solve_from_Z(p, Z1, Nf)
        diff = max(operator_norm(H.coeff(n) - H1.coeff(n))
                   for n in range(Nf - 4 + 1))
        worst = max(worst, diff)
    record("fiber_roundtrip", worst, 1e-7)

    worst = 0.0
    for k in range(5):
        p = random_problem(3, 2, 2, args.seed + 100 + k, scale=0.9)
        worst = max(worst, omega_roundtrip_residual(p))
    record("omega_roundtrip", worst, 1e-10)

    worst = 0.0
    for k in range(3):
        ds = random_data_set(args.seed + 130 + k)
        p = underlying_contraction(ds)
        Z = random_constrained_z(p, 2, args.seed + 160 + k, scale=GEN_Z_SCALE)
        H = solve_from_Z(p, Z, N)
        rep = verify_rcl(ds, gamma_to_B(ds, column_operator(H, N), N), N)
        worst = max(worst, rep.projection_residual, rep.intertwining_residual)
    record("rcl_equivalence", worst, 1e-8)

    worst = 0.0
    for k in range(2):
        theta = random_inner(args.seed + 200 + k, 2, 1)
        Nm = max(N, 32)
        ms = model_space(theta, Nm)
        dec = check_decompositions(theta, ms)
        Hf = random_multiplier(theta, 2, Nm, args.seed + 230 + k,
                               scale=GEN_Z_SCALE)
        Z = z_from_H_theta(theta, Hf, ms, Nm)
        H1 = h_from_Z_theta(theta, Z, Nm)
        keep = max(0, Nm - theta.degree_bound - 4)
        diff = max(operator_norm(Hf.coeff(n) - H1.coeff(n))
                   for n in range(keep + 1))
        worst = max(worst, max(dec) * 0.1, diff)
    record("modelspace_roundtrip", worst, 1e-6)

    ds = data_set_from_omega(random_problem(2, 2, 1, args.seed + 300))
    record("tilde_validates", 0.0 if validate_data_set(ds) else 1.0, 0.5)

    out = _envelope(args, suites=suites, ok=not failures, failures=failures)
    return out, EXIT_OK if not failures else EXIT_VERIFY


_DISPATCH = {"gen": _cmd_gen, "solve": _cmd_solve, "verify": _cmd_verify,
             "fiber": _cmd_fiber, "rcl": _cmd_rcl,
             "modelspace": _cmd_modelspace, "selftest": _cmd_selftest}


def main(argv=None) -> int:
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        payload_in = load(args.inp) if args.inp is not None else None
        payload, code = _DISPATCH[args.cmd](args, payload_in)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LiftkitError as exc:
        text = dumps({"schema": SCHEMA, "command": args.cmd, "ok": False,
                      "error": f"{type(exc).__name__}: {exc}"})
        if args.out:
            save(args.out, {"schema": SCHEMA, "command": args.cmd,
                            "ok": False,
                            "error": f"{type(exc).__name__}: {exc}"})
        else:
            sys.stdout.write(text)
        return EXIT_NUMERIC
    if args.out:
        save(args.out, payload)
    else:
        sys.stdout.write(dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
