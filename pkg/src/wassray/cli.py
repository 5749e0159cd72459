"""Command-line front end.

One subcommand per core capability::

    wassray dist mu.measure nu.measure
    wassray couple mu.measure nu.measure
    wassray geodesic-section mu.measure nu.measure 0.5 --out mid.measure
    wassray ray-new dirac --origin 0,0 --velocity 1,0 --out ray.txt
    wassray ray-new translation --measure mu.measure --velocity 1,0 --out ray.txt
    wassray ray-validate ray.txt
    wassray busemann ray.txt nu.measure --out-csv curve.csv
    wassray coray ray.txt nu0.measure --out-ray coray.txt
    wassray verify all --report report.txt

Exit codes: 0 success, 1 a verification check failed, 2 input or parse
error, 3 solver error, 4 non-convergence. Numeric output uses 12
significant digits.
"""

from __future__ import annotations

import argparse
import sys

from .busemann import DEFAULT_MAX_DOUBLINGS, DEFAULT_T0, DEFAULT_TOL, busemann_value
from .coray import DEFAULT_TOL as CORAY_TOL
from .coray import construct_coray
from .errors import MeasureFileError
from .io import read_measure, read_ray, write_measure, write_ray
from .measures import dirac
from .ot import solve_ot
from .paths import lift_geodesic, make_dirac_ray, make_translation_ray, section, validate_ray
from .verify import SUITE_NAMES, format_report, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_SOLVER_ERROR = 3
EXIT_NO_CONVERGENCE = 4


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _vector(text: str):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise MeasureFileError(f"expected comma-separated numbers, got {text!r}") from None


def _float_list(text: str):
    return _vector(text)


def _time_pairs(text: str):
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 2:
            raise MeasureFileError(f"expected 't1:t2' pairs, got {chunk!r}")
        pairs.append((float(parts[0]), float(parts[1])))
    return pairs


def _cmd_dist(args) -> int:
    mu = read_measure(args.mu)
    nu = read_measure(args.nu)
    plan = solve_ot(mu, nu, args.p)
    print(_fmt(plan.cost))
    if args.coupling:
        for i, j, m in zip(plan.left, plan.right, plan.masses):
            print(f"{i} {j} {_fmt(m)}")
    return EXIT_OK


def _cmd_couple(args) -> int:
    mu = read_measure(args.mu)
    nu = read_measure(args.nu)
    plan = solve_ot(mu, nu, args.p)
    print(f"cost {_fmt(plan.cost)}")
    print(f"entries {len(plan.masses)}")
    for i, j, m in zip(plan.left, plan.right, plan.masses):
        print(f"{i} {j} {_fmt(m)}")
    return EXIT_OK


def _cmd_geodesic_section(args) -> int:
    mu = read_measure(args.mu)
    nu = read_measure(args.nu)
    lift = lift_geodesic(solve_ot(mu, nu, args.p))
    snapshot = section(lift, args.t)
    if args.out:
        write_measure(snapshot, args.out)
        print(f"wrote {args.out}")
    else:
        from .io import format_measure

        sys.stdout.write(format_measure(snapshot))
    return EXIT_OK


def _cmd_ray_new(args) -> int:
    velocity = _vector(args.velocity)
    if args.kind == "dirac":
        if args.origin is None:
            raise MeasureFileError("ray-new dirac needs --origin")
        ray = make_dirac_ray(_vector(args.origin), velocity, p=args.p)
    else:
        if args.measure is None:
            raise MeasureFileError("ray-new translation needs --measure")
        ray = make_translation_ray(read_measure(args.measure), velocity, p=args.p)
    write_ray(ray, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_ray_validate(args) -> int:
    ray = read_ray(args.ray)
    pairs = _time_pairs(args.pairs) if args.pairs else ()
    report = validate_ray(ray, pairs)
    print(f"speed {_fmt(ray.speed)}")
    print(f"pairs {len(report.pairs)}")
    for (t1, t2), gap, rel, resid in zip(
        report.pairs, report.gaps, report.relative_gaps, report.speed_residuals
    ):
        print(
            f"pair {_fmt(t1)} {_fmt(t2)} gap {_fmt(gap)} relative {_fmt(rel)} "
            f"speed-residual {_fmt(resid)}"
        )
    print(f"result {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_busemann(args) -> int:
    ray = read_ray(args.ray)
    nu = read_measure(args.nu)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    estimate = busemann_value(
        ray, nu, t0=args.t0, tol=tol, max_doublings=args.max_doublings
    )
    print(f"value {_fmt(estimate.value)}")
    print(f"t_final {_fmt(estimate.t_final)}")
    print(f"last_decrement {_fmt(estimate.last_decrement)}")
    print(f"lower_bound {_fmt(estimate.lower_bound)}")
    print(f"converged {'true' if estimate.converged else 'false'}")
    if args.out_csv:
        with open(args.out_csv, "w") as fh:
            fh.write("t,value\n")
            for t, v in estimate.schedule:
                fh.write(f"{_fmt(t)},{_fmt(v)}\n")
        print(f"wrote {args.out_csv}")
    return EXIT_OK if estimate.converged else EXIT_NO_CONVERGENCE


def _cmd_coray(args) -> int:
    ray = read_ray(args.ray)
    nu0 = read_measure(args.nu0)
    schedule = _float_list(args.schedule) if args.schedule else None
    test_times = _float_list(args.test_times) if args.test_times else None
    tol = args.tol if args.tol is not None else CORAY_TOL
    result = construct_coray(ray, nu0, schedule=schedule, test_times=test_times, tol=tol)
    print(f"steps {len(result.schedule)}")
    print(f"final_diagnostic {_fmt(result.diagnostics[-1])}")
    print(f"speed {_fmt(result.ray.speed)}")
    print(f"converged {'true' if result.converged else 'false'}")
    if args.out_ray:
        write_ray(result.ray, args.out_ray)
        print(f"wrote {args.out_ray}")
    if args.out_csv:
        with open(args.out_csv, "w") as fh:
            fh.write("t,length,gap\n")
            gaps = ("nan",) + tuple(_fmt(g) for g in result.diagnostics)
            for t, length, gap in zip(result.schedule, result.lengths, gaps):
                fh.write(f"{_fmt(t)},{_fmt(length)},{gap}\n")
        print(f"wrote {args.out_csv}")
    return EXIT_OK if result.converged else EXIT_NO_CONVERGENCE


def _cmd_verify(args) -> int:
    if args.suite not in SUITE_NAMES + ("all",):
        print(f"unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES + ('all',))}",
              file=sys.stderr)
        return EXIT_INPUT_ERROR
    results = run_suite(args.suite, args.seed)
    report = format_report(args.suite, args.seed, results)
    sys.stdout.write(report)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wassray",
        description="Exact transport distances, geodesics, rays, co-rays, and "
        "Busemann functions for finitely supported measures on R^d.",
    )
    parser.add_argument("--p", type=float, default=2.0, help="transport order in (1, 16]")
    parser.add_argument(
        "--tol", type=float, default=None, help="tolerance override where applicable"
    )
    parser.add_argument("--seed", type=int, default=1, help="seed for the verify suites")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for script compatibility; solves run sequentially",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("dist", help="transport distance between two measure files")
    sp.add_argument("mu")
    sp.add_argument("nu")
    sp.add_argument("--coupling", action="store_true", help="also print plan entries")
    sp.set_defaults(func=_cmd_dist)

    sp = sub.add_parser("couple", help="optimal coupling between two measure files")
    sp.add_argument("mu")
    sp.add_argument("nu")
    sp.set_defaults(func=_cmd_couple)

    sp = sub.add_parser(
        "geodesic-section", help="interpolating measure at a time along the geodesic"
    )
    sp.add_argument("mu")
    sp.add_argument("nu")
    sp.add_argument("t", type=float)
    sp.add_argument("--out", default=None, help="measure file to write (default stdout)")
    sp.set_defaults(func=_cmd_geodesic_section)

    sp = sub.add_parser("ray-new", help="write a ray file")
    sp.add_argument("kind", choices=("dirac", "translation"))
    sp.add_argument("--origin", default=None, help="comma-separated coordinates (dirac)")
    sp.add_argument("--measure", default=None, help="measure file (translation)")
    sp.add_argument("--velocity", required=True, help="comma-separated coordinates")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_ray_new)

    sp = sub.add_parser("ray-validate", help="sampled pair-coupling validation of a ray file")
    sp.add_argument("ray")
    sp.add_argument(
        "--pairs", default=None, help="extra time pairs as 't1:t2,t1:t2' beyond the defaults"
    )
    sp.set_defaults(func=_cmd_ray_validate)

    sp = sub.add_parser("busemann", help="Busemann value of a unit-speed ray at a measure")
    sp.add_argument("ray")
    sp.add_argument("nu")
    sp.add_argument("--t0", type=float, default=DEFAULT_T0)
    sp.add_argument("--max-doublings", type=int, default=DEFAULT_MAX_DOUBLINGS)
    sp.add_argument("--out-csv", default=None, help="write the (t, truncation) schedule")
    sp.set_defaults(func=_cmd_busemann)

    sp = sub.add_parser("coray", help="co-ray limit construction from a start measure")
    sp.add_argument("ray")
    sp.add_argument("nu0")
    sp.add_argument("--schedule", default=None, help="comma-separated target times")
    sp.add_argument("--test-times", default=None, help="comma-separated evaluation times")
    sp.add_argument("--out-ray", default=None, help="ray file for the constructed co-ray")
    sp.add_argument("--out-csv", default=None, help="write (t, length, gap) diagnostics")
    sp.set_defaults(func=_cmd_coray)

    sp = sub.add_parser("verify", help="run a seeded verification suite")
    sp.add_argument("suite", help="one of: " + ", ".join(SUITE_NAMES + ("all",)))
    sp.add_argument("--report", default=None, help="write the report to this path")
    sp.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MeasureFileError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except RuntimeError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER_ERROR


if __name__ == "__main__":
    sys.exit(main())
