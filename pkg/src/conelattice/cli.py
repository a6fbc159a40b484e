"""Command-line interface: project vectors, run suites, print demo tables.

Exit codes: 0 success / all pass / CONSISTENT; 1 violations found or
INCONSISTENT (inverted by ``verify --expect-fail``); 2 invalid input;
3 numerical failure (non-convergence, conditioning, inconclusive runs).
All numbers are printed with 12 significant digits so identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import (
    ConditioningError,
    ConeLatticeError,
    DimensionMismatchError,
    InstanceFormatError,
    InternalCheckError,
    NonConvergenceError,
    SpaceValidationError,
)
from .funcspaces import (
    build_eval_space,
    cauchy_distance,
    cauchy_distance_exact,
    eval_nodes,
    gauss_grid,
)
from .harness import (
    Classification,
    TrialConfig,
    format12,
    run_suite,
)
from .instances import load_instance
from .order import pos_part_rows
from .projection import certificate_check, project, project_dykstra_rows
from .spaces import norm_rows

EXIT_PASS = 0
EXIT_VIOLATIONS = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL_FAILURE = 3

# Fixed thresholds for the demo tables.
CAUCHY_DEMO_TOL = 1e-4
EVAL_INNER_TOL = 1e-11
EVAL_PROJECTION_TOL = 1e-8

VERIFY_SUITES = (
    "lattice-norm",
    "isotone",
    "subadditive",
    "positive-pairs",
    "identities",
    "moreau",
    "oracle-agreement",
    "classify",
)


def _vector_literal(text):
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated decimals, got {text!r}"
        ) from None
    if not values or not all(np.isfinite(values)):
        raise argparse.ArgumentTypeError(f"vector {text!r} must be finite and nonempty")
    return np.array(values)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conelattice",
        description="Metric projection onto lattice cones and its verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    proj = sub.add_parser("project", help="project a vector onto the positive cone")
    proj.add_argument("--instance", required=True, help="instance JSON file")
    proj.add_argument("--vector", required=True, type=_vector_literal,
                      help="comma-separated decimals, e.g. 1,-2")
    proj.add_argument("--method", choices=("closed_form", "dykstra"),
                      default="dykstra")
    proj.add_argument("--tol", type=float, default=1e-10,
                      help="Dykstra tolerance; the certificate is checked at "
                           "max(10*tol, 1e-8)")
    proj.add_argument("--max-iter", type=int, default=100_000)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--instance", required=True)
    verify.add_argument("--suite", required=True, choices=VERIFY_SUITES)
    verify.add_argument("--trials", type=int, default=10_000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tol", type=float, default=1e-7)
    verify.add_argument("--out", default=None, help="also write the JSON report here")
    verify.add_argument("--expect-fail", action="store_true",
                        help="refutation mode: exit 0 when violations are found")

    demo = sub.add_parser("demo", help="print a demo table as CSV")
    demo_sub = demo.add_subparsers(dest="demo_name", required=True)
    cauchy = demo_sub.add_parser("cauchy",
                                 help="quadrature distances of the ramp family")
    cauchy.add_argument("--n-max", type=int, default=64)
    cauchy.add_argument("--quadrature-nodes", type=int, default=4096)
    weighted = demo_sub.add_parser("weighted-eval",
                                   help="weighted point-evaluation space")
    weighted.add_argument("--terms", type=int, default=16)
    return parser


def cmd_project(args) -> int:
    ospace = load_instance(args.instance)
    result = project(ospace, args.vector, method=args.method, tol=args.tol,
                     max_iter=args.max_iter)
    cert_tol = max(10.0 * args.tol, 1e-8)
    certificate = certificate_check(ospace, args.vector, result.point, tol=cert_tol)
    point = [float(c) for c in result.point]
    print("point: (" + ", ".join(format12(c) for c in point) + ")")
    print(f"method: {result.method}")
    print(f"iterations: {result.iterations}")
    print(f"residual: {format12(result.residual)}")
    print(
        "certificate: "
        f"orthogonality_defect={format12(certificate.orthogonality_defect)} "
        f"worst_generator_angle={format12(certificate.worst_generator_angle)} "
        f"verdict={'true' if certificate.verdict else 'false'}"
    )
    document = {
        "point": [float(format12(c)) for c in point],
        "method": result.method,
        "iterations": result.iterations,
        "residual": float(format12(result.residual)),
        "certificate": {
            "orthogonality_defect": float(format12(certificate.orthogonality_defect)),
            "worst_generator_angle": float(format12(certificate.worst_generator_angle)),
            "verdict": certificate.verdict,
        },
    }
    print(json.dumps(document, sort_keys=True, separators=(",", ":")))
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.trials < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_INVALID_INPUT
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INVALID_INPUT
    if not 0 <= args.seed < 2**64:
        print("error: --seed must fit in 64 unsigned bits", file=sys.stderr)
        return EXIT_INVALID_INPUT
    ospace = load_instance(args.instance)
    cfg = TrialConfig(trials=args.trials, seed=args.seed, tol=args.tol)
    outcome = run_suite(ospace, args.suite, cfg)
    if isinstance(outcome, Classification):
        summary = (
            f"suite=classify instance={outcome.instance_digest} "
            f"verdict={outcome.verdict} side={outcome.side}"
        )
        failed = outcome.verdict != "CONSISTENT"
        inconclusive = False
    else:
        summary = (
            f"suite={outcome.suite} instance={outcome.instance_digest} "
            f"verdict={outcome.verdict} violations={outcome.violations} "
            f"trials={outcome.trials_run}"
        )
        failed = outcome.verdict == "fail"
        inconclusive = outcome.verdict == "inconclusive"
    text = outcome.to_json()
    print(summary)
    print(text)
    if args.out is not None:
        Path(args.out).write_text(text + "\n")
    if inconclusive:
        return EXIT_NUMERICAL_FAILURE
    if args.expect_fail:
        return EXIT_PASS if failed else EXIT_VIOLATIONS
    return EXIT_VIOLATIONS if failed else EXIT_PASS


def cmd_demo_cauchy(args) -> int:
    if args.n_max < 1:
        print("error: --n-max must be at least 1", file=sys.stderr)
        return EXIT_INVALID_INPUT
    if args.quadrature_nodes < 1:
        print("error: --quadrature-nodes must be at least 1", file=sys.stderr)
        return EXIT_INVALID_INPUT
    grid = gauss_grid(args.quadrature_nodes)
    print("n,m,measured_D2,exact_D2,abs_error")
    all_ok = True
    n = 1
    while n <= args.n_max:
        m = 2 * n
        measured = cauchy_distance(grid, n, m) ** 2
        exact = cauchy_distance_exact(n, m) ** 2
        error = abs(measured - exact)
        all_ok = all_ok and error <= CAUCHY_DEMO_TOL
        print(f"{n},{m},{format12(measured)},{format12(exact)},{format12(error)}")
        n *= 2
    return EXIT_PASS if all_ok else EXIT_VIOLATIONS


def cmd_demo_weighted(args) -> int:
    if args.terms < 1:
        print("error: --terms must be at least 1", file=sys.stderr)
        return EXIT_INVALID_INPUT
    sizes = []
    n = 1
    while n <= args.terms:
        sizes.append(n)
        n *= 2
    if sizes[-1] != args.terms:
        sizes.append(args.terms)
    print("terms,measured_inner,exact_inner,abs_error,projection_gap")
    all_ok = True
    for terms in sizes:
        nodes = eval_nodes(terms)
        ospace = build_eval_space(terms)
        ones = np.ones(terms)
        measured = float(np.sum(nodes.weights * ones * ones))
        exact = 2.0 - 2.0 ** (1 - terms)
        error = abs(measured - exact)
        k = np.arange(terms)
        probe = ((-1.0) ** k) * (1.0 + k / terms)
        clipped = pos_part_rows(ospace.order, probe[None, :])
        batch = project_dykstra_rows(ospace, probe[None, :])
        gap = float(norm_rows(ospace.space, clipped - batch.points)[0])
        all_ok = all_ok and error <= EVAL_INNER_TOL and gap <= EVAL_PROJECTION_TOL
        print(
            f"{terms},{format12(measured)},{format12(exact)},"
            f"{format12(error)},{format12(gap)}"
        )
    return EXIT_PASS if all_ok else EXIT_VIOLATIONS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "project":
            return cmd_project(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "demo":
            if args.demo_name == "cauchy":
                return cmd_demo_cauchy(args)
            return cmd_demo_weighted(args)
        raise AssertionError(f"unhandled command {args.command!r}")
    except (ConditioningError, NonConvergenceError, InternalCheckError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE
    except (
        InstanceFormatError,
        SpaceValidationError,
        DimensionMismatchError,
        ConeLatticeError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
