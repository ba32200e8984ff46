"""Command-line entry point: ``globalphase {sweep,check-linear,dj,recover-linear}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import separability
from .dj import (
    OracleSpec,
    QueryLog,
    classical_decide_general,
    classical_recover_linear,
    dj_run,
)
from .exceptions import GlobalPhaseError, ParseError, PromiseViolated
from .states import PhaseTable, is_product_state
from .sweep import AGREEMENT_TOL, CASES, SweepConfig, sweep

EXIT_OK = 0
EXIT_ENTANGLING = 1
EXIT_ERROR = 2
EXIT_DISAGREEMENT = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_oracle(path: str) -> OracleSpec:
    d = json.loads(_read(path))
    if isinstance(d, dict) and "kind" not in d:
        d = dict(d, kind="explicit")
    return OracleSpec.from_dict(d)


def cmd_sweep(args) -> int:
    config = SweepConfig(
        case=args.case, steps=args.steps, theta=args.theta, sigma=args.sigma, q=args.q
    )
    text, worst = sweep(config, args.jobs)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_ERROR
    if worst >= args.tol:
        print(
            f"error: numeric and analytic columns disagree (max abs_diff {worst:.3e})",
            file=sys.stderr,
        )
        return EXIT_DISAGREEMENT
    return EXIT_OK


def cmd_check_linear(args) -> int:
    table = PhaseTable.from_json(_read(args.path))
    form = separability.fit_linear(table, args.tol)
    if form is not None:
        print(json.dumps({"entangling": False, "form": form.to_dict()}))
        return EXIT_OK
    print(json.dumps({"entangling": True}))
    for v in separability.check_constraints(table, args.tol):
        print(v.to_json())
    return EXIT_ENTANGLING


def cmd_dj(args) -> int:
    oracle = _load_oracle(args.path)
    result = dj_run(oracle)
    general = QueryLog()
    verdict_classical = classical_decide_general(oracle, general)
    try:
        _, linear = classical_recover_linear(oracle)
        linear_count = linear.count
    except PromiseViolated:
        linear_count = None
    report = {
        "n": oracle.n,
        "kind": oracle.kind.value,
        "prob_zero": result.prob_zero,
        "verdict": result.verdict.value,
        "classical_verdict": verdict_classical.value,
        "entangled": not is_product_state(result.phased_state, args.tol),
        "queries": {
            "quantum": 1,
            "classical_general": general.count,
            "classical_linear": linear_count,
        },
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_recover_linear(args) -> int:
    oracle = _load_oracle(args.path)
    form, log = classical_recover_linear(oracle, tol=args.tol)
    print(json.dumps({"form": form.to_dict(), "queries": log.queries, "count": log.count}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="globalphase",
        description="Entanglement generated by global phase functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="write entanglement vs phase parameters as CSV")
    p.add_argument("--case", choices=CASES, default="one-param")
    p.add_argument("--steps", type=int, default=101, help="grid points per axis")
    p.add_argument("--theta", type=float, help="fix theta instead of sweeping it")
    p.add_argument("--sigma", type=float, help="fix sigma instead of sweeping it")
    p.add_argument("--q", type=float, help="fix q instead of sweeping it (mixed case)")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")
    p.add_argument("--tol", type=float, default=AGREEMENT_TOL, help="allowed numeric/analytic gap")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check-linear", help="decide whether a phase table entangles")
    p.add_argument("path", help="phase table JSON ('-' for stdin)")
    p.add_argument("--tol", type=float, default=separability.DEFAULT_TOL)
    p.set_defaults(func=cmd_check_linear)

    p = sub.add_parser("dj", help="run Deutsch-Jozsa on an oracle")
    p.add_argument("path", help="oracle JSON ('-' for stdin)")
    p.add_argument("--tol", type=float, default=1e-9, help="purity tolerance")
    p.set_defaults(func=cmd_dj)

    p = sub.add_parser("recover-linear", help="recover an affine oracle with n+1 queries")
    p.add_argument("path", help="oracle or phase table JSON ('-' for stdin)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_recover_linear)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GlobalPhaseError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
