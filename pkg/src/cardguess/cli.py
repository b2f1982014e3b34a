"""Command-line interface.

Commands mirror the library: gen (distribution polynomials), moments,
closed-form, interpolate, kshuffle, verify. Output is a single JSON record
with metadata (command, parameters, tier, version, timing) and a payload,
except gen's csv/poly formats which emit bare data for piping. Exact values
are rendered as "p/q" strings; decimals carry their precision. Exit codes:
0 success, 2 guard or validation failure, 3 failed verification invariant.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict
from fractions import Fraction

from . import __version__, closedform, kshuffle, moments, tiers, verify
from .core import GuardError, ShuffleSpec
from .shuffle import gen_slow, gsr_sample

# The exhaustive tier is capped tighter here than in the library; the CLI is
# for interactive use and 2^15 outcomes is already seconds of work.
CLI_SLOW_MAX_N = 15

DEFAULT_PRECISION_ENV = "CARDGUESS_PRECISION"


def _default_precision() -> int:
    raw = os.environ.get(DEFAULT_PRECISION_ENV, "50")
    try:
        value = int(raw)
    except ValueError as exc:
        raise GuardError(f"{DEFAULT_PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise GuardError(f"{DEFAULT_PRECISION_ENV} must be >= 1, got {value}")
    return value


def _rat(x: Fraction) -> str:
    return str(x)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _emit_record(command: str, params: dict, payload: dict, started: float, tier: str | None = None) -> None:
    record = {
        "metadata": {
            "command": command,
            "parameters": params,
            "tier": tier,
            "version": __version__,
            "timing_ms": round((time.perf_counter() - started) * 1000.0, 3),
        },
        "payload": payload,
    }
    _emit(json.dumps(record, sort_keys=True, indent=2) + "\n")


def _distribution_csv(n: int, tier: str) -> str:
    table = moments.distribution_table(n, tier)
    lines = ["guesses,count,probability"]
    for i, count, prob in table.rows:
        lines.append(f"{i},{count},{_rat(prob)}")
    return "\n".join(lines) + "\n"


def _cmd_gen(args, started: float) -> int:
    tier = args.tier
    if tier == "slow" and args.n > CLI_SLOW_MAX_N:
        raise GuardError(f"slow tier is capped at n <= {CLI_SLOW_MAX_N}; use fast or fastest")
    if tier == "slow":
        poly = gen_slow(ShuffleSpec(args.n, 2))
    elif tier == "fast":
        poly = tiers.f_full_fast(args.n)
    else:
        poly = tiers.f_full_fastest(args.n)
    tier_used = "fast" if tier == "fastest" and tiers.fastest_delegates(args.n) else tier
    if args.format == "csv":
        _emit(_distribution_csv(args.n, tier))
        return 0
    if args.format == "poly":
        _emit(poly.format_terms() + "\n")
        return 0
    payload = {
        "n": args.n,
        "coefficients": list(poly.coeffs),
        "mass": sum(poly.coeffs),
        "tier_used": tier_used,
    }
    _emit_record("gen", {"n": args.n, "tier": tier, "format": args.format}, payload, started, tier=tier_used)
    return 0


def _cmd_moments(args, started: float) -> int:
    precision = args.precision if args.precision is not None else _default_precision()
    report = moments.central_and_standardized(args.n, max(args.r, 2), precision=precision)
    payload: dict = {
        "n": args.n,
        "r": args.r,
        "raw": [_rat(v) for v in report.raw[: args.r + 1]],
    }
    if args.central:
        payload["central"] = [_rat(v) for v in report.central[: args.r + 1]]
    if args.standardized:
        if report.standardized is None:
            payload["standardized"] = {"defined": False, "reason": "variance is zero"}
        else:
            payload["standardized"] = {
                "defined": True,
                "precision": report.precision,
                "values": [str(v) for v in report.standardized[: args.r + 1]],
            }
    _emit_record(
        "moments",
        {"n": args.n, "r": args.r, "central": args.central, "standardized": args.standardized},
        payload,
        started,
        tier=report.engine,
    )
    return 0


def _cmd_closed_form(args, started: float) -> int:
    expr = closedform.assemble_moment_expression(args.r, args.alpha)
    terms = {}
    for j, (num, e) in sorted(expr.terms.items()):
        terms[f"B^{j}"] = {"poly": num.format(), "over_L_plus_1_power": e}
    payload = {
        "r": args.r,
        "alpha": args.alpha,
        "expression": expr.format(),
        "terms": terms,
        "tail_over_2^n": _rat(expr.tail),
        "atom": "B = binom(2L,L)/4^L with n = 4L + alpha",
    }
    _emit_record("closed-form", {"r": args.r, "alpha": args.alpha}, payload, started)
    return 0


def _cmd_interpolate(args, started: float) -> int:
    fit = closedform.interpolate_half_moment(args.r, args.parity)
    payload = {
        "r": args.r,
        "parity": args.parity,
        "P": fit.p.format(),
        "Q": fit.q.format(),
        "summary": f"P(L) = {fit.p.format()}, Q(L) = {fit.q.format()}",
        "fit_L": list(fit.fit_range),
        "holdout_L": list(fit.holdout),
        "validated": True,
        "half_length": "2L" if args.parity == "even" else "2L-1",
    }
    _emit_record("interpolate", {"r": args.r, "parity": args.parity}, payload, started)
    return 0


def _cmd_kshuffle(args, started: float) -> int:
    if (args.k is None) == (args.c is None):
        raise GuardError("provide exactly one of --k or --c")
    c = 2**args.k if args.k is not None else args.c
    spec = ShuffleSpec(args.n, c)
    params = {"n": args.n, "c": c, "mode": args.mode}
    if args.mode == "exact":
        value = kshuffle.expected_total(args.n, c)
        payload = {"n": args.n, "c": c, "expectation": _rat(value)}
    elif args.mode == "leading":
        precision = args.precision if args.precision is not None else _default_precision()
        value = kshuffle.leading_term(args.n, c, precision=precision)
        payload = {"n": args.n, "c": c, "value": str(value), "precision": precision}
        params["precision"] = precision
    else:
        report = gsr_sample(spec, trials=args.trials, seed=args.seed)
        payload = {
            "n": args.n,
            "c": c,
            "trials": report.trials,
            "seed": report.seed,
            "rng": report.rng,
            "mean": _rat(report.mean),
            "second_moment": _rat(report.second_moment),
            "variance": _rat(report.variance),
            "stderr_of_mean": float(report.stderr_of_mean),
            "histogram": {str(k): v for k, v in report.histogram.items()},
        }
        params.update({"trials": args.trials, "seed": args.seed})
    _emit_record("kshuffle", params, payload, started)
    return 0


def _cmd_verify(args, started: float) -> int:
    results = verify.run_suite(args.suite)
    payload = {
        "suite": args.suite,
        "checks": [asdict(r) for r in results],
        "passed": sum(1 for r in results if r.ok),
        "failed": sum(1 for r in results if not r.ok),
    }
    _emit_record("verify", {"suite": args.suite}, payload, started)
    return 3 if payload["failed"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cardguess",
        description="Exact distributions and moments for no-feedback card guessing after riffle shuffles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="distribution polynomial of correct guesses, one shuffle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tier", choices=("slow", "fast", "fastest"), default="fastest")
    p.add_argument("--format", choices=("json", "csv", "poly"), default="json")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("moments", help="raw (and optionally central/standardised) moments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--central", action="store_true")
    p.add_argument("--standardized", action="store_true")
    p.add_argument("--precision", type=int, default=None)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("closed-form", help="assembled moment expression in L and B")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--alpha", type=int, choices=(-1, 0, 1, 2), default=0)
    p.set_defaults(func=_cmd_closed_form)

    p = sub.add_parser("interpolate", help="fit P(L), Q(L) for one half-moment")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.set_defaults(func=_cmd_interpolate)

    p = sub.add_parser("kshuffle", help="expected correct guesses for c sequences")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--mode", choices=("exact", "leading", "simulate"), default="exact")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=int, default=None)
    p.set_defaults(func=_cmd_kshuffle)

    p = sub.add_parser("verify", help="run cross-checking invariant suites")
    p.add_argument("--suite", choices=("all", "tiers", "closedform", "series", "kshuffle"), default="all")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return args.func(args, started)
    except (GuardError, ValueError, closedform.InterpolationError) as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        _emit(json.dumps(error, sort_keys=True, indent=2) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
