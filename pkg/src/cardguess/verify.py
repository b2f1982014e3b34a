"""Runtime verification suites surfaced by the command line.

Each suite cross-checks independent computation routes and returns plain
records; the CLI turns a failed check into a nonzero exit so CI can gate on
invariants without running the full development test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import closedform, kshuffle, moments, series, tiers
from .core import RatPoly, ShuffleSpec, eval_at_one
from .shuffle import gen_slow, gen_slow_c


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, ok=bool(ok), detail=detail)


def suite_tiers() -> list[CheckResult]:
    out = []
    for n in range(1, 15):
        slow = gen_slow(ShuffleSpec(n, 2))
        fast = tiers.f_full_fast(n)
        out.append(_check(f"slow == fast at n={n}", slow == fast))
        if n >= 6:
            out.append(_check(f"fast == fastest at n={n}", fast == tiers.f_full_fastest(n)))
        out.append(_check(f"mass 2^{n} at n={n}", eval_at_one(slow) == 2**n))
    big = tiers.f_full_fastest(120)
    out.append(_check("fastest(120) has mass 2^120", eval_at_one(big) == 2**120))
    out.append(_check("fastest(120) leaves some outcome unguessed", big.coefficient(0) > 0))
    return out


_PRINTED_FITS = {
    # (r, parity) -> (P coefficients low-to-high, Q coefficients)
    (1, "even"): (["1/2", "2"], ["-1/2"]),
    (2, "even"): (["-5/2", "-4"], ["5/2", "2"]),
    (3, "even"): (["19/2", "24", "8"], ["-19/2", "-9"]),
    (1, "odd"): (["0", "1"], ["-1/4"]),
    (2, "odd"): (["-1", "-2"], ["3/4", "1"]),
    (3, "odd"): (["3", "9", "4"], ["-13/4", "-9/2"]),
}


def suite_closedform() -> list[CheckResult]:
    out = []
    for (r, parity), (p_ref, q_ref) in sorted(_PRINTED_FITS.items()):
        fit = closedform.interpolate_half_moment(r, parity)
        want_p = RatPoly([Fraction(c) for c in p_ref])
        want_q = RatPoly([Fraction(c) for c in q_ref])
        out.append(
            _check(
                f"fit r={r} {parity} matches published coefficients",
                fit.p == want_p and fit.q == want_q,
                f"P={fit.p.format()}, Q={fit.q.format()}",
            )
        )
    for r in range(1, 9):
        for parity in ("even", "odd"):
            fit = closedform.interpolate_half_moment(r, parity)
            ok = fit.p.degree <= (r + 1) // 2 and fit.q.degree <= r // 2
            out.append(_check(f"degree bounds r={r} {parity}", ok))
    for h in range(1, 11):
        n = 2 * h
        for r in range(1, 5):
            lhs = closedform.partition_combine(h, r, n)
            rhs = moments.half_moment_numeric(n, r)[0]
            out.append(_check(f"partition combine h={h} r={r}", lhs == rhs))
    for n in range(4, 41):
        out.append(
            _check(
                f"first-moment formula at n={n}",
                closedform.closed_form_ex(n) == moments.raw_moment(n, 1),
            )
        )
    ok = all(closedform.partial_sum_identity_holds(L) for L in range(1, 101))
    out.append(_check("central-binomial partial sum identity L<=100", ok))
    for i in range(1, 13):
        n = 24
        lhs = closedform.single_position_double_sum(i, n)
        rhs = closedform.building_block([i], n)
        out.append(_check(f"position count double sum i={i}", lhs == rhs))
    return out


def suite_series() -> list[CheckResult]:
    out = []
    for rep in series.a_identities_check(60):
        out.append(_check(rep.name + " to order 60", rep.ok, "; ".join(rep.mismatches[:3])))
    for rep in series.f1_f2_coefficient_check(8):
        out.append(_check(rep.name + " L<=8", rep.ok, "; ".join(rep.mismatches[:3])))
    for rep in series.coefficient_extraction_check(4, 30):
        out.append(_check(rep.name, rep.ok, "; ".join(rep.mismatches[:3])))
    for r in (1, 2):
        rep = series.partial_fraction_check(r, 10)
        out.append(_check(rep.name, rep.ok, "; ".join(rep.mismatches[:3])))
    return out


def suite_kshuffle() -> list[CheckResult]:
    out = []
    for n in range(1, 41):
        out.append(
            _check(
                f"two sequences reduce to one shuffle at n={n}",
                kshuffle.expected_total(n, 2) == moments.raw_moment(n, 1),
            )
        )
    for c, n_max in ((2, 10), (3, 7), (4, 5)):
        for n in range(1, n_max + 1):
            poly = gen_slow_c(ShuffleSpec(n, c))
            mean = Fraction(sum(i * a for i, a in enumerate(poly.coeffs)), c**n)
            out.append(
                _check(
                    f"nested sum equals enumeration mean c={c} n={n}",
                    kshuffle.expected_total(n, c) == mean,
                )
            )
    values = [kshuffle.expected_total(32, c) for c in (2, 4, 8)]
    out.append(
        _check(
            "more shuffling means fewer hits at n=32",
            values[0] > values[1] > values[2],
            " > ".join(str(v) for v in values),
        )
    )
    for n in (8, 16):
        top = kshuffle.expected_top_half(n, 4)
        total = kshuffle.expected_total(n, 4)
        out.append(_check(f"even-deck halves agree at n={n}", total == 2 * top))
    probs = [
        kshuffle.inner_probability(12, 4, i, m) for i in (1, 5, 6, 12) for m in (1, 2, 4)
    ]
    out.append(
        _check("per-position terms are probabilities", all(0 <= p <= 1 for p in probs))
    )
    return out


SUITES = {
    "tiers": suite_tiers,
    "closedform": suite_closedform,
    "series": suite_series,
    "kshuffle": suite_kshuffle,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in ("tiers", "closedform", "series", "kshuffle"):
            results.extend(SUITES[key]())
        return results
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[name]()
