"""Exact moments of the number of correct guesses after one shuffle.

Raw moments come from any generating-function tier as D^(r) F_n(q) at q=1
divided by 2^n. The factorised tier also yields half-deck moments (top-half
hits from the first sequence, bottom-half hits from the second), which
assemble into full raw moments through independence of the two halves plus
the small excess correction e(r) contributed by the four repaired outcomes.

Everything is carried as exact rationals; only the final standardisation
(dividing by variance^(r/2)) moves to fixed-precision decimals, since those
limits involve pi and cannot stay rational.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from . import tiers
from .core import GFPoly, GuardError, ShuffleSpec, binom, moment_sum
from .shuffle import gen_slow

TIERS = ("slow", "fast", "fastest")

# central_and_standardized switches from polynomial tiers to the fitted
# closed forms above this deck size; both engines agree exactly wherever
# both run (see the cross-checks in the test suite).
CLOSED_FORM_ENGINE_MIN_N = 2000


def _f_n(n: int, tier: str) -> GFPoly:
    if tier == "slow":
        return gen_slow(ShuffleSpec(n, 2))
    if tier == "fast":
        return tiers.f_full_fast(n)
    if tier == "fastest":
        return tiers.f_full_fastest(n)
    raise ValueError(f"unknown tier {tier!r}; expected one of {TIERS}")


def raw_moment(n: int, r: int, tier: str = "fastest") -> Fraction:
    """E[X^r] for the one-shuffle deck of n cards, exact."""
    if n < 1:
        raise ValueError(f"deck size must be >= 1, got {n}")
    if r < 0:
        raise ValueError(f"moment order must be >= 0, got {r}")
    return Fraction(moment_sum(_f_n(n, tier), r), 2**n)


def excess_e(r: int) -> int:
    """Correction term for the factorised tier: 4*4^r - 2(3^r + 2^r)."""
    if r < 0:
        raise ValueError(f"moment order must be >= 0, got {r}")
    return 4 * 4**r - 2 * (3**r + 2**r)


def half_moment_numeric(n: int, r: int) -> tuple[Fraction, Fraction]:
    """(C[Y^r], C[Z^r]): r-th moment numerators of the two half counts.

    Y counts top-half hits from the first sequence and Z bottom-half hits
    from the second; the numerators are 2^(n-h) D^(r) F_A(1) and
    2^h D^(r) F_B(1).
    """
    if n < 1:
        raise ValueError(f"deck size must be >= 1, got {n}")
    if r < 0:
        raise ValueError(f"moment order must be >= 0, got {r}")
    h = (n + 1) // 2
    fa = tiers.f_a(h)
    fb = fa if n - h == h else tiers.f_b(n, h)
    return (
        Fraction(2 ** (n - h) * moment_sum(fa, r)),
        Fraction(2**h * moment_sum(fb, r)),
    )


def assemble_raw_from_halves(n: int, r: int) -> Fraction:
    """E[X^r] rebuilt from half moments: binomial cross terms plus e(r)/2^n.

    Valid where the factorised tier is: the two half counts are independent,
    so E[(Y+Z)^r] expands by the binomial theorem over E[Y^i] E[Z^(r-i)].
    """
    if n < tiers.FASTEST_MIN_N:
        raise GuardError(
            f"half-moment assembly needs n >= {tiers.FASTEST_MIN_N}, got {n}"
        )
    if r < 0:
        raise ValueError(f"moment order must be >= 0, got {r}")
    h = (n + 1) // 2
    fa = tiers.f_a(h)
    fb = fa if n - h == h else tiers.f_b(n, h)
    pow2n = 2**n
    ey = [Fraction(2 ** (n - h) * moment_sum(fa, i), pow2n) for i in range(r + 1)]
    ez = [Fraction(2**h * moment_sum(fb, i), pow2n) for i in range(r + 1)]
    total = sum(binom(r, i) * ey[i] * ez[r - i] for i in range(r + 1))
    return total + Fraction(excess_e(r), pow2n)


@dataclass(frozen=True)
class MomentReport:
    """Raw, central, and standardised moments up to a requested order."""

    n: int
    max_r: int
    raw: list[Fraction]
    central: list[Fraction]
    standardized: list[Decimal] | None
    precision: int
    engine: str


def central_from_raw(raw: list[Fraction]) -> list[Fraction]:
    """Central moments by exact binomial expansion around the mean."""
    mu = raw[1]
    out = []
    for r in range(len(raw)):
        acc = Fraction(0)
        for j in range(r + 1):
            acc += binom(r, j) * raw[j] * (-mu) ** (r - j)
        out.append(acc)
    return out


def _to_decimal(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def raw_moments_closed_form(n: int, max_r: int) -> list[Fraction]:
    """Raw moments from the interpolated closed forms, exact at any size."""
    from . import closedform

    return [closedform.evaluate_moment(n, r) for r in range(max_r + 1)]


def central_and_standardized(
    n: int, max_r: int, precision: int = 50, engine: str = "auto"
) -> MomentReport:
    """Full moment report for one deck size.

    engine: "tier" computes the full distribution polynomial, "closedform"
    evaluates the fitted expressions (needed for very large n), "auto" picks
    by size. Standardised moments are None when the variance is zero (n=1).
    """
    if max_r < 2:
        raise ValueError(f"need max_r >= 2, got {max_r}")
    if precision < 1:
        raise ValueError(f"precision must be >= 1, got {precision}")
    if engine == "auto":
        engine = "closedform" if n > CLOSED_FORM_ENGINE_MIN_N else "tier"
    if engine == "tier":
        poly = _f_n(n, "fastest")
        pow2n = 2**n
        raw = [Fraction(moment_sum(poly, r), pow2n) for r in range(max_r + 1)]
    elif engine == "closedform":
        raw = raw_moments_closed_form(n, max_r)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    central = central_from_raw(raw)
    variance = central[2]
    if variance == 0:
        standardized = None
    else:
        with decimal.localcontext() as ctx:
            ctx.prec = precision
            var_dec = _to_decimal(variance)
            sqrt_var = var_dec.sqrt()
            standardized = []
            for r in range(max_r + 1):
                denom = var_dec ** (r // 2) * (sqrt_var if r % 2 else Decimal(1))
                standardized.append(_to_decimal(central[r]) / denom)
    return MomentReport(
        n=n,
        max_r=max_r,
        raw=raw,
        central=central,
        standardized=standardized,
        precision=precision,
        engine=engine,
    )


@dataclass(frozen=True)
class DistributionTable:
    """Exact distribution rows (count, outcomes, probability) plus the mean."""

    n: int
    tier: str
    rows: list[tuple[int, int, Fraction]]
    mean: Fraction


def distribution_table(n: int, tier: str = "fastest") -> DistributionTable:
    """Tabulate the exact distribution of correct guesses for one shuffle."""
    poly = _f_n(n, tier)
    pow2n = 2**n
    rows = [(i, poly.coefficient(i), Fraction(poly.coefficient(i), pow2n)) for i in range(n + 1)]
    mean = Fraction(moment_sum(poly, 1), pow2n)
    return DistributionTable(n=n, tier=tier, rows=rows, mean=mean)
