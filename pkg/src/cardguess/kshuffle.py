"""Exact expected number of correct guesses for any sequence count c.

A deck with c increasing sequences has exactly c^n equally likely outcomes
(words over {1..c}), and k riffle shuffles give c = 2^k. The expected hit
count in the top half is a nested sum over the hit position i, the sequence
m the card came from, and the split T + S = floor(i/c) of the cards smaller
than the guessed value into before/after position i:

    c^n E[Y] = sum_i sum_m sum_{T+S}
        [binom(i-1, T) m^T (c-m)^(i-1-T)] [binom(n-i, S) (m-1)^S (c-m+1)^(n-i-S)]

with the 0^0 = 1 convention so the boundary sequences m = 1 and m = c
contribute. The bottom half mirrors through n (relabel e -> n+1-e and
reverse), which turns it into a top half of length n - h over the same
sample space, so the total is just the sum of the two half expressions.
"""
from __future__ import annotations

import decimal
from decimal import Decimal
from fractions import Fraction

from .core import binom

# pi to 110 digits; enough guard digits for the supported precisions.
_PI_110 = Decimal(
    "3.1415926535897932384626433832795028841971693993751"
    "058209749445923078164062862089986280348253421170679821480865"
)
MAX_LEADING_PRECISION = 100


def _ipow(base: int, exp: int) -> int:
    # 0^0 = 1 so boundary sequences survive
    return 1 if exp == 0 else base**exp


def _half_expectation(n: int, c: int, half_len: int) -> Fraction:
    total = 0
    for i in range(1, half_len + 1):
        v = i // c  # T + S must equal this
        before = i - 1
        after = n - i
        for m in range(1, c + 1):
            for t in range(v + 1):
                s = v - t
                if t > before or s > after:
                    continue
                left = binom(before, t) * _ipow(m, t) * _ipow(c - m, before - t)
                if left == 0:
                    continue
                right = binom(after, s) * _ipow(m - 1, s) * _ipow(c - m + 1, after - s)
                total += left * right
    return Fraction(total, c**n)


def expected_top_half(n: int, c: int) -> Fraction:
    """E[Y]: expected correct guesses in the top half, exact."""
    if n < 1 or c < 1:
        raise ValueError(f"need n >= 1 and c >= 1, got n={n}, c={c}")
    return _half_expectation(n, c, (n + 1) // 2)


def expected_total(n: int, c: int) -> Fraction:
    """E[X] = E[Y] + E[Z]: both halves, the bottom one mirrored."""
    if n < 1 or c < 1:
        raise ValueError(f"need n >= 1 and c >= 1, got n={n}, c={c}")
    h = (n + 1) // 2
    top = _half_expectation(n, c, h)
    bottom = top if n - h == h else _half_expectation(n, c, n - h)
    return top + bottom


def inner_probability(n: int, c: int, i: int, m: int) -> Fraction:
    """P(the position-i guess is correct via sequence m), a probability.

    This is the chance that n-1 two-coin flips (heads m/c before i,
    (m-1)/c after) produce exactly floor(i/c) heads.
    """
    if not 1 <= i <= n or not 1 <= m <= c:
        raise ValueError(f"need 1 <= i <= n and 1 <= m <= c, got i={i}, m={m}")
    v = i // c
    total = 0
    for t in range(v + 1):
        s = v - t
        if t > i - 1 or s > n - i:
            continue
        left = binom(i - 1, t) * _ipow(m, t) * _ipow(c - m, i - 1 - t)
        right = binom(n - i, s) * _ipow(m - 1, s) * _ipow(c - m + 1, n - i - s)
        total += left * right
    return Fraction(total, c ** (n - 1))


def leading_term(n: int, c: int, precision: int = 50) -> Decimal:
    """Large-n approximation 2 sqrt(n / ((c-1) pi)); error is O(1)."""
    if c < 2:
        raise ValueError("leading term is undefined for c = 1 (no shuffling randomness)")
    if n < 1:
        raise ValueError(f"deck size must be >= 1, got {n}")
    if not 1 <= precision <= MAX_LEADING_PRECISION:
        raise ValueError(f"precision must be in 1..{MAX_LEADING_PRECISION}")
    with decimal.localcontext() as ctx:
        ctx.prec = precision + 5
        value = 2 * (Decimal(n) / ((c - 1) * _PI_110)).sqrt()
        ctx.prec = precision
        return +value
