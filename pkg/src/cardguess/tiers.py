"""Recurrence-based generating functions for one shuffle: fast and fastest.

Both tiers build the full-deck distribution F_n(q) from half-deck pieces.
Write h = ceil(n/2) for the top-half length, a1/a2 for the number of
first/second-sequence cards in the half, and s for the starting label of the
second sequence. With c = floor((a1+a2)/2) + 1 the best guess at the last
half position, the half-deck count satisfies

    G(a1, a2, s, q) = q^[c == a1] G(a1-1, a2, s, q)
                    + q^[c == s+a2-1] G(a1, a2-1, s, q),      G(0, 0, s, q) = 1,

because the last card is either the a1-th of the first sequence or the
(s+a2-1)-valued card of the second. The fast tier assembles

    F_n(q) = sum_{a,b} G(a, h-a, a+(n-h-b)+1, q) * G(b, n-h-b, b+(h-a)+1, q),

where the second factor is the bottom half mirrored through n (relabel
e -> n+1-e, reverse), which turns it into another top-half instance.

The fastest tier drops s by counting only first-sequence hits,

    G(a1, a2, q) = q^[c == a1] G(a1-1, a2, q) + G(a1, a2-1, q),

so the double sum factorises into a single product F_A(q) * F_B(q) with
F_A = sum_a G(a, h-a, q), F_B = sum_b G(b, n-h-b, q). Exactly four
half-objects then mis-count (the ones whose hits come from the second
sequence on top or the first on the bottom; each completes to the identity
permutation with four correct guesses), and adding 4q^4 - 2q^3 - 2q^2
repairs them. The repair constants are measured to be valid for all n >= 4
(n = 3 breaks because the identity then has only three correct guesses);
below n = 6 we still route to the fast tier, which costs nothing there.

All recurrences are filled iteratively in diagonal order (a1 + a2 constant),
keeping one diagonal in memory, so n = 1000 needs neither deep recursion nor
gigabytes. Coefficients are plain Python ints and stay exact.
"""
from __future__ import annotations

from functools import lru_cache

from .core import GFPoly

# F_n(q) = excess + F_A * F_B is applied from this deck size up.
FASTEST_MIN_N = 6

# Excess polynomial 4q^4 - 2q^3 - 2q^2 as a low-degree coefficient list.
EXCESS_COEFFS = (0, 0, -2, -2, 4)


def _add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return out


def _fill_row_s(half_len: int, s: int) -> list[list[int]]:
    """Final diagonal of the s-aware recurrence: G(a, half_len - a, s, q)."""
    prev: list[list[int] | None] = [[1]]
    for d in range(1, half_len + 1):
        c = d // 2 + 1
        cur: list[list[int] | None] = []
        for a1 in range(d + 1):
            a2 = d - a1
            pa = prev[a1 - 1] if a1 >= 1 else None
            pb = prev[a1] if a1 <= d - 1 else None
            if pa is not None and c == a1:
                pa = [0] + pa
            if pb is not None and c == s + a2 - 1:
                pb = [0] + pb
            if pa is None:
                cur.append(list(pb))
            elif pb is None:
                cur.append(list(pa))
            else:
                cur.append(_add(pa, pb))
        prev = cur
    return prev


def _clamped_s(half_len: int, s: int) -> int:
    # The second-sequence delta can only fire while s + a2 - 1 <= d//2 + 1,
    # so every s past half_len//2 + 3 produces the identical table.
    return min(s, half_len // 2 + 3)


@lru_cache(maxsize=64)
def _row_with_s(half_len: int, s_clamped: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(p) for p in _fill_row_s(half_len, s_clamped))


def g_half(a1: int, a2: int, s: int) -> GFPoly:
    """Half-deck distribution for a1 first-sequence and a2 second-sequence
    cards, the second sequence starting at label s; q marks correct guesses.
    """
    if a1 < 0 or a2 < 0:
        raise ValueError("sequence lengths must be >= 0")
    if s < 1:
        raise ValueError("second-sequence start label must be >= 1")
    half = a1 + a2
    return GFPoly(_row_with_s(half, _clamped_s(half, s))[a1])


def f_full_fast(n: int) -> GFPoly:
    """Full-deck distribution after one shuffle via the s-aware recurrence.

    Builds one half-deck table per distinct (length, s) pair, which keeps the
    tier practical up to a few hundred cards; beyond that use f_full_fastest.
    """
    if n < 1:
        raise ValueError(f"deck size must be >= 1, got {n}")
    h = (n + 1) // 2
    rows: dict[tuple[int, int], list[list[int]]] = {}

    def row(length: int, s: int) -> list[list[int]]:
        key = (length, _clamped_s(length, s))
        if key not in rows:
            rows[key] = _fill_row_s(*key)
        return rows[key]

    acc = [0]
    for a in range(h + 1):
        for b in range(n - h + 1):
            g_top = row(h, a + (n - h - b) + 1)[a]
            g_bot = row(n - h, b + (h - a) + 1)[b]
            prod = [0] * (len(g_top) + len(g_bot) - 1)
            for i, x in enumerate(g_top):
                if x:
                    for j, y in enumerate(g_bot):
                        prod[i + j] += x * y
            acc = _add(acc, prod)
    return GFPoly(acc)


@lru_cache(maxsize=32)
def _row_ns(half_len: int) -> tuple[tuple[int, ...], ...]:
    """Final diagonal of the s-free recurrence: G(a, half_len - a, q)."""
    prev: list[list[int]] = [[1]]
    for d in range(1, half_len + 1):
        c = d // 2 + 1
        cur = []
        for a1 in range(d + 1):
            pa = prev[a1 - 1] if a1 >= 1 else None
            pb = prev[a1] if a1 <= d - 1 else None
            if pa is not None and c == a1:
                pa = [0] + pa
            if pa is None:
                cur.append(list(pb))
            elif pb is None:
                cur.append(list(pa))
            else:
                cur.append(_add(pa, pb))
        prev = cur
    return tuple(tuple(p) for p in prev)


def g_half_ns(a1: int, a2: int) -> GFPoly:
    """Half-deck count marking only first-sequence correct guesses."""
    if a1 < 0 or a2 < 0:
        raise ValueError("sequence lengths must be >= 0")
    return GFPoly(_row_ns(a1 + a2)[a1])


def f_a(h: int) -> GFPoly:
    """Top-half factor: sum over a of the s-free half count of length h."""
    if h < 0:
        raise ValueError(f"half length must be >= 0, got {h}")
    acc = [0]
    for row in _row_ns(h):
        acc = _add(acc, list(row))
    return GFPoly(acc)


def f_b(n: int, h: int) -> GFPoly:
    """Bottom-half factor; the mirrored bottom is a top half of length n-h."""
    if not 0 <= h <= n:
        raise ValueError(f"need 0 <= h <= n, got h={h}, n={n}")
    return f_a(n - h)


def fastest_delegates(n: int) -> bool:
    """True when f_full_fastest answers via the fast tier instead."""
    return n < FASTEST_MIN_N


def f_full_fastest(n: int) -> GFPoly:
    """Full-deck distribution via the factorised form plus excess repair."""
    if n < 1:
        raise ValueError(f"deck size must be >= 1, got {n}")
    if fastest_delegates(n):
        return f_full_fast(n)
    h = (n + 1) // 2
    fa = f_a(h)
    fb = fa if n - h == h else f_a(n - h)
    return fa * fb + GFPoly(EXCESS_COEFFS)
