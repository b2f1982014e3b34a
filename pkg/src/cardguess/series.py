"""Power-series verification of the summation identities behind the fits.

Series in y are truncated lists of exact rationals. Radicals are handled by
expanding sqrt(1-y) itself as a binomial series and composing with rational
arithmetic (products, reciprocals, shifts), so no symbolic algebra is
involved anywhere.

Verified here, coefficient by coefficient:
  * the three central-binomial summation identities (labels A0, A1, A-1),
  * the closed forms of the first two block-sum generating functions
    against brute-force block sums,
  * the coefficient-extraction facts: [y^L] H(y)/(1-y)^(k+1) is a
    polynomial in L of degree <= k, and [y^L] H(y)/(1-y)^(k+1/2) is
    binom(2L,L)/4^L times such a polynomial,
  * the two-fraction partial form of the block-sum generating functions
    with its degree bounds.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .closedform import m_r_bruteforce
from .core import RatPoly, binom
from .linalg import fit_polynomial, solve_exact


@dataclass(frozen=True)
class SeriesGF:
    """Truncated power series in y with Fraction coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, s: int) -> Fraction:
        if not 0 <= s <= self.order:
            raise IndexError(f"coefficient {s} beyond truncation order {self.order}")
        return self.coeffs[s]

    def __add__(self, other: "SeriesGF") -> "SeriesGF":
        k = min(self.order, other.order)
        return SeriesGF(tuple(a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])))

    def __sub__(self, other: "SeriesGF") -> "SeriesGF":
        k = min(self.order, other.order)
        return SeriesGF(tuple(a - b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])))

    def __mul__(self, other: "SeriesGF") -> "SeriesGF":
        k = min(self.order, other.order)
        out = [Fraction(0)] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if a:
                for j in range(0, k + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return SeriesGF(tuple(out))

    def scale(self, f) -> "SeriesGF":
        f = Fraction(f)
        return SeriesGF(tuple(c * f for c in self.coeffs))

    def divide_by_y(self) -> "SeriesGF":
        """Shift down one power; the constant term must vanish."""
        if self.coeffs[0] != 0:
            raise ValueError("cannot divide by y: nonzero constant term")
        return SeriesGF(self.coeffs[1:])

    def reciprocal(self) -> "SeriesGF":
        if self.coeffs[0] == 0:
            raise ValueError("cannot invert a series with zero constant term")
        inv0 = 1 / self.coeffs[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * out[k - j]
            out.append(-acc * inv0)
        return SeriesGF(tuple(out))


def binomial_series(exponent, order: int) -> SeriesGF:
    """(1 - y)^exponent for any rational exponent, exact coefficients."""
    e = Fraction(exponent)
    out = [Fraction(1)]
    for s in range(order):
        out.append(out[-1] * (e - s) / (s + 1) * -1)
    return SeriesGF(tuple(out))


def sqrt_one_minus_y(order: int) -> SeriesGF:
    return binomial_series(Fraction(1, 2), order)


def one_minus_y_power(exponent, order: int) -> SeriesGF:
    """(1 - y)^p assembled from sqrt(1-y) and integer powers only."""
    p = Fraction(exponent)
    if p.denominator not in (1, 2):
        raise ValueError(f"only integer and half-integer exponents, got {p}")
    half = p - (p.numerator // p.denominator)  # 0 or 1/2
    m = p.numerator // p.denominator
    out = sqrt_one_minus_y(order) if half else SeriesGF((Fraction(1),) + (Fraction(0),) * order)
    if m >= 0:
        base = SeriesGF((Fraction(1), Fraction(-1)) + (Fraction(0),) * max(0, order - 1))
        for _ in range(m):
            out = out * base
    else:
        geo = SeriesGF(tuple(Fraction(1) for _ in range(order + 1)))
        for _ in range(-m):
            out = out * geo
    return out


_NAMED = {
    "(1-y)^-1/2": Fraction(-1, 2),
    "(1-y)^-1": Fraction(-1),
    "(1-y)^-3/2": Fraction(-3, 2),
    "(1-y)^-2": Fraction(-2),
    "sqrt(1-y)": Fraction(1, 2),
}


def series_expand(expr: str, order: int) -> SeriesGF:
    """Expand a named expression to the given truncation order.

    Names: the five powers of (1-y) above, the summation identities
    "A0", "A1", "A-1", and the block-sum closed forms "F1", "F2".
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if expr in _NAMED:
        return one_minus_y_power(_NAMED[expr], order)
    if expr == "A0":
        return one_minus_y_power(Fraction(-1, 2), order)
    if expr in ("A1", "A-1"):
        pad = order + 1
        one = SeriesGF((Fraction(1),) + (Fraction(0),) * pad)
        deficit = one - one_minus_y_power(Fraction(1, 2), pad)  # 1 - sqrt(1-y)
        invsqrt = one_minus_y_power(Fraction(-1, 2), pad)
        num = deficit.scale(2) if expr == "A1" else deficit * deficit
        out = (num * invsqrt).divide_by_y()
        return SeriesGF(out.coeffs[: order + 1])
    if expr == "F1":
        y_plus_1 = SeriesGF((Fraction(1), Fraction(1)) + (Fraction(0),) * max(0, order - 1))
        a = (y_plus_1 * one_minus_y_power(Fraction(-3, 2), order)).scale(Fraction(1, 2))
        b = one_minus_y_power(Fraction(-1), order).scale(Fraction(1, 2))
        return a - b
    if expr == "F2":
        three_minus_y = SeriesGF((Fraction(3), Fraction(-1)) + (Fraction(0),) * max(0, order - 1))
        a = (three_minus_y * one_minus_y_power(Fraction(-2), order)).scale(Fraction(1, 2))
        b = one_minus_y_power(Fraction(-3, 2), order).scale(Fraction(3, 2))
        return a - b
    raise ValueError(f"unknown series expression {expr!r}")


@dataclass
class CheckReport:
    """Outcome of one verification sweep; mismatches are data, not errors."""

    name: str
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.mismatches


def a_identity_reference(label: str, s: int) -> Fraction:
    """Claimed y^s coefficient of the three summation identities."""
    if label == "A0":
        return Fraction(binom(2 * s, s), 4**s)
    if label == "A1":
        return Fraction(binom(2 * s + 1, s), 4**s)
    if label == "A-1":
        return Fraction(binom(2 * s, s - 1), 4**s)
    raise ValueError(f"unknown identity label {label!r}")


def a_identities_check(max_s: int) -> list[CheckReport]:
    reports = []
    for label in ("A0", "A1", "A-1"):
        series = series_expand(label, max_s)
        rep = CheckReport(name=f"identity {label}")
        for s in range(max_s + 1):
            rep.checked += 1
            want = a_identity_reference(label, s)
            got = series.coefficient(s)
            if got != want:
                rep.mismatches.append(f"s={s}: series {got} != reference {want}")
        reports.append(rep)
    return reports


def f1_f2_coefficient_check(l_max: int) -> list[CheckReport]:
    """Compare F1/F2 coefficients with brute-force block sums M_r(2L)/2^n."""
    reports = []
    for r, name in ((1, "F1"), (2, "F2")):
        series = series_expand(name, l_max)
        rep = CheckReport(name=f"{name} vs brute force")
        for L in range(l_max + 1):
            rep.checked += 1
            n = 4 * L if L else 4  # any n with h <= ceil(n/2); M_r(0) = 0
            brute = m_r_bruteforce(2 * L, r, n) / 2**n if L else Fraction(0)
            got = series.coefficient(L)
            if got != brute:
                rep.mismatches.append(f"L={L}: series {got} != brute {brute}")
        reports.append(rep)
    return reports


def coefficient_extraction_check(k_max: int, l_max: int, seed: int = 0) -> list[CheckReport]:
    """Verify the polynomial shape of extracted coefficients, both exponents.

    For random integer polynomials H of degree k: the integer-exponent
    coefficients are fitted to a polynomial in L of degree <= k on k+1
    points and must reproduce every further point; the half-integer ones
    must do the same after dividing out binom(2L,L)/4^L.
    """
    rng = random.Random(seed)
    reports = []
    for k in range(k_max + 1):
        h_coeffs = [rng.randint(-9, 9) for _ in range(k + 1)]
        if h_coeffs[-1] == 0:
            h_coeffs[-1] = 1
        h_series = SeriesGF(tuple(h_coeffs) + (Fraction(0),) * max(0, l_max - k))
        for kind, exponent in (("integer", -(k + 1)), ("half", Fraction(-(2 * k + 1), 2))):
            rep = CheckReport(name=f"extraction k={k} {kind} exponent H={h_coeffs}")
            coeffs = (h_series * one_minus_y_power(exponent, l_max)).coeffs
            if kind == "half":
                atom = [Fraction(binom(2 * L, L), 4**L) for L in range(l_max + 1)]
                values = [coeffs[L] / atom[L] for L in range(l_max + 1)]
            else:
                values = list(coeffs)
            pts = [(L, values[L]) for L in range(k, 2 * k + 1)]
            poly = fit_polynomial(pts)
            if poly.degree > k:
                rep.mismatches.append(f"fitted degree {poly.degree} exceeds bound {k}")
            for L in range(k, l_max + 1):
                rep.checked += 1
                if poly(L) != values[L]:
                    rep.mismatches.append(f"L={L}: polynomial {poly(L)} != extracted {values[L]}")
            reports.append(rep)
    return reports


def partial_fraction_check(r: int, l_max: int) -> CheckReport:
    """Fit the two-fraction form P/(1-y)^(1+r/2) + Q/(1-y)^((1+r)/2).

    Data are the brute-force block sums; the fit uses the bounded degrees
    (deg P <= ceil(r/2), deg Q <= floor(r/2)) and every further coefficient
    must be reproduced exactly.
    """
    if r not in (1, 2):
        raise ValueError("two-fraction form is checked for r = 1 and 2 only")
    deg_p = (r + 1) // 2
    deg_q = r // 2
    unknowns = deg_p + deg_q + 2
    if l_max + 1 < unknowns + 2:
        raise ValueError(f"need l_max >= {unknowns + 1} for fit plus validation")
    data = [Fraction(0)]
    for L in range(1, l_max + 1):
        n = 4 * L
        data.append(m_r_bruteforce(2 * L, r, n) / 2**n)
    u = one_minus_y_power(Fraction(-(2 + r), 2), l_max)
    v = one_minus_y_power(Fraction(-(1 + r), 2), l_max)

    def basis_coeff(series: SeriesGF, shift: int, L: int) -> Fraction:
        return series.coefficient(L - shift) if L >= shift else Fraction(0)

    matrix = []
    rhs = []
    for L in range(unknowns):
        matrix.append(
            [basis_coeff(u, i, L) for i in range(deg_p + 1)]
            + [basis_coeff(v, j, L) for j in range(deg_q + 1)]
        )
        rhs.append(data[L])
    sol = solve_exact(matrix, rhs)
    p = RatPoly(sol[: deg_p + 1])
    q = RatPoly(sol[deg_p + 1 :])
    rep = CheckReport(name=f"two-fraction form r={r}: P={p.format('y')}, Q={q.format('y')}")
    for L in range(l_max + 1):
        rep.checked += 1
        pred = sum(p.coeffs[i] * basis_coeff(u, i, L) for i in range(deg_p + 1))
        pred += sum(q.coeffs[j] * basis_coeff(v, j, L) for j in range(deg_q + 1))
        if pred != data[L]:
            rep.mismatches.append(f"L={L}: form gives {pred}, block sum is {data[L]}")
    return rep
