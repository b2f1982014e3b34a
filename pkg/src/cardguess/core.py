"""Exact arithmetic substrate.

Everything downstream is exact: arbitrary-precision integers, rationals
(``fractions.Fraction``), dense integer polynomials in the counting variable
q (``GFPoly``), dense rational polynomials in the parameter L (``RatPoly``),
binomial coefficients, and the moment operator D t(q) = q t'(q).

``GFPoly`` is the distribution object: coefficient i is the number of shuffle
outcomes with exactly i correct guesses, so the value at q=1 is the size of
the sample space and D^(r) at q=1 is the r-th raw moment numerator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Exact rational type used throughout. Fraction already guarantees the
# invariants we need: positive denominator, lowest terms.
Rat = Fraction


class GuardError(ValueError):
    """A size or validity guard was exceeded (refused, not attempted)."""


def binom(n: int, k: int) -> int:
    """Binomial coefficient with out-of-range k giving 0.

    The recurrences downstream index binomials with lower index as small as
    -1; those terms must vanish silently rather than raise.
    """
    if n < 0:
        raise ValueError(f"binom: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


class GFPoly:
    """Dense polynomial in q with integer coefficients, immutable.

    coeffs[i] is the coefficient of q^i. Degrees stay <= deck size (~1000),
    so dense storage wins for the convolution-heavy workload.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs) if coeffs else [0]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "GFPoly":
        return cls([0])

    @classmethod
    def one(cls) -> "GFPoly":
        return cls([1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "GFPoly") -> "GFPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return GFPoly(out)

    def __sub__(self, other: "GFPoly") -> "GFPoly":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, v in enumerate(other.coeffs):
            out[i] -= v
        return GFPoly(out)

    def __mul__(self, other: "GFPoly") -> "GFPoly":
        if self.is_zero() or other.is_zero():
            return GFPoly.zero()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return GFPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, GFPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"GFPoly({list(self.coeffs)!r})"

    def format_terms(self, var: str = "q") -> str:
        """Human-readable form like ``4 + 4q + 3q^2 + 5q^4``."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0 and not (i == 0 and self.is_zero()):
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else str(mag)
                body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
            if not parts:
                parts.append(body if c >= 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c >= 0 else f"- {body}")
        return " ".join(parts) if parts else "0"


def poly_mul(a: GFPoly, b: GFPoly) -> GFPoly:
    """Coefficient-wise convolution of two counting polynomials."""
    return a * b


def d_operator(p: GFPoly, r: int = 1) -> GFPoly:
    """Apply D t(q) = q t'(q) a total of r times: coefficient i picks up i^r."""
    if r < 0:
        raise ValueError("d_operator: r must be >= 0")
    if r == 0:
        return p
    return GFPoly([c * i**r for i, c in enumerate(p.coeffs)])


def eval_at_one(p: GFPoly) -> int:
    """Sum of coefficients, i.e. the polynomial evaluated at q=1."""
    return sum(p.coeffs)


def moment_sum(p: GFPoly, r: int) -> int:
    """D^(r) p at q=1 without materialising intermediate polynomials."""
    if r == 0:
        return sum(p.coeffs)
    return sum(c * i**r for i, c in enumerate(p.coeffs) if c)


def decompose_l_alpha(n: int) -> tuple[int, int]:
    """Unique (L, alpha) with n = 4L + alpha and alpha in {-1, 0, 1, 2}."""
    if n < 1:
        raise ValueError(f"deck size must be >= 1, got {n}")
    residue = n % 4
    alpha = -1 if residue == 3 else residue
    return (n - alpha) // 4, alpha


@dataclass(frozen=True)
class ShuffleSpec:
    """Problem parameters: deck size n and sequence count c.

    After k riffle shuffles a deck decomposes into c = 2^k increasing
    sequences; c is also meaningful on its own for any c >= 1. Derived
    quantities: h = ceil(n/2) is the top-half length and (L, alpha) is the
    unique decomposition n = 4L + alpha with alpha in {-1, 0, 1, 2}.
    """

    n: int
    c: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"deck size must be >= 1, got {self.n}")
        if self.c < 1:
            raise ValueError(f"sequence count must be >= 1, got {self.c}")

    @classmethod
    def from_k(cls, n: int, k: int) -> "ShuffleSpec":
        if k < 0:
            raise ValueError(f"shuffle count must be >= 0, got {k}")
        return cls(n=n, c=2**k)

    @property
    def k(self) -> int | None:
        """Shuffle count when c is a power of two, else None."""
        if self.c & (self.c - 1) == 0:
            return self.c.bit_length() - 1
        return None

    @property
    def h(self) -> int:
        return (self.n + 1) // 2

    @property
    def l_alpha(self) -> tuple[int, int]:
        return decompose_l_alpha(self.n)


class RatPoly:
    """Dense polynomial in one variable with Fraction coefficients.

    Used for the fitted coefficient polynomials P(L), Q(L) and for the
    symbolic moment expressions. Minimal on purpose; this is not a CAS.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs] if coeffs else [Fraction(0)]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls([0])

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        out = list(self.coeffs) + [Fraction(0)] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, v in enumerate(other.coeffs):
            out[i] -= v
        return RatPoly(out)

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return RatPoly(out)

    def scale(self, factor) -> "RatPoly":
        f = Fraction(factor)
        return RatPoly([c * f for c in self.coeffs])

    def __pow__(self, e: int) -> "RatPoly":
        if e < 0:
            raise ValueError("negative polynomial powers are not defined")
        out = RatPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __neg__(self) -> "RatPoly":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_shift(self, delta: int) -> "RatPoly":
        """p(x + delta) by Horner evaluation over polynomials."""
        shift = RatPoly([delta, 1])
        acc = RatPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * shift + RatPoly.const(c)
        return acc

    def try_divide_linear(self, root) -> "RatPoly | None":
        """Exact quotient by (x - root) if root is a root, else None."""
        r = Fraction(root)
        d = self.degree
        if d == 0:
            return RatPoly.zero() if self.coeffs[0] == 0 else None
        b = [Fraction(0)] * d
        b[d - 1] = self.coeffs[d]
        for i in range(d - 2, -1, -1):
            b[i] = self.coeffs[i + 1] + r * b[i + 1]
        if self.coeffs[0] + r * b[0] != 0:
            return None
        return RatPoly(b)

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]!r})"

    def format(self, var: str = "L", compact: bool = False) -> str:
        """``4L^2 + 9L + 3`` (spaced) or ``4L^2+9L+3`` (compact)."""
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                v = var if i == 1 else f"{var}^{i}"
                if mag == 1:
                    body = v
                elif mag.denominator == 1:
                    body = f"{mag}{v}"
                else:
                    # fractions get a space so '9/2 L' cannot read as 9/(2L)
                    body = f"{mag} {v}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            elif compact:
                parts.append(f"+{body}" if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return ("" if compact else " ").join(parts)
