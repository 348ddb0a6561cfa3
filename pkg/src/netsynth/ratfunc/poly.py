"""Dense univariate polynomials in s.

Coefficients are stored low order first: ``coeffs[i]`` multiplies ``s**i``.
The zero polynomial has no coefficients and degree -1.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm
from typing import Iterable, Sequence

import mpmath

from . import scalar as sc


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = sc.coerce(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, c, n: int) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return not any(sc.is_big(c) for c in self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        a, b = _same_kind(self.coeffs, other.coeffs)
        out = [a[0] * 0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divrem(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Return ``(quot, rem)`` with ``self = quot*other + rem`` and ``deg rem < deg other``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num, den = _same_kind(list(self.coeffs), other.coeffs)
        num = list(num)
        dq = len(den) - 1
        if len(num) - 1 < dq:
            return Poly(), Poly(num)
        lead = den[-1]
        quot = [num[0] * 0] * (len(num) - dq)
        for i in range(len(num) - 1, dq - 1, -1):
            c = num[i] / lead
            quot[i - dq] = c
            if c == 0:
                continue
            for j in range(dq + 1):
                num[i - dq + j] -= c * den[j]
            num[i] = num[i] * 0
        return Poly(quot), Poly(num[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Division known to leave no remainder.

        On the exact path a nonzero remainder raises; on the BigReal path the
        (roundoff-sized) remainder is discarded.
        """
        q, r = self.divrem(other)
        if r and self.is_exact() and other.is_exact():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def scale(self, c) -> "Poly":
        return self * c

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc if sc.is_big(self.lc) else Fraction(1) / self.lc)

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        cs = [sc.exact(c) for c in self.coeffs]
        if not cs:
            return Fraction(0)
        den = ilcm(*[c.denominator for c in cs])
        num = 0
        for c in cs:
            num = igcd(num, c.numerator * (den // c.denominator))
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        if self.is_zero():
            return self
        p = self * (1 / self.content())
        return -p if p.lc < 0 else p

    # substitutions ------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation; exact when both the point and coefficients are."""
        if sc.is_exact(x) and self.is_exact():
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, Fraction):
            x = sc.big(x)
        elif isinstance(x, complex):
            x = mpmath.mpc(x)
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (sc.big(c) if sc.is_exact(c) else c)
        return acc

    def at_neg_s(self) -> "Poly":
        """p(-s)."""
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def reversed(self, n: int | None = None) -> "Poly":
        """s^n p(1/s), with n defaulting to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal order below degree")
        cs = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return Poly(cs[::-1])

    def to_big(self) -> "Poly":
        return Poly([sc.big(c) for c in self.coeffs])

    def max_abs(self):
        return max((sc.magnitude(c) for c in self.coeffs), default=mpmath.mpf(0))

    # comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def approx_equal(self, other: "Poly", rel=None) -> bool:
        """Coefficientwise equality to ``rel`` times the largest coefficient magnitude."""
        if rel is None:
            rel = mpmath.mpf("1e-30")
        scale = max(self.max_abs(), other.max_abs())
        if scale == 0:
            return True
        n = max(len(self), len(other))
        return all(abs(sc.big(self[i]) - sc.big(other[i])) <= rel * scale for i in range(n))

    # text ---------------------------------------------------------------

    def to_string(self, var: str = "s") -> str:
        """Descending powers, e.g. ``2*s^2 - 1/3*s + 1``."""
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if i == 0:
                body = sc.format_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{sc.format_scalar(mag)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Poly({self.to_string()!r})"


S = Poly([0, 1])
ONE = Poly([1])
ZERO = Poly()


def _same_kind(a: Sequence, b: Sequence) -> tuple[Sequence, Sequence]:
    if any(sc.is_big(x) for x in a) or any(sc.is_big(x) for x in b):
        return [sc.big(x) for x in a], [sc.big(x) for x in b]
    return a, b


def gcd(p: Poly, q: Poly, tol=None) -> Poly:
    """Monic greatest common divisor.

    Exact inputs use primitive Euclidean steps (every remainder is replaced by
    its primitive part, which keeps the integers small).  BigReal inputs use
    Euclid with remainders below ``tol`` relative to the dividend treated as
    zero; the result is approximate by nature.
    """
    if p.is_exact() and q.is_exact():
        a, b = p.primitive(), q.primitive()
        while not b.is_zero():
            a, b = b, (a % b).primitive()
        return a.monic() if not a.is_zero() else Poly()
    return _approx_gcd(p.to_big(), q.to_big(), tol)


def _approx_gcd(a: Poly, b: Poly, tol=None) -> Poly:
    if tol is None:
        tol = sc.tolerance()
    a, b = a.monic(), b.monic()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a % b
        scale = max(a.max_abs(), b.max_abs())
        if r.is_zero() or r.max_abs() <= tol * scale:
            return b.monic()
        # drop leading coefficients that are roundoff-sized
        cs = list(r.coeffs)
        while cs and abs(cs[-1]) <= tol * scale:
            cs.pop()
        a, b = b, Poly(cs).monic()
    return a.monic()
