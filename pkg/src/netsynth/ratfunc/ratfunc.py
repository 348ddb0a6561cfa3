"""Reduced rational functions num(s)/den(s)."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..errors import PoleError
from . import scalar as sc
from .poly import ONE, Poly, S, gcd


def normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cancel the gcd and make the denominator monic.

    The stored form is canonical: two exact rational functions are equal iff
    their normalized (num, den) pairs are identical.
    """
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return Poly(), ONE
    g = gcd(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    lead = den.lc
    num = num * (1 / lead if sc.is_big(lead) else Fraction(1) / lead)
    den = den.monic()
    if not (num.is_exact() and den.is_exact()):
        num, den = _chop(num, den)
    return num, den


def _chop(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    # roundoff left behind by approximate cancellation; mixed exact and
    # BigReal coefficients are promoted so the comparison is well defined
    num = Poly([sc.big(c) for c in num.coeffs])
    den = Poly([sc.big(c) for c in den.coeffs])
    tol = sc.tolerance() * max(num.max_abs(), den.max_abs())
    clean = lambda p: Poly([0 if abs(c) <= tol else c for c in p.coeffs])
    num, den = clean(num), clean(den)
    if den.is_zero():
        raise ZeroDivisionError("denominator vanished below working tolerance")
    return num, den


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        self.num, self.den = normalize(num, den)

    @classmethod
    def s(cls) -> "RatFunc":
        return cls(S)

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        from .parser import parse_ratfunc

        return parse_ratfunc(text)

    # properties ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """McMillan degree: the larger of the reduced numerator/denominator degrees."""
        return max(self.num.degree, self.den.degree, 0)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_exact(self) -> bool:
        return self.num.is_exact() and self.den.is_exact()

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc(other if isinstance(other, Poly) else Poly([other]))

    def __add__(self, other) -> "RatFunc":
        other = self._lift(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._lift(other) * self.reciprocal()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.reciprocal() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    # substitutions ------------------------------------------------------

    def at_neg_s(self) -> "RatFunc":
        """f(-s)."""
        return RatFunc(self.num.at_neg_s(), self.den.at_neg_s())

    def at_inv_s(self) -> "RatFunc":
        """f(1/s)."""
        n = max(self.num.degree, self.den.degree, 0)
        return RatFunc(self.num.reversed(n), self.den.reversed(n))

    def even_part(self) -> "RatFunc":
        """(f(s) + f(-s)) / 2."""
        return (self + self.at_neg_s()) * Fraction(1, 2)

    def odd_part(self) -> "RatFunc":
        return (self - self.at_neg_s()) * Fraction(1, 2)

    def __call__(self, z):
        return evaluate(self, z)

    # comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def approx_equal(self, other: "RatFunc", rel=None) -> bool:
        """Equality by cross-multiplication, to ``rel`` of the largest coefficient."""
        return (self.num * other.den).approx_equal(other.num * self.den, rel)

    # text ---------------------------------------------------------------

    def to_string(self) -> str:
        return f"({self.num.to_string()})/({self.den.to_string()})"

    __str__ = to_string

    def __repr__(self) -> str:
        return f"RatFunc({self.to_string()!r})"


def evaluate(f: RatFunc, z):
    """Value of ``f`` at ``z``.

    Exact points on an exact function give an exact Fraction; anything else is
    evaluated in mpmath at working precision.  Raises :class:`PoleError` when
    the denominator vanishes (or underflows the working tolerance).
    """
    if sc.is_exact(z) and f.is_exact():
        d = f.den(sc.exact(z))
        if d == 0:
            raise PoleError(f"pole of {f} at s = {z}")
        return f.num(sc.exact(z)) / d
    if isinstance(z, complex):
        zz = mpmath.mpc(z)
    elif sc.is_exact(z):
        zz = sc.big(sc.exact(z))
    else:
        zz = z
    d = f.den(zz)
    scale = f.den.max_abs() * max(mpmath.mpf(1), abs(mpmath.mpc(zz))) ** max(f.den.degree, 0)
    if abs(d) <= sc.tolerance() * scale:
        raise PoleError(f"pole of {f} at s = {z}")
    return f.num(zz) / d
