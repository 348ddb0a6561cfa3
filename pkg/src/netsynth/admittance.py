"""The admittance class Y(s) = k (a0 s^2 + a1 s + 1) / (s (d0 s^2 + d1 s + 1)).

Construction from a rational function, the positive-real decision, the
classifier quantity R_k, the frequency-inverse dual map on coefficients and
detection of the pure-inductor (lossless) member.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegenerateDual, ShapeError
from .ratfunc import Poly, RatFunc, format_scalar, parse_scalar
from .ratfunc import scalar as sc

FIELDS = ("a0", "a1", "d0", "d1", "k")

# failed-condition tags
A0_MINUS_D0 = "a0-d0<0"
A1_MINUS_D1 = "a1-d1<0"
CROSS = "a0d1-a1d0<0"


@dataclass(frozen=True)
class CanonicalAdmittance:
    """Coefficients (a0, a1, d0, d1, k); a0..d1 >= 0 and k > 0."""

    a0: sc.Scalar
    a1: sc.Scalar
    d0: sc.Scalar
    d1: sc.Scalar
    k: sc.Scalar

    def __post_init__(self):
        vals = sc.coerce([self.a0, self.a1, self.d0, self.d1, self.k])
        for name, v in zip(FIELDS, vals):
            object.__setattr__(self, name, v)
        if any(v < 0 for v in vals[:4]):
            raise ShapeError(f"coefficients must be nonnegative, got {self.as_tuple()}")
        if vals[4] <= 0:
            raise ShapeError(f"k must be positive, got {self.k}")

    @classmethod
    def parse(cls, text: str) -> "CanonicalAdmittance":
        """From ``"a0,a1,d0,d1,k"``; decimals are read exactly."""
        parts = [p for p in text.replace(" ", "").split(",")]
        if len(parts) != 5:
            raise ValueError(f"expected 5 comma-separated coefficients, got {len(parts)}")
        return cls(*(parse_scalar(p) for p in parts))

    @classmethod
    def from_json(cls, data) -> "CanonicalAdmittance":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(*(parse_scalar(str(data[f])) for f in FIELDS))

    def to_json(self) -> dict:
        return {f: format_scalar(getattr(self, f)) for f in FIELDS}

    def as_tuple(self) -> tuple:
        return (self.a0, self.a1, self.d0, self.d1, self.k)

    def is_exact(self) -> bool:
        return all(sc.is_exact(v) for v in self.as_tuple())

    def all_positive(self) -> bool:
        return all(v > 0 for v in self.as_tuple())

    def numerator(self) -> Poly:
        return Poly([1, self.a1, self.a0]) * self.k

    def denominator(self) -> Poly:
        return Poly([0, 1, self.d1, self.d0])

    def to_ratfunc(self) -> RatFunc:
        return RatFunc(self.numerator(), self.denominator())

    def scaled(self, lam) -> "CanonicalAdmittance":
        return CanonicalAdmittance(self.a0, self.a1, self.d0, self.d1, self.k * lam)

    def __str__(self) -> str:
        return "(" + ", ".join(format_scalar(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class PrVerdict:
    is_pr: bool
    failed_condition: Optional[str]
    case_tag: str
    conditions: dict

    def __bool__(self) -> bool:
        return self.is_pr


def from_ratfunc(f: RatFunc) -> CanonicalAdmittance:
    """Match a reduced rational function against the class shape."""
    num, den = f.num, f.den
    if num.is_zero():
        raise ShapeError("zero function")
    if den.degree < 1 or den[0] != 0:
        raise ShapeError(f"denominator of {f} has no factor s")
    if num.degree > 2 or den.degree > 3:
        raise ShapeError(f"degrees of {f} exceed (2, 3)")
    c = (lambda p, i: p[i]) if f.is_exact() else (lambda p, i: sc.big(p[i]))
    n0, d1_ = c(num, 0), c(den, 1)
    if n0 == 0 or d1_ == 0:
        raise ShapeError(f"{f}: vanishing constant term")
    k = n0 / d1_
    return CanonicalAdmittance(c(num, 2) / n0, c(num, 1) / n0, c(den, 3) / d1_, c(den, 2) / d1_, k)


def r_k(y: CanonicalAdmittance):
    """(a0 - d0)^2 - (a0 d1 - a1 d0)(a1 - d1)."""
    a0, a1, d0, d1 = y.a0, y.a1, y.d0, y.d1
    return (a0 - d0) ** 2 - (a0 * d1 - a1 * d0) * (a1 - d1)


def pr_conditions(y: CanonicalAdmittance) -> dict:
    return {
        "a0-d0": y.a0 - y.d0,
        "a1-d1": y.a1 - y.d1,
        "a0d1-a1d0": y.a0 * y.d1 - y.a1 * y.d0,
    }


def is_positive_real(y: CanonicalAdmittance) -> PrVerdict:
    """Decide positive-realness.

    With d0 = 0 the admittance is PR iff a1 >= d1.  Otherwise it is PR iff
    a0 - d0 >= 0, a0 d1 - a1 d0 >= 0 and a1 - d1 >= 0.  Equalities count as PR;
    for BigReal tuples they hold to the working zero tolerance.
    """
    cond = pr_conditions(y)
    neg = lambda x: x < 0 and not sc.is_zero(x)
    if sc.is_zero(y.d0):
        tag = "d0=0"
        failed = A1_MINUS_D1 if neg(cond["a1-d1"]) else None
    else:
        tag = "a1=d1=0" if sc.is_zero(y.a1) and sc.is_zero(y.d1) else "general"
        failed = None
        for name, label in (("a0-d0", A0_MINUS_D0), ("a0d1-a1d0", CROSS), ("a1-d1", A1_MINUS_D1)):
            if neg(cond[name]):
                failed = label
                break
    return PrVerdict(failed is None, failed, tag, cond)


def fid_coefficients(y: CanonicalAdmittance) -> CanonicalAdmittance:
    """Coefficients of Y^{-1}(1/s), the frequency-inverse dual."""
    if y.a0 == 0 or y.d0 == 0:
        raise DegenerateDual(f"frequency-inverse dual needs a0, d0 > 0; got {y}")
    one = sc.big(1) if not y.is_exact() else Fraction(1)
    return CanonicalAdmittance(
        one / y.d0, y.d1 / y.d0, one / y.a0, y.a1 / y.a0, y.d0 / (y.k * y.a0)
    )


def impedance_even_part(y: CanonicalAdmittance) -> RatFunc:
    return y.to_ratfunc().reciprocal().even_part()


def is_pure_inductor(y: CanonicalAdmittance):
    """Inductance 1/k when Y reduces to k/s, else None."""
    if y.a1 != y.d1 or y.a0 * y.d1 - y.a1 * y.d0 != 0:
        return None
    f = y.to_ratfunc()
    if f != RatFunc(Poly([y.k]), Poly([0, 1])):
        return None
    return 1 / y.k if not sc.is_exact(y.k) else Fraction(1) / y.k
