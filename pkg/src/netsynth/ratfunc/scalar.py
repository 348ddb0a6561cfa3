"""Coefficient scalars.

Two kinds are used throughout: exact rationals (:class:`fractions.Fraction`)
and high-precision reals (:class:`mpmath.mpf`, "BigReal").  Exact values are
the default; BigReal only appears once an irrational element value (a square
root) enters a computation.  Mixing the two promotes to BigReal.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

import mpmath

DEFAULT_PRECISION = 50
MIN_PRECISION = 30

Scalar = Union[Fraction, mpmath.mpf]

_RATIO_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def set_precision(digits: int) -> None:
    """Set the working precision (significant decimal digits) for BigReal."""
    digits = int(digits)
    if digits < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} digits, got {digits}")
    mpmath.mp.dps = digits


def get_precision() -> int:
    return mpmath.mp.dps


set_precision(DEFAULT_PRECISION)


def is_big(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def exact(x) -> Fraction:
    """Convert ints, Fractions and numeric strings ("3", "-1/2", "0.1") exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def big(x) -> mpmath.mpf:
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (int, float, str)):
        return mpmath.mpf(x)
    raise TypeError(f"cannot convert {x!r} to BigReal")


def to_scalar(x) -> Scalar:
    if is_big(x):
        return x
    if isinstance(x, float):
        return big(x)
    return exact(x)


def coerce(values: Iterable) -> list:
    """Bring a sequence to one scalar kind: all exact, or all BigReal if any is."""
    vals = [to_scalar(v) for v in values]
    if any(is_big(v) for v in vals):
        return [big(v) for v in vals]
    return vals


def sqrt(x) -> Scalar:
    """Square root, exact when ``x`` is the square of a rational."""
    if is_exact(x):
        x = exact(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        p, q = _isqrt_exact(x.numerator), _isqrt_exact(x.denominator)
        if p is not None and q is not None:
            return Fraction(p, q)
    return mpmath.sqrt(big(x))


def _isqrt_exact(n: int):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def tolerance() -> mpmath.mpf:
    """Default zero-tolerance for BigReal comparisons: 10^-(precision/2)."""
    return mpmath.mpf(10) ** (-(get_precision() // 2))


def is_zero(x, tol=None) -> bool:
    if is_exact(x):
        return x == 0
    if tol is None:
        tol = tolerance()
    return abs(x) <= tol


def magnitude(x) -> mpmath.mpf:
    return abs(big(x)) if not is_exact(x) else big(abs(x))


def format_scalar(x, digits: int | None = None) -> str:
    """Exact values as "p" or "p/q"; BigReal as a decimal with ``digits`` significant digits."""
    if is_exact(x):
        x = exact(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if digits is None:
        digits = get_precision()
    return mpmath.nstr(x, digits, strip_zeros=True, min_fixed=-6, max_fixed=digits)


def parse_scalar(text: str, decimal_exact: bool = True) -> Scalar:
    """Parse "p", "p/q" or a decimal literal.

    Decimals are converted exactly (0.1 -> 1/10) unless ``decimal_exact`` is
    false, in which case they become BigReal values.
    """
    text = text.strip()
    if _RATIO_RE.match(text):
        return Fraction(text)
    try:
        if decimal_exact:
            return Fraction(text)
        float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid number {text!r}") from exc
    return mpmath.mpf(text)
