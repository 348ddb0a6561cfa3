"""Exact polynomial and rational-function arithmetic in the indeterminate s."""

from .parser import parse_ratfunc
from .poly import ONE, S, ZERO, Poly, gcd
from .ratfunc import RatFunc, evaluate, normalize
from .scalar import (
    DEFAULT_PRECISION,
    MIN_PRECISION,
    big,
    exact,
    format_scalar,
    get_precision,
    is_big,
    is_exact,
    parse_scalar,
    set_precision,
    sqrt,
)


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def even_part(f: RatFunc) -> RatFunc:
    return f.even_part()


def ratfunc_eval(f: RatFunc, z):
    return evaluate(f, z)


__all__ = [
    "DEFAULT_PRECISION",
    "MIN_PRECISION",
    "ONE",
    "Poly",
    "RatFunc",
    "S",
    "ZERO",
    "big",
    "evaluate",
    "even_part",
    "exact",
    "format_scalar",
    "gcd",
    "get_precision",
    "is_big",
    "is_exact",
    "normalize",
    "parse_ratfunc",
    "parse_scalar",
    "ratfunc_eval",
    "ratfunc_normalize",
    "set_precision",
    "sqrt",
]
