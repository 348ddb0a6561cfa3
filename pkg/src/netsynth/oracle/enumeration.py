"""Enumeration of small two-terminal RLC skeletons.

A skeleton is a topology with element kinds assigned and values left free.
Every two-terminal graph with at most four edges is series-parallel, so the
enumeration runs over series-parallel trees, deduplicated by a canonical
string (children of a node are unordered; a series node never has a series
child, likewise for parallel).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from ..analysis import admittance_ratfunc
from ..ratfunc import Poly, gcd
from ..netlist.model import (
    KINDS,
    Element,
    Leaf,
    Netlist,
    Parallel,
    Series,
    compose,
    inductor_path_and_cutset,
    tree_key,
)


@dataclass(frozen=True)
class Skeleton:
    key: str
    tree: object
    netlist: Netlist
    path_cutset: bool
    jw_pole: bool
    class_shape: bool

    @property
    def size(self) -> int:
        return self.netlist.element_count

    @property
    def name(self) -> str:
        return self.netlist.name or self.key

    def flags(self) -> dict:
        return {"path_cutset": self.path_cutset, "jw_pole": self.jw_pole,
                "class_shape": self.class_shape}


def _partitions(n: int, parts_min: int = 2):
    """Multisets of positive integers summing to n with at least two parts (non-increasing)."""
    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in rec(rem - first, first):
                yield (first,) + rest

    for p in rec(n, n):
        if len(p) >= parts_min:
            yield p


@lru_cache(maxsize=None)
def _trees(n: int, top: Optional[str]) -> tuple:
    """All trees with n leaves whose root is not of type ``top`` ("S"/"P"), deduplicated."""
    out = {}
    if n == 1:
        for kind in KINDS:
            leaf = Leaf(Element(kind, 1))
            out[tree_key(leaf)] = leaf
        return tuple(out.values())
    for op in ("S", "P"):
        if op == top:
            continue
        cls = Series if op == "S" else Parallel
        for parts in _partitions(n):
            pools = [_trees(p, op) for p in parts]
            for combo in itertools.product(*pools):
                t = cls(*combo)
                out.setdefault(tree_key(t), t)
    return tuple(sorted(out.values(), key=tree_key))


def _has_jw_pole(y) -> bool:
    """Pole of the admittance on the imaginary axis away from s = 0, or at infinity.

    After removing factors of s, den(jw) = 0 needs the even and odd parts of the
    denominator to share a root; passive denominators have no roots in the open
    right half-plane, so any shared root (they come in +-pairs) is on the axis.
    """
    num, den = y.num, y.den
    if num.degree > den.degree:
        return True
    d = den
    while d[0] == 0 and d.degree > 0:
        d = Poly(d.coeffs[1:])
    if d.degree <= 0:
        return False
    e = Poly([d[i] if i % 2 == 0 else 0 for i in range(d.degree + 1)])
    o = Poly([d[i] if i % 2 == 1 else 0 for i in range(d.degree + 1)])
    if o.is_zero():
        return True
    return gcd(e, o).degree > 0


def _fits_class_shape(y) -> bool:
    num, den = y.num, y.den
    return den.degree >= 1 and den[0] == 0 and num[0] != 0 and num.degree <= 2 and den.degree <= 3


def _generic_values(n: int, seed: int = 12345) -> list:
    rng = random.Random(seed)
    return [Fraction(rng.randint(2, 97), rng.randint(2, 97)) for _ in range(n)]


def make_skeleton(tree, name: Optional[str] = None) -> Skeleton:
    net = compose(tree, name)
    generic = net.with_values(_generic_values(len(net)))
    y = admittance_ratfunc(generic)
    return Skeleton(
        key=tree_key(tree),
        tree=tree,
        netlist=net,
        path_cutset=inductor_path_and_cutset(net),
        jw_pole=_has_jw_pole(y),
        class_shape=_fits_class_shape(y),
    )


def skeleton_from_netlist(n: Netlist, key: Optional[str] = None) -> Skeleton:
    """Wrap a non-series-parallel netlist (e.g. a bridge) as a skeleton."""
    generic = n.with_values(_generic_values(len(n)))
    y = admittance_ratfunc(generic)
    return Skeleton(key or (n.name or "netlist"), None, n, inductor_path_and_cutset(n),
                    _has_jw_pole(y), _fits_class_shape(y))


def enumerate_networks(max_elements: int, min_elements: int = 1) -> list[Skeleton]:
    """All series-parallel skeletons with ``min_elements..max_elements`` edges.

    Skeletons are flagged, never removed: ``path_cutset`` is the
    inductor path/cut-set predicate and ``jw_pole`` marks an imaginary-axis
    pole other than s = 0.
    """
    if not 1 <= max_elements <= 4:
        raise ValueError("max_elements must be in 1..4")
    out = []
    for n in range(max(1, min_elements), max_elements + 1):
        out.extend(make_skeleton(t) for t in _trees(n, None))
    return out
