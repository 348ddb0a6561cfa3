"""Driving-point admittance of RLC networks and frequency-response sampling.

The node-admittance matrix is multiplied through by ``s`` so every entry is a
polynomial (R -> s/R, L -> 1/L, C -> C s^2).  With T- as ground and T+ as the
first node,

    Y(s) = det(A) / (s * det(A with the T+ row and column removed)),

and both determinants are computed by fraction-free (Bareiss) elimination
over polynomials.  Two independent cross-checks are provided: the
series-parallel recursion for trees, and the spanning-tree expansion of the
same determinants (which the fitting oracle also uses).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .admittance import CanonicalAdmittance, from_ratfunc
from .errors import PoleError, ShapeError, SingularNetworkError
from .netlist.model import TMINUS, TPLUS, Leaf, Netlist, Parallel, Series, SpTree, _as_tree
from .ratfunc import Poly, RatFunc
from .ratfunc import scalar as sc

# power of s carried by each element after scaling by s
STAMP_POWER = {"R": 1, "L": 0, "C": 2}
# sign of the element value's exponent in its stamp coefficient
STAMP_SIGN = {"R": -1, "L": -1, "C": 1}


@dataclass(frozen=True)
class AdmittanceResult:
    y: RatFunc
    canonical: Optional[CanonicalAdmittance]
    degree: int

    def to_json(self) -> dict:
        return {
            "admittance": self.y.to_string(),
            "canonical": self.canonical.to_json() if self.canonical else None,
            "degree": self.degree,
        }


def _stamp(kind: str, value) -> Poly:
    one = Fraction(1) if sc.is_exact(value) else sc.big(1)
    if kind == "R":
        return Poly([0, one / value])
    if kind == "L":
        return Poly([one / value])
    return Poly([0, 0, value])


def node_matrix(n: Netlist) -> list[list[Poly]]:
    """s-scaled node-admittance matrix over every node except T- (T+ first)."""
    nodes = [m for m in n.nodes if m != TMINUS]
    idx = {m: i for i, m in enumerate(nodes)}
    exact = n.is_exact()
    zero = Poly([])
    A = [[zero] * len(nodes) for _ in nodes]
    for b in n.branches:
        y = _stamp(b.kind, b.value)
        if not exact:
            y = y.to_big()
        i, j = idx.get(b.a), idx.get(b.b)
        if i is not None:
            A[i][i] = A[i][i] + y
        if j is not None:
            A[j][j] = A[j][j] + y
        if i is not None and j is not None:
            A[i][j] = A[i][j] - y
            A[j][i] = A[j][i] - y
    return A


def bareiss_det(M: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a polynomial matrix by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return Poly([1])
    A = [list(row) for row in M]
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not A[r][k].is_zero()), None)
            if swap is None:
                return Poly([])
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def admittance_ratfunc(n: Netlist) -> RatFunc:
    A = node_matrix(n)
    num = bareiss_det(A)
    den = bareiss_det([row[1:] for row in A[1:]]) * Poly([0, 1])
    if den.is_zero() or num.is_zero():
        raise SingularNetworkError(f"node equations of {n.name or 'network'} are singular")
    return RatFunc(num, den)


def driving_point_admittance(n: Netlist) -> AdmittanceResult:
    y = admittance_ratfunc(n)
    try:
        canonical = from_ratfunc(y)
    except ShapeError:
        canonical = None
    return AdmittanceResult(y, canonical, y.degree)


def extract_canonical(r: AdmittanceResult | RatFunc) -> CanonicalAdmittance:
    y = r.y if isinstance(r, AdmittanceResult) else r
    return from_ratfunc(y)


# --------------------------------------------------------------------------
# independent cross-checks


def sp_admittance(tree: SpTree) -> RatFunc:
    """Series-parallel recursion: admittances add in parallel, impedances in series."""
    tree = _as_tree(tree)
    if isinstance(tree, Leaf):
        e = tree.element
        v = e.value
        if e.kind == "R":
            return RatFunc(Poly([1]), Poly([v]))
        if e.kind == "L":
            return RatFunc(Poly([1]), Poly([0, v]))
        return RatFunc(Poly([0, v]))
    parts = [sp_admittance(c) for c in tree.children]
    if isinstance(tree, Parallel):
        total = parts[0]
        for p in parts[1:]:
            total = total + p
        return total
    z = parts[0].reciprocal()
    for p in parts[1:]:
        z = z + p.reciprocal()
    return z.reciprocal()


def _is_forest(edges, nodes) -> tuple[bool, dict]:
    parent = {m: m for m in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False, parent
        parent[ra] = rb
    return True, {m: find(m) for m in nodes}


def admittance_terms(n: Netlist) -> tuple[list, list]:
    """Monomial expansion of Y = N/D by the matrix-tree theorem.

    Returns ``(num_terms, den_terms)``; each term is ``(power, exponents)`` with
    ``exponents`` a tuple of +1/-1/0 per branch, so that the coefficient of
    s^power collects products of element values raised to those exponents.
    Numerator terms are spanning trees; denominator terms are spanning
    two-forests separating T+ from T-, shifted by one power of s.
    """
    nodes = n.nodes
    ends = [(b.a, b.b) for b in n.branches]
    num_terms, den_terms = [], []
    V = len(nodes)
    for size, bucket, shift in ((V - 1, num_terms, 0), (V - 2, den_terms, 1)):
        for subset in itertools.combinations(range(len(ends)), size):
            ok, root = _is_forest([ends[i] for i in subset], nodes)
            if not ok:
                continue
            if size == V - 2 and root[TPLUS] == root[TMINUS]:
                continue
            power = shift
            expo = [0] * len(ends)
            for i in subset:
                kind = n.branches[i].kind
                power += STAMP_POWER[kind]
                expo[i] = STAMP_SIGN[kind]
            bucket.append((power, tuple(expo)))
    return num_terms, den_terms


def matrix_tree_admittance(n: Netlist) -> RatFunc:
    num_terms, den_terms = admittance_terms(n)
    values = [b.value for b in n.branches]
    exact = n.is_exact()

    def collect(terms) -> Poly:
        top = max(p for p, _ in terms)
        cs = [Fraction(0) if exact else mpmath.mpf(0)] * (top + 1)
        for p, expo in terms:
            term = Fraction(1) if exact else mpmath.mpf(1)
            for v, e in zip(values, expo):
                if e == 1:
                    term *= v
                elif e == -1:
                    term /= v
            cs[p] += term
        return Poly(cs)

    return RatFunc(collect(num_terms), collect(den_terms))


# --------------------------------------------------------------------------
# frequency response


def default_grid(points: int = 601, lo: float = 1e-6, hi: float = 1e6,
                 extra: Sequence = ()) -> list:
    """Log-spaced frequencies plus neighborhoods of the given magnitudes."""
    lo_e, hi_e = mpmath.log10(lo), mpmath.log10(hi)
    grid = [mpmath.mpf(10) ** (lo_e + (hi_e - lo_e) * i / (points - 1)) for i in range(points)]
    for w in extra:
        w = sc.big(w)
        if w > 0:
            grid.extend(w * (1 + d) for d in (mpmath.mpf("-1e-3"), mpmath.mpf("-1e-6"),
                                               mpmath.mpf("1e-6"), mpmath.mpf("1e-3")))
    return sorted(grid)


def sample_response(target, grid: Sequence) -> list:
    """Triples (w, Re Y(jw), Im Y(jw)) at working precision.

    ``target`` is a Netlist, CanonicalAdmittance or RatFunc.  At a pole the
    triple is (w, None, None) and the pole is reported instead of a value.
    """
    if isinstance(target, Netlist):
        f = admittance_ratfunc(target)
    elif isinstance(target, CanonicalAdmittance):
        f = target.to_ratfunc()
    else:
        f = target
    out = []
    for w in grid:
        w = sc.big(sc.to_scalar(w))
        z = mpmath.mpc(0, w)
        d = f.den(z)
        scale = max(f.den.max_abs(), mpmath.mpf(1)) * max(mpmath.mpf(1), abs(w)) ** f.den.degree
        if abs(d) <= sc.tolerance() * scale:
            out.append((w, None, None))
            continue
        y = f.num(z) / d
        out.append((w, y.real, y.imag))
    return out


def jw_real_part_poly(f: RatFunc) -> Poly:
    """P(w) = Re[N(jw) conj(D(jw))], an even polynomial with sign(Re Y(jw)) = sign(P(w))."""
    def split(p: Poly):
        re = [0] * (len(p.coeffs) or 1)
        im = [0] * (len(p.coeffs) or 1)
        for i, c in enumerate(p.coeffs):
            sign = -1 if (i // 2) % 2 else 1
            if i % 2 == 0:
                re[i] = sign * c
            else:
                im[i] = sign * c
        return Poly(re), Poly(im)

    nr, ni = split(f.num)
    dr, di = split(f.den)
    return nr * dr + ni * di


# --------------------------------------------------------------------------
# numeric positive-real oracle


@dataclass(frozen=True)
class OracleVerdict:
    is_pr: bool
    reason: Optional[str]
    min_real: object


def _sign_at(P: Poly, w) -> int:
    v = P(w)
    return (v > 0) - (v < 0)


def pr_oracle(target, points: int = 601) -> OracleVerdict:
    """Positive-realness by sampling and pole inspection, independent of the closed form.

    Checks: no poles in Re s > 0; poles on the imaginary axis (and at infinity)
    are simple with positive real residues; Re Y(jw) >= 0 on a log grid,
    around every pole magnitude and in the limits w -> 0+, w -> inf.
    Exact inputs are evaluated exactly on the grid.
    """
    f = target.to_ratfunc() if isinstance(target, CanonicalAdmittance) else target
    num, den = f.num, f.den
    exact = f.is_exact()
    tol = mpmath.mpf(10) ** (-(sc.get_precision() // 2))

    # pole at infinity
    excess = num.degree - den.degree
    if excess > 1:
        return OracleVerdict(False, "multiple pole at infinity", None)
    if excess == 1 and num.lc / den.lc <= 0:
        return OracleVerdict(False, "nonpositive residue at infinity", None)

    # finite poles
    roots = []
    if den.degree > 0:
        roots = mpmath.polyroots([sc.big(c) for c in reversed(den.coeffs)],
                                 maxsteps=200, extraprec=200)
        roots = [mpmath.mpc(r) for r in roots]
    scale = max([abs(r) for r in roots] + [mpmath.mpf(1)])
    dprime = den.derivative()
    for r in roots:
        if r.real > tol * scale:
            return OracleVerdict(False, "pole in the right half-plane", None)
        if abs(r.real) <= tol * scale:
            if abs(dprime(r)) <= tol * max(dprime.max_abs(), 1) * scale ** den.degree:
                return OracleVerdict(False, "repeated pole on the imaginary axis", None)
            res = num(r) / dprime(r)
            mag = max(abs(res), tol)
            if abs(res.imag) > tol * 1e5 * mag or res.real <= 0:
                return OracleVerdict(False, "imaginary-axis pole with non-positive residue", None)

    # real part on the axis
    P = jw_real_part_poly(f)
    if P.is_zero():
        return OracleVerdict(True, None, 0)
    low = next(c for c in P.coeffs if c != 0)
    if low < 0:
        return OracleVerdict(False, "Re Y(jw) < 0 as w -> 0", None)
    if P.lc < 0:
        return OracleVerdict(False, "Re Y(jw) < 0 as w -> inf", None)
    grid = default_grid(points, extra=[abs(r) for r in roots if abs(r) > 0])
    if exact:
        ints = [int(c) for c in P.primitive().coeffs]
        for w in grid:
            q = Fraction(float(w))
            if _int_poly_sign(ints, q.numerator, q.denominator) < 0:
                return OracleVerdict(False, f"Re Y(jw) < 0 at w = {mpmath.nstr(w, 8)}", None)
        return OracleVerdict(True, None, None)
    worst = None
    for w in grid:
        v = P(w) / abs(den(mpmath.mpc(0, w))) ** 2 if den(mpmath.mpc(0, w)) != 0 else None
        if v is None:
            continue
        worst = v if worst is None else min(worst, v)
        if v < -tol * max(1, abs(f.num(mpmath.mpc(0, w)) / den(mpmath.mpc(0, w)))):
            return OracleVerdict(False, f"Re Y(jw) < 0 at w = {mpmath.nstr(w, 8)}", worst)
    return OracleVerdict(True, None, worst)


def _int_poly_sign(coeffs: list[int], p: int, q: int) -> int:
    """Sign of sum c_i (p/q)^i, computed in integers."""
    n = len(coeffs) - 1
    acc = 0
    pp, qq = 1, q ** n
    for c in coeffs:
        acc += c * pp * qq
        pp *= p
        qq //= q
    return (acc > 0) - (acc < 0)
