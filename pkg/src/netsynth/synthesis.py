"""Classification and closed-form realization of the admittance family.

Every constructor returns a :class:`Realization` only after the network's
admittance has been recomputed by nodal analysis and matched against the
target; a mismatch raises :class:`VerificationError` and nothing is emitted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .admittance import (
    CanonicalAdmittance,
    PrVerdict,
    fid_coefficients,
    from_ratfunc,
    is_positive_real,
    is_pure_inductor,
    r_k,
)
from .analysis import admittance_ratfunc
from .errors import (
    ConditionError,
    DiscriminantViolation,
    NotPositiveReal,
    OrderingViolation,
    VerificationError,
)
from .netlist import topologies as topo
from .netlist.dual import fid_netlist
from .netlist.model import Element, Leaf, Netlist, compose, parallel, series
from .ratfunc import RatFunc
from .ratfunc import scalar as sc


class Case(str, enum.Enum):
    NOT_PR = "NotPR"
    PURE_INDUCTOR = "PureInductor"
    DEGENERATE = "DegenerateZeroCoeff"
    REDUCIBLE = "ReducibleRkZero"
    FIG7A = "Fig7aThm3"
    FIG7B = "Fig7bDual"
    RL5 = "Rl5Thm5"
    BRIDGE = "BridgeLemma13"
    CANONICAL = "CanonicalRequired"

    def __str__(self) -> str:
        return self.value


# worst-case element count per case (None: no network emitted)
MAX_ELEMENTS = {
    Case.PURE_INDUCTOR: 1,
    Case.DEGENERATE: 4,
    Case.REDUCIBLE: 3,
    Case.FIG7A: 4,
    Case.FIG7B: 4,
    Case.RL5: 5,
    Case.BRIDGE: 5,
}


@dataclass(frozen=True)
class Classification:
    y: CanonicalAdmittance
    pr: PrVerdict
    rk: object
    case: Case
    witness: dict

    def to_json(self) -> dict:
        return {
            "input": self.y.to_json(),
            "pr": self.pr.is_pr,
            "failed_condition": self.pr.failed_condition,
            "r_k": sc.format_scalar(self.rk),
            "case": self.case.value,
            "conditions": {k: sc.format_scalar(v) for k, v in self.witness.items()},
            "four_element": four_element_condition(self.y) if self.pr.is_pr else None,
        }


@dataclass(frozen=True)
class Realization:
    netlist: Netlist
    case: Case
    element_formulas: dict
    verified: bool
    element_count: int
    details: dict = field(default_factory=dict)

    def values(self) -> dict:
        return self.netlist.values()


# --------------------------------------------------------------------------
# helpers


def _zero(x) -> bool:
    return sc.is_zero(x)


def _pos(x) -> bool:
    return x > 0 and not _zero(x)


def _one(y: CanonicalAdmittance):
    return Fraction(1) if y.is_exact() else sc.big(1)


def four_element_condition(y: CanonicalAdmittance) -> bool:
    """R_k = 0, or a0 > d0 together with a1 = d1 or a0 d1 = a1 d0."""
    cross = y.a0 * y.d1 - y.a1 * y.d0
    return _zero(r_k(y)) or (_pos(y.a0 - y.d0) and (_zero(y.a1 - y.d1) or _zero(cross)))


def _leaf(kind: str, value, formula: str, ref: Optional[str] = None) -> Leaf:
    return Leaf(Element(kind, value, formula), ref)


def _formulas(n: Netlist) -> dict:
    return {b.ref: b.element.provenance for b in n.branches if b.element.provenance}


def verify(n: Netlist, y: CanonicalAdmittance, rel=None) -> bool:
    """Admittance of ``n`` equals ``y`` as a reduced rational function."""
    got = admittance_ratfunc(n)
    want = y.to_ratfunc()
    if got.is_exact() and want.is_exact():
        return got == want
    return got.approx_equal(want, rel)


def _finish(n: Netlist, y: CanonicalAdmittance, case: Case, **details) -> Realization:
    if not verify(n, y):
        raise VerificationError(f"{case.value} network does not reproduce {y}")
    return Realization(n, case, _formulas(n), True, n.element_count, details)


# --------------------------------------------------------------------------
# classification


def classify(y: CanonicalAdmittance) -> Classification:
    """Assign exactly one realization case, cheapest first."""
    pr = is_positive_real(y)
    rk = r_k(y)
    a0, a1, d0, d1 = y.a0, y.a1, y.d0, y.d1
    cross = a0 * d1 - a1 * d0
    witness = {
        "a0-d0": a0 - d0,
        "a1-d1": a1 - d1,
        "a0d1-a1d0": cross,
        "bridge": cross * (a1 - d1) - d0 ** 2,
    }
    if not pr.is_pr:
        case = Case.NOT_PR
    elif is_pure_inductor(y) is not None:
        case = Case.PURE_INDUCTOR
    elif any(_zero(v) for v in (a0, a1, d0, d1)):
        case = Case.DEGENERATE
    elif _zero(rk):
        case = Case.REDUCIBLE
    elif _zero(a1 - d1) and _pos(a0 - d0):
        case = Case.FIG7A
    elif _zero(cross) and _pos(a0 - d0):
        case = Case.FIG7B
    elif rk < 0:
        case = Case.RL5
    elif _zero(witness["bridge"]):
        case = Case.BRIDGE
    else:
        case = Case.CANONICAL
    return Classification(y, pr, rk, case, witness)


# --------------------------------------------------------------------------
# one- to three-element networks


def realize_pure_inductor(y: CanonicalAdmittance) -> Realization:
    l1 = is_pure_inductor(y)
    if l1 is None:
        raise ConditionError(f"{y} is not k/s")
    return _finish(topo.single_inductor(l1, "1/k"), y, Case.PURE_INDUCTOR)


def realize_reduced(y: CanonicalAdmittance) -> Realization:
    """Cancel the common factor and realize k(As+1)/(s(Cs+1)) with at most three elements."""
    f = y.to_ratfunc()
    try:
        red = from_ratfunc(f)
    except Exception as exc:
        raise ConditionError(f"{y} does not reduce to the low-degree form") from exc
    if not (_zero(red.a0) and _zero(red.d0)):
        raise ConditionError(f"{y} has no common factor to cancel (R_k = {sc.format_scalar(r_k(y))})")
    k, A, Cc = red.k, red.a1, red.d1
    one = _one(red)
    if _zero(A - Cc):
        n = topo.single_inductor(one / k, "1/k")
    elif A < Cc:
        raise NotPositiveReal(f"reduced admittance of {y} is not positive-real")
    elif _zero(Cc):
        n = compose(parallel(_leaf("L", one / k, "1/k"), _leaf("R", one / (k * A), "1/(k A)")), "Fig5b")
    else:
        n = topo.fig5b(one / k, one / (k * (A - Cc)), Cc / (k * (A - Cc)),
                       prov={"L1": "1/k", "R1": "1/(k(A-C))", "L2": "C/(k(A-C))"})
    return _finish(n, y, Case.REDUCIBLE, reduced=red.to_json())


def realize_degenerate(y: CanonicalAdmittance) -> Realization:
    """Networks for a zero coefficient: d0 = 0, or a1 = d1 = 0."""
    if not is_positive_real(y):
        raise NotPositiveReal(f"{y} is not positive-real")
    a0, a1, d0, d1, k = y.as_tuple()
    one = _one(y)
    if is_pure_inductor(y) is not None:
        return realize_pure_inductor(y)
    L0 = _leaf("L", one / k, "1/k")
    if _zero(d0):
        rk = r_k(y)
        if _zero(a0) or _zero(rk):
            red = realize_reduced(y)
            return Realization(red.netlist, Case.DEGENERATE, red.element_formulas, True,
                               red.element_count, red.details)
        if rk > 0:
            rc = None
            if not _zero(a1 - d1):
                rc = _leaf("R", rk / (k * a0 ** 2 * (a1 - d1)), "R_k/(k a0^2 (a1-d1))")
            shunt = parallel(_leaf("C", k * a0 ** 3 / rk, "k a0^3/R_k"), rc)
            rs = None if _zero(d1) else _leaf("R", d1 / (k * a0), "d1/(k a0)")
            tree = parallel(L0, series(rs, shunt))
        else:
            tree = parallel(
                L0,
                _leaf("R", d1 / (k * a0), "d1/(k a0)"),
                series(_leaf("R", -a0 * d1 / (k * rk), "-a0 d1/(k R_k)"),
                       _leaf("L", -a0 * d1 ** 2 / (k * rk), "-a0 d1^2/(k R_k)")),
            )
        return _finish(compose(tree, "Degenerate"), y, Case.DEGENERATE, r_k=sc.format_scalar(rk))
    if _zero(a1) and _zero(d1):
        tree = parallel(
            L0,
            series(_leaf("L", d0 / (k * (a0 - d0)), "d0/(k(a0-d0))"),
                   _leaf("C", k * (a0 - d0), "k(a0-d0)")),
        )
        return _finish(compose(tree, "Degenerate"), y, Case.DEGENERATE)
    raise ConditionError(f"{y} has no zero coefficient pattern handled here")


# --------------------------------------------------------------------------
# four elements


def fig7a_values(y: CanonicalAdmittance) -> dict:
    a0, a1, d0, d1, k = y.as_tuple()
    return {
        "R1": a1 * (a0 - d0) / (k * a0 ** 2),
        "L1": d0 / (k * a0),
        "L2": (a0 - d0) / (k * a0),
        "C1": k * a0 ** 2 / (a0 - d0),
    }


FIG7A_FORMULAS = {
    "R1": "a1(a0-d0)/(k a0^2)",
    "L1": "d0/(k a0)",
    "L2": "(a0-d0)/(k a0)",
    "C1": "k a0^2/(a0-d0)",
}


def _fig7a(y: CanonicalAdmittance) -> Netlist:
    v = fig7a_values(y)
    return topo.fig7a(v["R1"], v["L1"], v["L2"], v["C1"], prov=FIG7A_FORMULAS)


def realize_fig7(y: CanonicalAdmittance) -> Realization:
    """Four-element network when a0 > d0 and either a1 = d1 or a0 d1 = a1 d0."""
    if not y.all_positive():
        raise ConditionError("four-element construction needs all coefficients positive")
    if _zero(r_k(y)):
        raise ConditionError("R_k = 0: use the reduced construction")
    if not _pos(y.a0 - y.d0):
        raise ConditionError(f"a0 - d0 must be positive, got {sc.format_scalar(y.a0 - y.d0)}")
    if _zero(y.a1 - y.d1):
        return _finish(_fig7a(y), y, Case.FIG7A)
    if _zero(y.a0 * y.d1 - y.a1 * y.d0):
        inner = fid_coefficients(y)
        n = fid_netlist(_fig7a(inner))
        n = Netlist(n.branches, "Fig7b")
        return _finish(n, y, Case.FIG7B, dual_of=inner.to_json())
    raise ConditionError("neither a1 = d1 nor a0 d1 = a1 d0")


# --------------------------------------------------------------------------
# five elements


def rl5_roots(y: CanonicalAdmittance) -> dict:
    """A, C from a0 s^2 + a1 s + 1 = (As+1)(Cs+1) and B, D from the denominator."""
    a0, a1, d0, d1 = y.a0, y.a1, y.d0, y.d1
    da, dd = a1 ** 2 - 4 * a0, d1 ** 2 - 4 * d0
    if da < 0 or dd < 0:
        raise DiscriminantViolation(
            f"negative discriminant (a1^2-4a0 = {sc.format_scalar(da)}, d1^2-4d0 = {sc.format_scalar(dd)})"
        )
    ra, rd = sc.sqrt(da), sc.sqrt(dd)
    vals = [a1, d1, ra, rd]
    if not all(sc.is_exact(v) for v in vals):
        vals = [sc.big(v) for v in vals]
    a1, d1, ra, rd = vals
    two = 2
    return {"A": (a1 + ra) / two, "C": (a1 - ra) / two, "B": (d1 + rd) / two, "D": (d1 - rd) / two}


RL5_FORMULAS = {
    "L1": "1/k",
    "L2": "B(B-D)/(k(A-B)(B-C))",
    "L3": "D(B-D)/(k(A-D)(C-D))",
    "R1": "(B-D)/(k(A-B)(B-C))",
    "R2": "(B-D)/(k(A-D)(C-D))",
}


def realize_rl5(y: CanonicalAdmittance) -> Realization:
    """Five-element RL network for R_k < 0 (interlacing real poles and zeros)."""
    if not y.all_positive():
        raise ConditionError("five-element RL construction needs all coefficients positive")
    if not r_k(y) < 0:
        raise ConditionError(f"R_k must be negative, got {sc.format_scalar(r_k(y))}")
    r = rl5_roots(y)
    A, B, C_, D = r["A"], r["B"], r["C"], r["D"]
    if not (_pos(A - B) and _pos(B - C_) and _pos(C_ - D) and _pos(D)):
        raise OrderingViolation(
            "expected A > B > C > D > 0, got " + ", ".join(sc.format_scalar(v, 12) for v in (A, B, C_, D))
        )
    k = y.k if sc.is_exact(A) else sc.big(y.k)
    one = Fraction(1) if sc.is_exact(A) else sc.big(1)
    v = {
        "L1": one / k,
        "L2": B * (B - D) / (k * (A - B) * (B - C_)),
        "L3": D * (B - D) / (k * (A - D) * (C_ - D)),
        "R1": (B - D) / (k * (A - B) * (B - C_)),
        "R2": (B - D) / (k * (A - D) * (C_ - D)),
    }
    n = topo.fig8(v["L1"], v["L2"], v["L3"], v["R1"], v["R2"], prov=RL5_FORMULAS)
    return _finish(n, y, Case.RL5, roots={x: sc.format_scalar(r[x]) for x in "ABCD"})


@dataclass(frozen=True)
class BridgeData:
    T: object
    alpha: tuple
    beta: tuple
    W1: object
    W2: object
    W3: object
    W: object
    values: dict
    general_values: dict

    @property
    def W_condition(self):
        return self.W ** 2 - 4 * self.W1 * self.W2 * self.W3

    @property
    def beta_condition(self):
        a1, a2, a3 = self.alpha
        b1, b2, b3, b4 = self.beta
        return b4 + a1 * b3 + a3 * b1 - a2 * b2


BRIDGE_FORMULAS = {
    "R1": "a1(T^2+a1 T+a0)/(k(a1+T)^2((a1-d1)T+(a0-d0)))",
    "L1": "((a1-d1)T^2+(a1^2-a1 d1-d0)T+a1(a0-d0))/(k(a1+T)((a1-d1)T+(a0-d0)))",
    "L2": "a0 T/(k(a1+T)((a1-d1)T+(a0-d0)))",
    "L3": "(d1 T+d0)/(k((a1-d1)T+(a0-d0)))",
    "C1": "k((a1-d1)T+(a0-d0))",
}


def bridge_data(y: CanonicalAdmittance) -> BridgeData:
    """Both formula sets for the bridge network plus its side conditions."""
    a0, a1, d0, d1, k = y.as_tuple()
    if _zero(a1 - d1):
        raise ConditionError("a1 = d1: bridge parameter T is undefined")
    cross = a0 * d1 - a1 * d0
    ratio = cross / (a1 - d1)
    if ratio <= 0:
        raise ConditionError("bridge parameter T^2 = (a0d1-a1d0)/(a1-d1) must be positive")
    T = sc.sqrt(ratio)
    if not sc.is_exact(T):
        a0, a1, d0, d1, k = (sc.big(v) for v in (a0, a1, d0, d1, k))
    one = Fraction(1) if sc.is_exact(T) else sc.big(1)
    g = (a1 - d1) * T + (a0 - d0)
    values = {
        "R1": a1 * (T ** 2 + a1 * T + a0) / (k * (a1 + T) ** 2 * g),
        "L1": ((a1 - d1) * T ** 2 + (a1 ** 2 - a1 * d1 - d0) * T + a1 * (a0 - d0)) / (k * (a1 + T) * g),
        "L2": a0 * T / (k * (a1 + T) * g),
        "L3": (d1 * T + d0) / (k * g),
        "C1": k * g,
    }
    al = (a1 + T, a0 + a1 * T, a0 * T)
    be = (one / k, (d1 + T) / k, (d0 + d1 * T) / k, d0 * T / k)
    a_1, a_2, a_3 = al
    b1, b2, b3, b4 = be
    W1 = a_1 * a_2 - a_3
    W2 = a_2 * b1 - b3
    W3 = a_1 * b1 - b2
    W = 2 * (a_1 * a_2 * b1 - a_1 * b3 - a_3 * b1)
    general = {
        "R1": W1 * b1 ** 2 / (a_1 ** 2 * W2),
        "L1": (a_1 * a_2 * b1 - a_3 * b1 - a_1 * b3) * b1 / (a_1 * W2),
        "L2": a_3 * b1 ** 2 / (a_1 * W2),
        "L3": b1 * b3 / W2,
        "C1": W2 / b1 ** 2,
    }
    return BridgeData(T, al, be, W1, W2, W3, W, values, general)


def realize_bridge(y: CanonicalAdmittance) -> Realization:
    """Five-element bridge network when (a0d1 - a1d0)(a1 - d1) = d0^2."""
    if not y.all_positive():
        raise ConditionError("bridge construction needs all coefficients positive")
    if not is_positive_real(y):
        raise NotPositiveReal(f"{y} is not positive-real")
    if _zero(r_k(y)):
        raise ConditionError("R_k = 0: use the reduced construction")
    cross = y.a0 * y.d1 - y.a1 * y.d0
    if not _zero(cross * (y.a1 - y.d1) - y.d0 ** 2):
        raise ConditionError("(a0d1-a1d0)(a1-d1) != d0^2")
    bd = bridge_data(y)
    for name in ("W1", "W2", "W3"):
        if not _pos(getattr(bd, name)):
            raise ConditionError(f"bridge side condition {name} > 0 fails")
    if not _pos(bd.W - 2 * bd.alpha[1] * bd.W3):
        raise ConditionError("bridge side condition W - 2 alpha2 W3 > 0 fails")
    if not (_zero(bd.W_condition) and _zero(bd.beta_condition)):
        raise VerificationError("bridge coefficient identities do not hold")
    for ref, v in bd.values.items():
        g = bd.general_values[ref]
        if not _zero((v - g) / v):
            raise VerificationError(f"bridge formula sets disagree on {ref}")
    v = bd.values
    n = topo.fig12(v["R1"], v["L1"], v["L2"], v["L3"], v["C1"], prov=BRIDGE_FORMULAS)
    return _finish(n, y, Case.BRIDGE, T=sc.format_scalar(bd.T))


# --------------------------------------------------------------------------
# dispatch


_DISPATCH = {
    Case.PURE_INDUCTOR: realize_pure_inductor,
    Case.DEGENERATE: realize_degenerate,
    Case.REDUCIBLE: realize_reduced,
    Case.FIG7A: realize_fig7,
    Case.FIG7B: realize_fig7,
    Case.RL5: realize_rl5,
    Case.BRIDGE: realize_bridge,
}


@dataclass(frozen=True)
class SynthesisResult:
    classification: Classification
    realization: Optional[Realization]

    @property
    def case(self) -> Case:
        return self.classification.case

    @property
    def element_count(self) -> Optional[int]:
        return self.realization.element_count if self.realization else None


def synthesize(y: CanonicalAdmittance) -> SynthesisResult:
    """Classify and, unless a canonical network is required, build and verify a realization."""
    cls = classify(y)
    if cls.case is Case.NOT_PR:
        raise NotPositiveReal(f"{y} is not positive-real ({cls.pr.failed_condition})")
    if cls.case is Case.CANONICAL:
        return SynthesisResult(cls, None)
    real = _DISPATCH[cls.case](y)
    if real.case is not cls.case:
        real = Realization(real.netlist, cls.case, real.element_formulas, real.verified,
                           real.element_count, real.details)
    return SynthesisResult(cls, real)
