from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given

from netsynth.admittance import CanonicalAdmittance, fid_coefficients, is_positive_real, r_k
from netsynth.analysis import admittance_ratfunc, driving_point_admittance
from netsynth.errors import ConditionError, NotPositiveReal
from netsynth.netlist import isomorphic
from netsynth.oracle.experiments import SAMPLERS, sample_pr_mixture
from netsynth.ratfunc import RatFunc, big, parse_ratfunc
from netsynth.synthesis import (
    MAX_ELEMENTS,
    Case,
    bridge_data,
    classify,
    realize_bridge,
    realize_degenerate,
    realize_fig7,
    realize_reduced,
    realize_rl5,
    rl5_roots,
    synthesize,
)

from conftest import ca, tuples


def values(real):
    return {ref: v for ref, v in real.netlist.values().items()}


def kinds_values(real):
    return sorted((b.kind, b.value) for b in real.netlist.branches)


# --- classification --------------------------------------------------------


@pytest.mark.parametrize("coeffs, case", [
    ((2, 1, 1, 1, 1), Case.FIG7A),
    ((8, 6, 3, 4, 1), Case.RL5),
    ((3, 2, 1, 1, 1), Case.BRIDGE),
    ((5, 3, 1, 1, 1), Case.CANONICAL),
    ((3, 3, 1, 1, 1), Case.FIG7B),
    ((1, 1, 2, 1, 1), Case.NOT_PR),
    ((0, 0, 0, 0, 5), Case.PURE_INDUCTOR),
    ((1, 1, 0, 1, 1), Case.DEGENERATE),
    ((2, 3, 1, 2, 1), Case.REDUCIBLE),
])
def test_classify_examples(coeffs, case):
    assert classify(ca(*coeffs)).case is case


def test_classify_witness():
    c = classify(ca(3, 2, 1, 1, 1))
    assert c.rk == 3
    assert c.witness["bridge"] == 0
    c = classify(ca(2, 1, 1, 1, 1))
    assert (c.rk, c.witness["a1-d1"], c.witness["a0-d0"]) == (1, 0, 1)


def test_precedence_prefers_four_elements():
    # a1 = d1 and the bridge condition cannot both hold with d0 > 0, but a1 = d1 together
    # with a0 d1 = a1 d0 collapses to a0 = d0 (R_k = 0)
    y = ca(2, 2, 2, 2, 1)
    assert classify(y).case is Case.PURE_INDUCTOR


@given(tuples())
def test_classifier_completeness(y):
    c = classify(y)
    assert (c.case is Case.NOT_PR) == (not is_positive_real(y).is_pr)
    if c.case is Case.NOT_PR:
        with pytest.raises(NotPositiveReal):
            synthesize(y)
        return
    res = synthesize(y)
    assert res.case is c.case


# --- degenerate and reduced ------------------------------------------------


def test_degenerate_rk_positive():
    real = realize_degenerate(ca(1, 1, 0, 1, 1))
    assert kinds_values(real) == [("C", 1), ("L", 1), ("R", 1)]
    assert admittance_ratfunc(real.netlist) == parse_ratfunc("(s^2+s+1)/(s^2+s)")


def test_degenerate_rk_negative():
    real = realize_degenerate(ca(1, 3, 0, 1, 2))
    assert r_k(ca(1, 3, 0, 1, 2)) == -1
    half = Fraction(1, 2)
    assert kinds_values(real) == [("L", half), ("L", half), ("R", half), ("R", half)]


def test_degenerate_lossless():
    real = realize_degenerate(ca(2, 0, 1, 0, 1))
    assert kinds_values(real) == [("C", 1), ("L", 1), ("L", 1)]
    assert admittance_ratfunc(real.netlist) == parse_ratfunc("(2s^2+1)/(s(s^2+1))")


def test_degenerate_parallel_resistor_omitted():
    # d0 = 0, R_k > 0, a1 != d1: four elements
    real = realize_degenerate(ca(1, 3, 0, 1, 1))
    assert real.element_count == 4
    # d0 = 0, d1 = 0: the series resistor vanishes
    real = realize_degenerate(ca(2, 1, 0, 0, 1))
    assert real.element_count == 3


def test_degenerate_rejects_non_pr_and_general():
    with pytest.raises(NotPositiveReal):
        realize_degenerate(ca(1, 1, 0, 2, 1))
    with pytest.raises(ConditionError):
        realize_degenerate(ca(2, 1, 1, 1, 1))


def test_reduced_common_factor():
    real = realize_reduced(ca(2, 3, 1, 2, 1))
    assert real.netlist.name == "Fig5b"
    assert values(real) == {"L1": 1, "R1": 1, "L2": 1}


def test_reduced_full_cancellation():
    real = realize_reduced(ca(1, 2, 1, 2, 7))
    assert values(real) == {"L1": Fraction(1, 7)}
    assert synthesize(ca(1, 1, 1, 1, 3)).realization.values() == {"L1": Fraction(1, 3)}


def test_reduced_rejects_rk_nonzero():
    with pytest.raises(ConditionError):
        realize_reduced(ca(2, 1, 1, 1, 1))


# --- four elements ---------------------------------------------------------


def test_fig7a_values():
    real = realize_fig7(ca(2, 1, 1, 1, 1))
    v = values(real)
    assert (v["R1"], v["L1"], v["L2"], v["C1"]) == (Fraction(1, 4), Fraction(1, 2), Fraction(1, 2), 4)
    assert v["L1"] + v["L2"] == 1  # = 1/k
    assert driving_point_admittance(real.netlist).canonical == ca(2, 1, 1, 1, 1)
    assert real.element_formulas["C1"] == "k a0^2/(a0-d0)"


def test_fig7b_is_dual_of_fig7a():
    y = ca(1, 1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    assert y == fid_coefficients(ca(2, 1, 1, 1, 1))
    real = realize_fig7(y)
    assert real.case is Case.FIG7B and real.verified
    assert driving_point_admittance(real.netlist).canonical == y
    from netsynth.netlist import fid_netlist

    assert isomorphic(fid_netlist(real.netlist), realize_fig7(ca(2, 1, 1, 1, 1)).netlist)


def test_fig7_condition_errors():
    with pytest.raises(ConditionError):
        realize_fig7(ca(5, 3, 1, 1, 1))
    with pytest.raises(ConditionError):
        realize_fig7(ca(1, 1, 2, 1, 1))


# --- five elements ---------------------------------------------------------


def test_rl5_instance():
    y = ca(8, 6, 3, 4, 1)
    assert rl5_roots(y) == {"A": 4, "B": 3, "C": 2, "D": 1}
    real = realize_rl5(y)
    v = values(real)
    assert (v["L1"], v["L2"], v["L3"], v["R1"], v["R2"]) == (1, 6, Fraction(2, 3), 2, Fraction(2, 3))
    assert driving_point_admittance(real.netlist).canonical == y


def test_rl5_partial_fractions():
    total = parse_ratfunc("1/s") + parse_ratfunc("(1/2)/(3s+1)") + parse_ratfunc("(3/2)/(s+1)")
    assert total == ca(8, 6, 3, 4, 1).to_ratfunc()


def test_rl5_irrational_roots_bigreal():
    y = ca(9, 7, 2, 3, 1)
    real = realize_rl5(y)
    assert not real.netlist.is_exact()
    got = admittance_ratfunc(real.netlist)
    assert got.approx_equal(y.to_ratfunc(), mpmath.mpf(10) ** -30)


def test_rl5_conditions():
    with pytest.raises(ConditionError):
        realize_rl5(ca(2, 1, 1, 1, 1))


def test_bridge_instance():
    y = ca(3, 2, 1, 1, 1)
    bd = bridge_data(y)
    assert bd.T == 1
    assert bd.alpha == (3, 5, 3) and bd.beta == (1, 2, 2, 1)
    assert (bd.W1, bd.W2, bd.W3, bd.W) == (12, 3, 1, 12)
    assert bd.W_condition == 0 and bd.beta_condition == 0
    assert bd.values == bd.general_values
    real = realize_bridge(y)
    v = values(real)
    assert (v["R1"], v["L1"], v["L2"], v["L3"], v["C1"]) == (
        Fraction(4, 9), Fraction(2, 3), Fraction(1, 3), Fraction(2, 3), 3)
    assert driving_point_admittance(real.netlist).canonical == y


def test_bridge_condition_errors():
    with pytest.raises(ConditionError):
        bridge_data(ca(2, 1, 1, 1, 1))  # a1 = d1: T undefined
    with pytest.raises(ConditionError):
        realize_bridge(ca(5, 3, 1, 1, 1))


def test_bridge_formula_sets_agree_on_class():
    rng = np.random.default_rng(11)
    for _ in range(100):
        y = SAMPLERS["BridgeLemma13"](rng)
        bd = bridge_data(y)
        assert bd.values == bd.general_values
        assert bd.W_condition == 0 and bd.beta_condition == 0


# --- end to end ------------------------------------------------------------


def test_synthesize_examples():
    assert synthesize(ca(2, 1, 1, 1, 1)).element_count == 4
    res = synthesize(ca(0, 0, 0, 0, 5))
    assert res.realization.values() == {"L1": Fraction(1, 5)}
    res = synthesize(ca(5, 3, 1, 1, 1))
    assert res.case is Case.CANONICAL and res.realization is None
    with pytest.raises(NotPositiveReal):
        synthesize(ca(1, 1, 2, 1, 1))


def _check_round_trip(y):
    res = synthesize(y)
    if res.realization is None:
        assert res.case is Case.CANONICAL
        return res
    real = res.realization
    assert real.verified
    assert real.element_count <= MAX_ELEMENTS[res.case]
    if res.case is Case.PURE_INDUCTOR:
        assert real.element_count == 1
    if res.case in (Case.FIG7A, Case.FIG7B):
        assert real.element_count == 4
    if res.case in (Case.RL5, Case.BRIDGE):
        assert real.element_count == 5
    got = admittance_ratfunc(real.netlist)
    if real.netlist.is_exact():
        assert got == y.to_ratfunc()
    else:
        assert got.approx_equal(y.to_ratfunc(), mpmath.mpf(10) ** -30)
    return res


@pytest.mark.parametrize("case", list(SAMPLERS))
def test_round_trip_per_branch(case):
    rng = np.random.default_rng(hash(case) % 2 ** 32)
    for _ in range(25):
        y = SAMPLERS[case](rng)
        got = _check_round_trip(y).case.value
        if case == "BridgeLemma13":
            # the bridge condition also admits R_k < 0, where the RL network is preferred
            assert got in (case, "Rl5Thm5")
        elif case != "DegenerateZeroCoeff":
            assert got == case


@given(tuples())
def test_round_trip_random(y):
    assume(is_positive_real(y).is_pr)
    _check_round_trip(y)


def test_bigreal_input():
    y = CanonicalAdmittance(*(big(v) for v in (2, 1, 1, 1, 1)))
    res = _check_round_trip(y)
    assert res.case is Case.FIG7A


def _scaled_values(real, lam):
    out = {}
    for b in real.netlist.branches:
        out[b.ref] = b.value * lam if b.kind == "C" else b.value / lam
    return out


def _close(u, v):
    return abs(big(u) - big(v)) <= mpmath.mpf(10) ** -30 * abs(big(v))


def test_scaling_covariance():
    rng = np.random.default_rng(3)
    for _ in range(80):
        y = sample_pr_mixture(rng)
        lam = Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 20)))
        a, b = synthesize(y), synthesize(y.scaled(lam))
        assert a.case is b.case
        if a.realization is None:
            continue
        assert b.realization.netlist.name == a.realization.netlist.name
        want = a.realization.netlist.with_values(_scaled_values(a.realization, lam))
        assert isomorphic(b.realization.netlist, want, values_close=_close)


def test_four_element_consistency():
    rng = np.random.default_rng(8)
    for _ in range(300):
        y = sample_pr_mixture(rng)
        if not y.all_positive():
            continue
        res = synthesize(y)
        cross = y.a0 * y.d1 - y.a1 * y.d0
        cond = r_k(y) == 0 or (y.a0 > y.d0 and (y.a1 == y.d1 or cross == 0))
        small = res.realization is not None and res.element_count <= 4
        assert small == cond
