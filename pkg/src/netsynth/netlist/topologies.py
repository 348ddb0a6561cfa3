"""Named topologies used by the synthesis procedures and the experiments.

Each constructor was pinned by matching its driving-point admittance against
a closed-form admittance expression; the test-suite re-checks every one of
them symbolically (by exact substitution at random rational points).
"""

from __future__ import annotations

from .model import TMINUS, TPLUS, Branch, C, Element, L, Leaf, Netlist, R, compose, parallel, series


def _leaf(kind: str, ref: str, value, provenance=None) -> Leaf:
    return Leaf(Element(kind, value, provenance), ref)


def single_inductor(l1, provenance=None) -> Netlist:
    return compose(_leaf("L", "L1", l1, provenance), "L")


def fig5b(l1, r1, l2, prov: dict | None = None) -> Netlist:
    """L1 in parallel with (R1 series L2): the three-element realization."""
    p = prov or {}
    return compose(
        parallel(_leaf("L", "L1", l1, p.get("L1")),
                 series(_leaf("R", "R1", r1, p.get("R1")), _leaf("L", "L2", l2, p.get("L2")))),
        "Fig5b",
    )


def fig7a(r1, l1, l2, c1, prov: dict | None = None) -> Netlist:
    """L1 series (L2 parallel (C1 series R1))."""
    p = prov or {}
    return compose(
        series(
            _leaf("L", "L1", l1, p.get("L1")),
            parallel(
                _leaf("L", "L2", l2, p.get("L2")),
                series(_leaf("C", "C1", c1, p.get("C1")), _leaf("R", "R1", r1, p.get("R1"))),
            ),
        ),
        "Fig7a",
    )


def fig6(l1, l2, l3, r1) -> Netlist:
    """The Fig7a network with the capacitor replaced by a third inductor."""
    return compose(
        series(
            _leaf("L", "L1", l1),
            parallel(_leaf("L", "L2", l2), series(_leaf("L", "L3", l3), _leaf("R", "R1", r1))),
        ),
        "Fig6",
    )


def fig8(l1, l2, l3, r1, r2, prov: dict | None = None) -> Netlist:
    """L1 parallel (L2 series R1) parallel (L3 series R2)."""
    p = prov or {}
    return compose(
        parallel(
            _leaf("L", "L1", l1, p.get("L1")),
            series(_leaf("L", "L2", l2, p.get("L2")), _leaf("R", "R1", r1, p.get("R1"))),
            series(_leaf("L", "L3", l3, p.get("L3")), _leaf("R", "R2", r2, p.get("R2"))),
        ),
        "Fig8",
    )


def fig9a(r1, l1, l2, l3, c1) -> Netlist:
    """L1 series (C1 parallel L3 parallel (L2 series R1))."""
    return compose(
        series(
            _leaf("L", "L1", l1),
            parallel(
                _leaf("C", "C1", c1),
                _leaf("L", "L3", l3),
                series(_leaf("L", "L2", l2), _leaf("R", "R1", r1)),
            ),
        ),
        "Fig9a",
    )


def bridge(upper_left: Branch, lower_left: Branch, upper_right: Branch, lower_right: Branch,
           middle: Branch, name: str | None = None) -> Netlist:
    return Netlist((upper_left, lower_left, upper_right, lower_right, middle), name)


def _bridge(arms: dict, name: str, prov: dict | None = None) -> Netlist:
    """Wheatstone graph: T+-n1, n1-T-, T+-n2, n2-T-, bridge n1-n2.

    ``arms`` maps position -> (ref, value) with positions "p1", "1m", "p2", "2m", "12".
    """
    p = prov or {}
    ends = {"p1": (TPLUS, "n1"), "1m": ("n1", TMINUS), "p2": (TPLUS, "n2"),
            "2m": ("n2", TMINUS), "12": ("n1", "n2")}
    branches = []
    for pos in ("p1", "1m", "p2", "2m", "12"):
        ref, value = arms[pos]
        a, b = ends[pos]
        branches.append(Branch(ref, Element(ref[0], value, p.get(ref)), a, b))
    return Netlist(tuple(branches), name)


def fig12(r1, l1, l2, l3, c1, prov: dict | None = None) -> Netlist:
    """Bridge with arms L1 (T+-n1), L2 (n1-T-), L3 (T+-n2), C1 (n2-T-) and R1 across."""
    return _bridge({"p1": ("L1", l1), "1m": ("L2", l2), "p2": ("L3", l3),
                    "2m": ("C1", c1), "12": ("R1", r1)}, "Fig12", prov)


def fig13a(r1, l1, l2, l3, c1) -> Netlist:
    """Bridge with arms L1 (T+-n1), L2 (n1-T-), L3 (T+-n2), R1 (n2-T-) and C1 across."""
    return _bridge({"p1": ("L1", l1), "1m": ("L2", l2), "p2": ("L3", l3),
                    "2m": ("R1", r1), "12": ("C1", c1)}, "Fig13a")


__all__ = [
    "bridge", "fig5b", "fig6", "fig7a", "fig8", "fig9a", "fig12", "fig13a", "single_inductor",
    "R", "L", "C",
]
