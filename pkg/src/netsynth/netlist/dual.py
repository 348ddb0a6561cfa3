"""Frequency-inverse dual of a two-terminal network.

The dual graph is taken of the network plus a virtual "port" edge joining
the terminals; the two faces on either side of the port edge become the new
terminals.  Every element keeps its kind and has its value inverted, which
maps the admittance Y(s) to Y^{-1}(1/s).

Series-parallel networks are dualized on their series-parallel tree
(series and parallel swap), which keeps the order of series chains and makes
the transform an exact involution.  Anything else (the bridge) goes through
face tracing: the planar embedding is found by trying rotation systems until
Euler's formula is met.  With the port edge added the bridge is 3-connected,
so its embedding and hence its dual are unique.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..errors import NonPlanarError
from ..ratfunc import scalar as sc
from .model import TMINUS, TPLUS, Branch, Element, Leaf, Netlist, Parallel, Series, compose, sp_decompose


def _faces(nodes, edges, rotation) -> list[int]:
    """Face index of every dart; dart 2i runs a->b along edge i, dart 2i+1 back."""
    head = {}
    for i, (a, b) in enumerate(edges):
        head[2 * i], head[2 * i + 1] = b, a
    succ = {}
    for n in nodes:
        cyc = rotation[n]
        for j, d in enumerate(cyc):
            succ[d] = cyc[(j + 1) % len(cyc)]
    face_of = [-1] * (2 * len(edges))
    count = 0
    for start in range(2 * len(edges)):
        if face_of[start] >= 0:
            continue
        d = start
        while face_of[d] < 0:
            face_of[d] = count
            d = succ[d ^ 1]
        count += 1
    return face_of


def planar_faces(nodes, edges) -> list[int]:
    """Dart-to-face map of some planar embedding of a connected multigraph."""
    darts_at = {n: [] for n in nodes}
    for i, (a, b) in enumerate(edges):
        darts_at[a].append(2 * i)
        darts_at[b].append(2 * i + 1)
    target = len(edges) - len(nodes) + 2
    choices = []
    for n in nodes:
        first, rest = darts_at[n][0], darts_at[n][1:]
        choices.append([(first, *p) for p in itertools.permutations(rest)])
    for combo in itertools.product(*choices):
        rotation = dict(zip(nodes, combo))
        face_of = _faces(nodes, edges, rotation)
        if max(face_of) + 1 == target:
            return face_of
    raise NonPlanarError("network with its port edge is not planar")


def _inverse(x):
    return Fraction(1) / x if sc.is_exact(x) else 1 / x


def _dual_element(e: Element) -> Element:
    prov = f"1/({e.provenance})" if e.provenance else None
    return Element(e.kind, _inverse(e.value), prov)


def _dual_tree(t):
    if isinstance(t, Leaf):
        return Leaf(_dual_element(t.element), t.ref)
    kids = [_dual_tree(c) for c in t.children]
    return Parallel(*kids) if isinstance(t, Series) else Series(*kids)


def _dual_name(n: Netlist):
    if n.name and n.name.endswith("-dual"):
        return n.name[: -len("-dual")]
    return f"{n.name}-dual" if n.name else None


def fid_netlist(n: Netlist) -> Netlist:
    """Graph dual with reciprocal element values; admittance becomes Y^{-1}(1/s)."""
    tree = sp_decompose(n)
    if tree is not None:
        return compose(_dual_tree(tree), _dual_name(n))
    return _face_dual(n)


def _face_dual(n: Netlist) -> Netlist:
    nodes = n.nodes
    edges = [(b.a, b.b) for b in n.branches] + [(TPLUS, TMINUS)]
    face_of = planar_faces(nodes, edges)
    port = len(edges) - 1
    fp, fm = face_of[2 * port], face_of[2 * port + 1]
    if fp == fm:
        raise ValueError("terminals are not separated by the network")
    names = {fp: TPLUS, fm: TMINUS}
    counter = itertools.count(1)
    branches = []
    for i, b in enumerate(n.branches):
        f1, f2 = face_of[2 * i], face_of[2 * i + 1]
        if f1 == f2:
            raise ValueError(f"{b.ref} does not lie on any terminal-to-terminal path")
        for f in (f1, f2):
            if f not in names:
                names[f] = f"n{next(counter)}"
        branches.append(Branch(b.ref, _dual_element(b.element), names[f1], names[f2]))
    return Netlist(tuple(branches), _dual_name(n))
