"""Two-terminal RLC networks and series-parallel construction trees."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import mpmath

from ..ratfunc import scalar as sc

KINDS = ("R", "L", "C")
TPLUS = "T+"
TMINUS = "T-"


@dataclass(frozen=True)
class Element:
    """A resistor (ohm), inductor (henry) or capacitor (farad)."""

    kind: str
    value: sc.Scalar
    provenance: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown element kind {self.kind}")
        v = sc.to_scalar(self.value)
        if sc.is_big(v) and not mpmath.isfinite(v):
            raise ValueError(f"element value must be finite, got {v}")
        if v <= 0:
            raise ValueError(f"element value must be positive, got {sc.format_scalar(v)}")
        object.__setattr__(self, "value", v)


def R(value, provenance=None) -> Element:
    return Element("R", value, provenance)


def L(value, provenance=None) -> Element:
    return Element("L", value, provenance)


def C(value, provenance=None) -> Element:
    return Element("C", value, provenance)


@dataclass(frozen=True)
class Branch:
    ref: str
    element: Element
    a: str
    b: str

    @property
    def kind(self) -> str:
        return self.element.kind

    @property
    def value(self):
        return self.element.value


@dataclass(frozen=True)
class Netlist:
    """Labeled two-terminal multigraph; terminals are ``T+`` and ``T-``."""

    branches: tuple
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        refs = [b.ref for b in self.branches]
        if len(set(refs)) != len(refs):
            raise ValueError(f"duplicate reference designators in {refs}")
        for b in self.branches:
            if b.a == b.b:
                raise ValueError(f"{b.ref} is a self-loop on node {b.a}")
            if b.ref[:1] != b.kind:
                raise ValueError(f"reference {b.ref} does not match kind {b.kind}")
        nodes = self.nodes
        if TPLUS not in nodes or TMINUS not in nodes:
            raise ValueError("netlist must contain both terminals T+ and T-")
        if not self._connected():
            raise ValueError("netlist graph is not connected")

    @property
    def nodes(self) -> list[str]:
        """T+, T-, then internal nodes in order of first appearance."""
        seen = [TPLUS, TMINUS]
        for b in self.branches:
            for n in (b.a, b.b):
                if n not in seen:
                    seen.append(n)
        present = {n for b in self.branches for n in (b.a, b.b)}
        return [n for n in seen if n in present]

    @property
    def internal_nodes(self) -> list[str]:
        return [n for n in self.nodes if n not in (TPLUS, TMINUS)]

    def _connected(self) -> bool:
        nodes = self.nodes
        if not nodes:
            return False
        adj = {n: set() for n in nodes}
        for b in self.branches:
            adj[b.a].add(b.b)
            adj[b.b].add(b.a)
        stack, seen = [nodes[0]], {nodes[0]}
        while stack:
            for m in adj[stack.pop()] - seen:
                seen.add(m)
                stack.append(m)
        return len(seen) == len(nodes)

    def __len__(self) -> int:
        return len(self.branches)

    @property
    def element_count(self) -> int:
        return len(self.branches)

    def kinds(self) -> Counter:
        return Counter(b.kind for b in self.branches)

    def values(self) -> dict:
        return {b.ref: b.value for b in self.branches}

    def branch(self, ref: str) -> Branch:
        for b in self.branches:
            if b.ref == ref:
                return b
        raise KeyError(ref)

    def is_exact(self) -> bool:
        return all(sc.is_exact(b.value) for b in self.branches)

    def with_values(self, values: Union[Sequence, dict], name: Optional[str] = None) -> "Netlist":
        """Same graph, new element values (by position or by reference)."""
        if not isinstance(values, dict):
            values = {b.ref: v for b, v in zip(self.branches, values, strict=True)}
        return Netlist(
            tuple(Branch(b.ref, Element(b.kind, values[b.ref]), b.a, b.b) for b in self.branches),
            name if name is not None else self.name,
        )


# --------------------------------------------------------------------------
# series-parallel trees


@dataclass(frozen=True)
class Leaf:
    element: Element
    ref: Optional[str] = None

    def leaves(self) -> list["Leaf"]:
        return [self]


@dataclass(frozen=True)
class Series:
    children: tuple

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = tuple(children[0])
        if len(children) < 2:
            raise ValueError("series node needs at least two children")
        object.__setattr__(self, "children", tuple(_as_tree(c) for c in children))

    def leaves(self) -> list[Leaf]:
        return [leaf for c in self.children for leaf in c.leaves()]


@dataclass(frozen=True)
class Parallel:
    children: tuple

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = tuple(children[0])
        if len(children) < 2:
            raise ValueError("parallel node needs at least two children")
        object.__setattr__(self, "children", tuple(_as_tree(c) for c in children))

    def leaves(self) -> list[Leaf]:
        return [leaf for c in self.children for leaf in c.leaves()]


SpTree = Union[Leaf, Series, Parallel]


def _as_tree(x) -> SpTree:
    if isinstance(x, Element):
        return Leaf(x)
    if isinstance(x, (Leaf, Series, Parallel)):
        return x
    raise TypeError(f"not a series-parallel tree: {x!r}")


def series(*children) -> SpTree:
    """Series node that collapses to its child when given a single one."""
    children = [c for c in children if c is not None]
    return _as_tree(children[0]) if len(children) == 1 else Series(*children)


def parallel(*children) -> SpTree:
    children = [c for c in children if c is not None]
    return _as_tree(children[0]) if len(children) == 1 else Parallel(*children)


def compose(tree: SpTree, name: Optional[str] = None) -> Netlist:
    """Lay out a series-parallel tree between T+ and T-.

    Internal nodes are numbered n1, n2, ... and unnamed leaves get reference
    designators R1, L1, L2, ... in depth-first order, so the result depends on
    the tree only.
    """
    tree = _as_tree(tree)
    explicit = {leaf.ref for leaf in tree.leaves() if leaf.ref}
    counters = {k: 0 for k in KINDS}
    node_count = itertools.count(1)
    branches: list[Branch] = []

    def next_ref(kind: str) -> str:
        while True:
            counters[kind] += 1
            ref = f"{kind}{counters[kind]}"
            if ref not in explicit:
                return ref

    def place(t: SpTree, a: str, b: str) -> None:
        if isinstance(t, Leaf):
            branches.append(Branch(t.ref or next_ref(t.element.kind), t.element, a, b))
        elif isinstance(t, Series):
            cur = a
            for i, child in enumerate(t.children):
                nxt = b if i == len(t.children) - 1 else f"n{next(node_count)}"
                place(child, cur, nxt)
                cur = nxt
        else:
            for child in t.children:
                place(child, a, b)

    place(tree, TPLUS, TMINUS)
    return Netlist(tuple(branches), name)


def tree_key(tree: SpTree) -> str:
    """Canonical string of a tree up to reordering of children (values ignored)."""
    if isinstance(tree, Leaf):
        return tree.element.kind
    op = "S" if isinstance(tree, Series) else "P"
    return op + "(" + ",".join(sorted(tree_key(c) for c in tree.children)) + ")"


def sp_decompose(n: Netlist) -> Optional[SpTree]:
    """Series-parallel tree of ``n`` with series children ordered from T+ to T-.

    Leaves keep their reference designators, so ``compose(sp_decompose(n))``
    is ``n`` up to internal node names.  Returns None for networks that are
    not series-parallel (the bridge).
    """
    return _decompose(list(n.branches), TPLUS, TMINUS)


def _decompose(branches: list, a: str, b: str) -> Optional[SpTree]:
    if len(branches) == 1:
        br = branches[0]
        return Leaf(br.element, br.ref) if {br.a, br.b} == {a, b} else None
    # parallel split: groups of branches joined through nodes other than a, b
    order = {br.ref: i for i, br in enumerate(branches)}
    groups: list[list] = []
    for br in branches:
        inner = {br.a, br.b} - {a, b}
        hit = [g for g in groups if inner & {x for e in g for x in (e.a, e.b)} - {a, b}]
        merged = sorted([br] + [e for g in hit for e in g], key=lambda e: order[e.ref])
        groups = [g for g in groups if g not in hit] + [merged]
    if len(groups) > 1:
        groups.sort(key=lambda g: order[g[0].ref])
        parts = [_decompose(g, a, b) for g in groups]
        return None if any(p is None for p in parts) else Parallel(*parts)
    # series split at the articulation node nearest to a
    nodes = {x for br in branches for x in (br.a, br.b)}
    edges = [(br.a, br.b) for br in branches]
    for v in _bfs_order(nodes, edges, a):
        if v in (a, b):
            continue
        side = _reachable(nodes - {v}, [e for e in edges if v not in e], a)
        if b in side:
            continue
        first = [br for br in branches if br.a in side or br.b in side]
        rest = [br for br in branches if br not in first]
        head, tail = _decompose(first, a, v), _decompose(rest, v, b)
        if head is None or tail is None:
            return None
        return Series(*_series_children(head), *_series_children(tail))
    return None


def _series_children(t: SpTree) -> tuple:
    return t.children if isinstance(t, Series) else (t,)


def _bfs_order(nodes, edges, start) -> list[str]:
    adj = {x: [] for x in nodes}
    for p, q in edges:
        adj[p].append(q)
        adj[q].append(p)
    order, seen = [start], {start}
    for x in order:
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


# --------------------------------------------------------------------------
# structural predicates


def _reachable(nodes: Iterable[str], edges: list[tuple[str, str]], start: str) -> set[str]:
    adj = {n: [] for n in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, stack = {start}, [start]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return seen


def inductor_path_and_cutset(n: Netlist) -> bool:
    """True iff a T+ to T- path and a terminal-separating cut-set both consist of inductors only.

    An all-inductor cut-set exists exactly when deleting every inductor
    disconnects the terminals.
    """
    nodes = n.nodes
    ind = [(b.a, b.b) for b in n.branches if b.kind == "L"]
    other = [(b.a, b.b) for b in n.branches if b.kind != "L"]
    has_path = TMINUS in _reachable(nodes, ind, TPLUS)
    has_cut = TMINUS not in _reachable(nodes, other, TPLUS)
    return has_path and has_cut


# --------------------------------------------------------------------------
# isomorphism


def _edge_multiset(n: Netlist, mapping: dict, with_refs: bool) -> Counter:
    out = Counter()
    for b in n.branches:
        ends = tuple(sorted((mapping[b.a], mapping[b.b])))
        out[(b.ref if with_refs else None, b.kind, b.value, ends)] += 1
    return out


def isomorphic(n1: Netlist, n2: Netlist, with_refs: bool = True, values_close=None) -> bool:
    """Graph isomorphism fixing the terminals, matching kinds, values (and refs).

    Brute force over internal-node bijections; netlists here have at most a
    handful of internal nodes.  ``values_close`` optionally replaces exact
    value equality (for BigReal comparisons).
    """
    if len(n1) != len(n2) or n1.kinds() != n2.kinds():
        return False
    i1, i2 = n1.internal_nodes, n2.internal_nodes
    if len(i1) != len(i2):
        return False
    for perm in itertools.permutations(i2):
        mapping1 = {TPLUS: TPLUS, TMINUS: TMINUS, **dict(zip(i1, perm))}
        mapping2 = {n: n for n in n2.nodes}
        if values_close is None:
            if _edge_multiset(n1, mapping1, with_refs) == _edge_multiset(n2, mapping2, with_refs):
                return True
        elif _match_close(n1, n2, mapping1, with_refs, values_close):
            return True
    return False


def _match_close(n1, n2, mapping, with_refs, close) -> bool:
    pool = list(n2.branches)
    for b in n1.branches:
        ends = {mapping[b.a], mapping[b.b]}
        for i, c in enumerate(pool):
            if (
                c.kind == b.kind
                and {c.a, c.b} == ends
                and (not with_refs or c.ref == b.ref)
                and close(b.value, c.value)
            ):
                pool.pop(i)
                break
        else:
            return False
    return True
