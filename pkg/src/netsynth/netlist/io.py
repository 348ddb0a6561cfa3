"""Line-oriented netlist files.

::

    # netsynth v1
    # topology: Fig7a
    L1 T+ n1 1/2
    L2 n1 T- 1/2
    C1 n1 n2 4 ; k a0^2/(a0-d0)
    R1 n2 T- 1/4

Exact values are written as ``p`` or ``p/q``; BigReal values as decimals with
the working number of significant digits.  A decimal read back becomes a
BigReal, so write/read is the identity on both kinds.  Text after ``;`` is the
element's provenance expression.
"""

from __future__ import annotations

from pathlib import Path

from ..errors import NetlistFormatError
from ..ratfunc import scalar as sc
from .model import KINDS, Branch, Element, Netlist

HEADER = "# netsynth v1"


def write_netlist(n: Netlist) -> str:
    lines = [HEADER]
    if n.name:
        lines.append(f"# topology: {n.name}")
    for b in n.branches:
        line = f"{b.ref} {b.a} {b.b} {sc.format_scalar(b.value)}"
        if b.element.provenance:
            line += f" ; {b.element.provenance}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def read_netlist(text: str) -> Netlist:
    name = None
    branches = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("topology:"):
                name = body.split(":", 1)[1].strip() or None
            continue
        body, _, prov = line.partition(";")
        fields = body.split()
        if len(fields) != 4:
            raise NetlistFormatError(f"expected '<ref> <node+> <node-> <value>', got {raw!r}", lineno)
        ref, a, b, value_text = fields
        kind = ref[0].upper()
        if kind not in KINDS:
            raise NetlistFormatError(f"unknown element kind {ref[0]}", lineno)
        try:
            value = sc.parse_scalar(value_text, decimal_exact=False)
        except ValueError as exc:
            raise NetlistFormatError(str(exc), lineno) from None
        if value <= 0:
            raise NetlistFormatError(f"nonpositive value {value_text} for {ref}", lineno)
        try:
            branches.append(Branch(ref, Element(kind, value, prov.strip() or None), a, b))
        except ValueError as exc:
            raise NetlistFormatError(str(exc), lineno) from None
    if not branches:
        raise NetlistFormatError("netlist has no elements")
    try:
        return Netlist(tuple(branches), name)
    except ValueError as exc:
        raise NetlistFormatError(str(exc)) from None


def save_netlist(n: Netlist, path) -> Path:
    path = Path(path)
    path.write_text(write_netlist(n), encoding="utf-8")
    return path


def load_netlist(path) -> Netlist:
    return read_netlist(Path(path).read_text(encoding="utf-8"))
