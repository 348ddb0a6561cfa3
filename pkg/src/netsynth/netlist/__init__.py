"""Two-terminal RLC networks: graph model, builders, duals and file I/O."""

from .dual import fid_netlist
from .io import load_netlist, read_netlist, save_netlist, write_netlist
from .model import (
    KINDS,
    TMINUS,
    TPLUS,
    Branch,
    C,
    Element,
    L,
    Leaf,
    Netlist,
    Parallel,
    R,
    Series,
    compose,
    inductor_path_and_cutset,
    isomorphic,
    parallel,
    series,
    sp_decompose,
    tree_key,
)
from . import topologies

__all__ = [
    "KINDS", "TMINUS", "TPLUS", "Branch", "C", "Element", "L", "Leaf", "Netlist",
    "Parallel", "R", "Series", "compose", "fid_netlist", "inductor_path_and_cutset",
    "isomorphic", "load_netlist", "parallel", "read_netlist", "save_netlist", "series",
    "sp_decompose", "topologies", "tree_key", "write_netlist",
]
