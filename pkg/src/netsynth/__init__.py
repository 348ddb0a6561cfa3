"""Synthesis and verification of low-complexity RLC realizations for the
admittance family k(a0 s^2 + a1 s + 1) / (s (d0 s^2 + d1 s + 1))."""

__version__ = "0.1.0"
