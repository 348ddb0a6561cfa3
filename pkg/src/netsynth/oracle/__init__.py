"""Brute-force checks of realizability claims: enumeration, fitting, experiments."""
