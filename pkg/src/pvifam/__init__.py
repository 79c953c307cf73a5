"""Exact verification of algebraic solutions of families of Painlevé VI equations."""

__version__ = "0.1.0"
