"""Exact counting of non-vanishing points of spanning-tree and basis
polynomials over finite fields."""

__version__ = "0.1.0"
