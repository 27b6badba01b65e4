"""Exact computations around the generalized nonabelian Fourier pairing."""

__version__ = "0.1.0"
