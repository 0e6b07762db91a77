"""Exact computations in affine Hecke algebras and their geometric dictionary."""

__version__ = "0.1.0"
