"""Exact Koszul calculus for quadratic algebras."""

__version__ = "1.0.0"
