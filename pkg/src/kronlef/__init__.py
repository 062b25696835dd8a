"""Exact tools for Kronecker coefficients, Cayley-form Lefschetz maps and Alon-Tarsi numbers."""

__version__ = "0.1.0"
