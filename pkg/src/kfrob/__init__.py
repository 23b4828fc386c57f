"""Exact k-feasibility stratification of affine semigroups and k-Frobenius numbers."""

__version__ = "0.1.0"
