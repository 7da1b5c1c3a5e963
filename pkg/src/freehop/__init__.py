"""Exact combinatorics of partitioned permutations, monotone Hurwitz numbers,
and the functional relations between higher-order moment and free-cumulant
generating series."""

__version__ = "0.1.0"
