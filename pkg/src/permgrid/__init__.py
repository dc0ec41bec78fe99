"""Exact enumeration of permutation classes via monotone grid classes."""

__version__ = "0.1.0"
