"""Numerical laboratory for Möbius disjointness on graph and dendrite maps."""

__version__ = "0.1.0"
