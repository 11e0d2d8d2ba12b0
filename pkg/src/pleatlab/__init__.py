"""Numerical laboratory for convex pleated structures on once-punctured-torus
groups and the cone manifolds obtained by doubling them."""

__version__ = "0.1.0"
