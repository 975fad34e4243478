"""Chain-level Bloch group invariants of cusped hyperbolic 3-manifolds."""

__version__ = "0.1.0"
