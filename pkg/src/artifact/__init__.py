"""Exact computations for the Kitaev lattice model over finite-dimensional Hopf algebras."""

__version__ = "0.1.0"
