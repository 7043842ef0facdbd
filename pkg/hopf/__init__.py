"""Exact computer algebra for finite-dimensional Hopf algebras and their free constructions."""

__version__ = "0.1.0"
