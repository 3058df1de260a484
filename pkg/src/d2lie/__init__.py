"""Exact GF(2) toolkit for type-D Lie algebras."""

__version__ = "0.1.0"
