"""Exact computations with modules over finite-dimensional algebras over F_p."""

__version__ = "0.1.0"
