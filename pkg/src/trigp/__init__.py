"""Gorenstein projective modules over triangular matrix algebras over F_p."""

__version__ = "0.1.0"
