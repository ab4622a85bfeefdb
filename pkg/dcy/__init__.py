"""Domino cycles - domino tableaux and equivalence classes in type B_n."""

__version__ = "0.1.0"
