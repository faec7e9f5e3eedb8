"""Rees algebras of conormal modules: a computational commutative-algebra toolkit."""

__version__ = "0.1.0"
