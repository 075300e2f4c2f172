"""Quantum computation on a single coined walker over chains of closed graphs."""

__version__ = "0.1.0"
