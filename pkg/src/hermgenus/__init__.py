"""Genus spectrum of Hermitian curve quotients by subgroups of PGU(3, q)."""

__version__ = "0.1.0"
