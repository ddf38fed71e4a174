"""Colorings of virtual link diagrams by Yang-Baxter pairs, and the
conjugacy-class invariants built from cocycle pairs over them."""

__version__ = "0.1.0"
