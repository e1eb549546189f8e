"""Hopf forms of group rings over Q: fixed-ring computations, Hopf-Galois
descent, and Wedderburn certificates."""

__version__ = "0.1.0"
