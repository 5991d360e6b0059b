"""Exact certificate checker for locally nilpotent derivations and cylinder isomorphisms."""

__version__ = "0.1.0"
