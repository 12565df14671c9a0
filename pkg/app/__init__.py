"""Exact resolutions, Adams squares and total Betti number checks."""

__version__ = "0.1.0"
