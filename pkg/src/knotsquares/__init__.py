"""Exact tools linking odd sums of two squares to determinants of achiral knots."""

__version__ = "0.1.0"
