"""Exact evaluation and property checking for means of infinite sets of reals."""

__version__ = "0.1.0"
