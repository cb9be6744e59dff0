"""Reeb graphs of unions of balls under affine functions, computed by an interval sweep."""

__version__ = "0.1.0"
