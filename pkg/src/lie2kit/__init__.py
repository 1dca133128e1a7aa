"""Exact toolkit for 2-term L-infinity algebras, representations up to homotopy and their integration."""

__version__ = "0.1.0"
