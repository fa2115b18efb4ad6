"""Exact number-field, height and elliptic-curve tools for checking level-structure bounds."""

__version__ = "0.1.0"
