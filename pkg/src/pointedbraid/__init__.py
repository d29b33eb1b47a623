"""Pointed braided tensor categories from quantum linear spaces, in exact arithmetic."""

__version__ = "0.1.0"
