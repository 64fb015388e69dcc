"""Exact and numeric verification of characters of N=2 and N=4 superconformal modules."""

__version__ = "0.1.0"
