"""Exact coefficient ring and truncated series containers."""

from .numbers import HALF, I, ONE, ZERO, GaussRat, Rat, rat, rat_str, root_of_unity_quarter
from .series import (PolySeries, WindowSeries, multiply, product_order, ps_equal,
                     scalar_inverse, series_from_json)
from .zpoly import NotDivisible, ZPoly

__all__ = [
    "HALF", "I", "ONE", "ZERO", "GaussRat", "Rat", "rat", "rat_str", "root_of_unity_quarter",
    "PolySeries", "WindowSeries", "multiply", "product_order", "ps_equal", "scalar_inverse",
    "series_from_json", "NotDivisible", "ZPoly",
]
