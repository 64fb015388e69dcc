"""Exact scalars: rationals and Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

Rat = Fraction
RatLike = Union[int, Fraction, str]

HALF = Fraction(1, 2)


def rat(x: RatLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _norm(x):
    # keep integers as ints so the hot loops stay on machine-size arithmetic
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class GaussRat:
    """An element of Q(i), stored as a pair of exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        self.re = _norm(re if isinstance(re, int) else rat(re))
        self.im = _norm(im if isinstance(im, int) else rat(im))

    @classmethod
    def _raw(cls, re, im) -> "GaussRat":
        obj = object.__new__(cls)
        obj.re = _norm(re)
        obj.im = _norm(im)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x)

    @classmethod
    def unit(cls, k: int) -> "GaussRat":
        """Return i**k."""
        return _UNITS[k % 4]

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussRat._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return Fraction(self.re) ** 2 + Fraction(self.im) ** 2

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRat._raw(Fraction(self.re) / n, Fraction(-self.im) / n)

    def __truediv__(self, other):
        return self * GaussRat.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        re, im = rat_str(self.re), rat_str(self.im)
        if not self.im:
            return re
        if not self.re:
            return f"{im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{re}{sign}{rat_str(abs(Fraction(self.im)))}i"

    def to_json(self) -> list[str]:
        return [rat_str(self.re), rat_str(self.im)]

    @classmethod
    def from_json(cls, pair) -> "GaussRat":
        return cls(rat(pair[0]), rat(pair[1]))


ZERO = GaussRat._raw(0, 0)
ONE = GaussRat._raw(1, 0)
I = GaussRat._raw(0, 1)
_UNITS = (ONE, I, GaussRat._raw(-1, 0), GaussRat._raw(0, -1))


def root_of_unity_quarter(x: Fraction) -> GaussRat:
    """Return exp(2 pi i x) for x in Z/4; anything else is not in Q(i)."""
    x = rat(x)
    if (4 * x).denominator != 1:
        raise ValueError(f"exp(2 pi i * {x}) is not a Gaussian rational")
    return GaussRat.unit(int(4 * x))
