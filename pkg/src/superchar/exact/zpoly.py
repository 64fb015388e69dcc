"""Finite Laurent polynomials in zeta with rational exponents."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .numbers import ZERO, GaussRat, RatLike, rat


class NotDivisible(ArithmeticError):
    """Raised when an exact division would leave an infinite quotient."""


class ZPoly:
    """Map from zeta-exponent to a nonzero Gaussian rational coefficient."""

    __slots__ = ("_c",)

    def __init__(self, terms: dict | Iterable | None = None):
        self._c: dict[Fraction, GaussRat] = {}
        if terms is None:
            return
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            self._add(rat(e), GaussRat.coerce(c))

    def _add(self, e: Fraction, c: GaussRat) -> None:
        v = self._c.get(e, ZERO) + c
        if v.is_zero():
            self._c.pop(e, None)
        else:
            self._c[e] = v

    @classmethod
    def monomial(cls, e: RatLike, c=1) -> "ZPoly":
        return cls({rat(e): c})

    def items(self) -> Iterator[tuple[Fraction, GaussRat]]:
        for e in sorted(self._c, reverse=True):
            yield e, self._c[e]

    def __getitem__(self, e) -> GaussRat:
        return self._c.get(rat(e), ZERO)

    def __len__(self):
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def exponents(self) -> list[Fraction]:
        return sorted(self._c, reverse=True)

    def top(self) -> tuple[Fraction, GaussRat]:
        """Highest zeta-exponent term."""
        if not self._c:
            raise ValueError("zero polynomial has no top term")
        e = max(self._c)
        return e, self._c[e]

    def bottom(self) -> tuple[Fraction, GaussRat]:
        e = min(self._c)
        return e, self._c[e]

    def __add__(self, other: "ZPoly") -> "ZPoly":
        out = ZPoly(self._c)
        for e, c in other._c.items():
            out._add(e, c)
        return out

    def __neg__(self) -> "ZPoly":
        return ZPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __mul__(self, other) -> "ZPoly":
        if not isinstance(other, ZPoly):
            g = GaussRat.coerce(other)
            return ZPoly({e: c * g for e, c in self._c.items()})
        out = ZPoly()
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out._add(e1 + e2, c1 * c2)
        return out

    __rmul__ = __mul__

    def shift(self, d: RatLike) -> "ZPoly":
        d = rat(d)
        return ZPoly({e + d: c for e, c in self._c.items()})

    def reflect(self) -> "ZPoly":
        """zeta -> 1/zeta."""
        return ZPoly({-e: c for e, c in self._c.items()})

    def __eq__(self, other):
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self._c == other._c

    def __repr__(self):
        body = " + ".join(f"({c})z^{e}" for e, c in self.items()) or "0"
        return f"ZPoly[{body}]"

    def eval(self, zeta: complex) -> complex:
        import cmath

        lz = cmath.log(zeta)
        return sum(complex(c) * cmath.exp(float(e) * lz) for e, c in self._c.items())

    def over_geometric(self, r: GaussRat, lo: Fraction | None = None) -> "ZPoly":
        """Divide by (1 - r/zeta), expanding in powers of 1/zeta.

        With ``lo`` given the quotient is expanded down to exponent ``lo``.
        Without it the division must be exact, otherwise NotDivisible is raised.
        """
        r = GaussRat.coerce(r)
        out = ZPoly()
        # each exponent class mod 1 is an independent recurrence
        classes: dict[Fraction, list[Fraction]] = {}
        for e in self._c:
            classes.setdefault(e - (e.numerator // e.denominator), []).append(e)
        for exps in classes.values():
            top, bot = max(exps), min(exps)
            e, carry = top, ZERO
            while True:
                carry = self._c.get(e, ZERO) + r * carry
                if lo is None and e == bot:
                    # exact quotient: the recurrence must close at the bottom row
                    if not carry.is_zero():
                        raise NotDivisible(f"quotient by (1 - ({r})/zeta) is not a polynomial")
                    break
                if lo is not None and e < lo:
                    break
                if not carry.is_zero():
                    out._c[e] = carry
                e -= 1
        return out
