"""Truncated two-variable series in q and zeta with exact coefficients.

Exponents of q and zeta are rationals.  Internally each series keeps a pair of
denominators ``(dq, dz)`` and stores its terms under integer keys
``(q * dq, zeta * dz)``, so the product kernels only touch Python ints.

Two containers are provided:

* ``PolySeries``: every q-order up to ``qmax`` is a finite zeta-polynomial and
  all of it is stored.
* ``WindowSeries``: q-orders may be infinite in the direction of small zeta
  powers.  Only exponents ``>= t_lo`` are stored, and all of them are exact.
"""

from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction
from typing import Iterable

from ..report import VerificationReport
from .numbers import ONE, ZERO, GaussRat, RatLike, lcm, rat, rat_str
from .zpoly import ZPoly


def _den(x: Fraction) -> int:
    return x.denominator


def _build(raw_re: dict, raw_im: dict) -> dict:
    out = {}
    for key, re in raw_re.items():
        im = raw_im.get(key, 0)
        if re or im:
            out[key] = GaussRat._raw(re, im)
    for key, im in raw_im.items():
        if key not in raw_re and im:
            out[key] = GaussRat._raw(0, im)
    return out


def _rescale(t: dict, fq: int, fz: int) -> dict:
    if fq == 1 and fz == 1:
        return t
    return {(q * fq, z * fz): c for (q, z), c in t.items()}


class _Graded:
    __slots__ = ("_t", "_dq", "_dz", "qmax", "_minq")

    def _init(self, t: dict, dq: int, dz: int, qmax: Fraction, minq: Fraction | None):
        self._t, self._dq, self._dz = t, dq, dz
        self.qmax = qmax
        self._minq = minq

    @staticmethod
    def _collect(terms, qmax: Fraction, zlo=None, zhi=None):
        items = []
        for item in (terms.items() if isinstance(terms, dict) else terms):
            if isinstance(terms, dict):
                (q, z), c = item
            else:
                q, z, c = item
            q, z, c = rat(q), rat(z), GaussRat.coerce(c)
            if q > qmax or c.is_zero():
                continue
            if zlo is not None and z < zlo:
                continue
            if zhi is not None and z > zhi:
                continue
            items.append((q, z, c))
        dq = dz = 1
        for q, z, _ in items:
            dq = lcm(dq, q.denominator)
            dz = lcm(dz, z.denominator)
        t: dict = {}
        for q, z, c in items:
            key = (int(q * dq), int(z * dz))
            v = t.get(key, ZERO) + c
            if v.is_zero():
                t.pop(key, None)
            else:
                t[key] = v
        return t, dq, dz

    # -- read access -------------------------------------------------------

    def terms(self) -> list[tuple[Fraction, Fraction, GaussRat]]:
        """All stored terms as (q, zeta, coefficient), sorted by q then zeta."""
        dq, dz = self._dq, self._dz
        return [(Fraction(q, dq), Fraction(z, dz), self._t[(q, z)]) for q, z in sorted(self._t)]

    def __len__(self) -> int:
        return len(self._t)

    def coeff(self, q: RatLike, z: RatLike = 0) -> GaussRat:
        q, z = rat(q), rat(z)
        if q > self.qmax:
            raise ValueError(f"q^{q} is beyond the truncation order {self.qmax}")
        qi, zi = q * self._dq, z * self._dz
        if qi.denominator != 1 or zi.denominator != 1:
            return ZERO
        return self._t.get((int(qi), int(zi)), ZERO)

    def zpoly(self, q: RatLike) -> ZPoly:
        """Coefficient of q^q as a zeta-polynomial (restricted to the stored part)."""
        q = rat(q)
        qi = q * self._dq
        if qi.denominator != 1:
            return ZPoly()
        qi = int(qi)
        return ZPoly({Fraction(z, self._dz): c for (a, z), c in self._t.items() if a == qi})

    def orders(self) -> list[Fraction]:
        return sorted({Fraction(q, self._dq) for q, _ in self._t})

    @property
    def min_q(self) -> Fraction:
        """Lower bound for the q-support (the truncation order if nothing is stored)."""
        if self._minq is not None:
            return self._minq
        if not self._t:
            return self.qmax
        return Fraction(min(q for q, _ in self._t), self._dq)

    def max_z(self) -> Fraction | None:
        if not self._t:
            return None
        return Fraction(max(z for _, z in self._t), self._dz)

    def min_z(self) -> Fraction | None:
        if not self._t:
            return None
        return Fraction(min(z for _, z in self._t), self._dz)

    def is_scalar(self) -> bool:
        return all(z == 0 for _, z in self._t)

    def zeta_denominator(self) -> int:
        """Least common denominator of the zeta-exponents present."""
        d = 1
        for _, z in self._t:
            d = lcm(d, Fraction(z, self._dz).denominator)
        return d

    def check_zeta_denominator(self, bound: int) -> None:
        d = self.zeta_denominator()
        if bound % d:
            raise AssertionError(f"zeta exponents have denominator {d}, not dividing {bound}")

    def eval(self, tau: complex, z: complex) -> complex:
        """Numerically sum the stored terms at (tau, z)."""
        tot = 0j
        dq, dz = self._dq, self._dz
        for (q, y), c in self._t.items():
            tot += complex(c) * cmath.exp(2j * math.pi * (q / dq * tau + y / dz * z))
        return tot

    def _aligned(self, other: "_Graded"):
        dq, dz = lcm(self._dq, other._dq), lcm(self._dz, other._dz)
        a = _rescale(self._t, dq // self._dq, dz // self._dz)
        b = _rescale(other._t, dq // other._dq, dz // other._dz)
        return a, b, dq, dz

    def _json_terms(self):
        return [[rat_str(q), rat_str(z), rat_str(c.re), rat_str(c.im)] for q, z, c in self.terms()]


class PolySeries(_Graded):
    """Truncated series whose q-coefficients are finite zeta-polynomials.

    All terms with q-exponent <= ``qmax`` are stored exactly.
    """

    __slots__ = ()

    def __init__(self, terms: dict | Iterable = (), qmax: RatLike = 0):
        qmax = rat(qmax)
        t, dq, dz = self._collect(terms, qmax)
        self._init(t, dq, dz, qmax, None)

    @classmethod
    def _make(cls, t, dq, dz, qmax):
        obj = object.__new__(cls)
        obj._init(t, dq, dz, rat(qmax), None)
        return obj

    @classmethod
    def zero(cls, qmax: RatLike) -> "PolySeries":
        return cls._make({}, 1, 1, qmax)

    @classmethod
    def monomial(cls, q: RatLike, z: RatLike, c=1, qmax: RatLike = 0) -> "PolySeries":
        return cls([(q, z, c)], qmax)

    @classmethod
    def one(cls, qmax: RatLike) -> "PolySeries":
        return cls.monomial(0, 0, 1, qmax)

    def __repr__(self):
        return f"PolySeries({len(self._t)} terms, qmax={self.qmax})"

    # -- ring operations ---------------------------------------------------

    def _addsub(self, other: "PolySeries", sign: int) -> "PolySeries":
        if isinstance(other, WindowSeries):
            return NotImplemented
        a, b, dq, dz = self._aligned(other)
        qmax = min(self.qmax, other.qmax)
        lim = qmax * dq
        out = {k: v for k, v in a.items() if k[0] <= lim}
        for k, v in b.items():
            if k[0] > lim:
                continue
            w = out.get(k, ZERO) + (v if sign > 0 else -v)
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return PolySeries._make(out, dq, dz, qmax)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __neg__(self):
        return PolySeries._make({k: -v for k, v in self._t.items()}, self._dq, self._dz, self.qmax)

    def scale(self, c) -> "PolySeries":
        c = GaussRat.coerce(c)
        if c.is_zero():
            return PolySeries.zero(self.qmax)
        return PolySeries._make({k: v * c for k, v in self._t.items()}, self._dq, self._dz, self.qmax)

    def __mul__(self, other):
        if isinstance(other, (PolySeries, WindowSeries)):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PolySeries):
            return NotImplemented
        return ps_equal(self, other).passed and self.qmax == other.qmax

    __hash__ = None

    def shift(self, dq_exp: RatLike = 0, dz_exp: RatLike = 0) -> "PolySeries":
        """Multiply by q^dq_exp zeta^dz_exp; the truncation order moves with q."""
        dq_exp, dz_exp = rat(dq_exp), rat(dz_exp)
        return PolySeries._make(*self._shifted(dq_exp, dz_exp), self.qmax + dq_exp)

    def _shifted(self, sq: Fraction, sz: Fraction):
        dq, dz = lcm(self._dq, sq.denominator), lcm(self._dz, sz.denominator)
        t = _rescale(self._t, dq // self._dq, dz // self._dz)
        oq, oz = int(sq * dq), int(sz * dz)
        return {(q + oq, z + oz): c for (q, z), c in t.items()}, dq, dz

    def reflect(self) -> "PolySeries":
        """zeta -> 1/zeta."""
        return PolySeries._make({(q, -z): c for (q, z), c in self._t.items()}, self._dq, self._dz, self.qmax)

    def truncate(self, qmax: RatLike) -> "PolySeries":
        qmax = rat(qmax)
        if qmax > self.qmax:
            raise ValueError(f"cannot extend a series known to {self.qmax} up to {qmax}")
        lim = qmax * self._dq
        return PolySeries._make({k: v for k, v in self._t.items() if k[0] <= lim},
                                self._dq, self._dz, qmax)

    def map_zeta(self, factor: int) -> "PolySeries":
        """zeta -> zeta**factor for a nonzero integer factor."""
        return PolySeries._make({(q, z * factor): c for (q, z), c in self._t.items()},
                                self._dq, self._dz, self.qmax)

    def leading(self) -> tuple[Fraction, Fraction, GaussRat]:
        """Lowest q-order, highest zeta-exponent term."""
        if not self._t:
            raise ValueError("zero series has no leading term")
        q = min(k[0] for k in self._t)
        z = max(k[1] for k in self._t if k[0] == q)
        return Fraction(q, self._dq), Fraction(z, self._dz), self._t[(q, z)]

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"kind": "poly", "qmax": rat_str(self.qmax), "terms": self._json_terms()}

    @classmethod
    def from_json(cls, data: dict | str) -> "PolySeries":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([(q, z, GaussRat(re, im)) for q, z, re, im in data["terms"]], data["qmax"])


class WindowSeries(_Graded):
    """Truncated series exact on a zeta-window ``[t_lo, t_hi]``.

    ``t_hi`` of None means the window is unbounded above.  ``min_q`` is a
    declared lower bound for the q-support of the full (unstored) series.
    """

    __slots__ = ("t_lo", "t_hi")

    def __init__(self, terms: dict | Iterable = (), qmax: RatLike = 0, t_lo: RatLike = 0,
                 t_hi: RatLike | None = None, min_q: RatLike | None = None):
        qmax, t_lo = rat(qmax), rat(t_lo)
        t_hi = None if t_hi is None else rat(t_hi)
        t, dq, dz = self._collect(terms, qmax, t_lo, t_hi)
        self._init(t, dq, dz, qmax, None if min_q is None else rat(min_q))
        self.t_lo, self.t_hi = t_lo, t_hi

    @classmethod
    def _make(cls, t, dq, dz, qmax, t_lo, t_hi, min_q):
        obj = object.__new__(cls)
        obj._init(t, dq, dz, rat(qmax), min_q)
        obj.t_lo, obj.t_hi = t_lo, t_hi
        return obj

    @classmethod
    def from_poly(cls, p: PolySeries, t_lo: RatLike, t_hi: RatLike | None = None) -> "WindowSeries":
        t_lo = rat(t_lo)
        t_hi = None if t_hi is None else rat(t_hi)
        lo, hi = t_lo * p._dz, None if t_hi is None else t_hi * p._dz
        t = {k: v for k, v in p._t.items() if k[1] >= lo and (hi is None or k[1] <= hi)}
        return cls._make(t, p._dq, p._dz, p.qmax, t_lo, t_hi, p.min_q)

    @property
    def window(self) -> tuple[Fraction, Fraction | None]:
        return self.t_lo, self.t_hi

    def __repr__(self):
        return f"WindowSeries({len(self._t)} terms, qmax={self.qmax}, window=[{self.t_lo}, {self.t_hi}])"

    def _upper(self) -> Fraction:
        # an upper bound for the zeta-support, valid because everything above t_lo is stored
        if self.t_hi is not None:
            raise ValueError("upper support unknown for a window bounded above")
        mz = self.max_z()
        return self.t_lo if mz is None else max(mz, self.t_lo)

    def __add__(self, other):
        return _window_addsub(self, other, 1)

    def __sub__(self, other):
        return _window_addsub(self, other, -1)

    def __neg__(self):
        return WindowSeries._make({k: -v for k, v in self._t.items()}, self._dq, self._dz,
                                  self.qmax, self.t_lo, self.t_hi, self._minq)

    def scale(self, c) -> "WindowSeries":
        c = GaussRat.coerce(c)
        return WindowSeries._make({k: v * c for k, v in self._t.items() if not (v * c).is_zero()},
                                  self._dq, self._dz, self.qmax, self.t_lo, self.t_hi, self._minq)

    def __mul__(self, other):
        if isinstance(other, (PolySeries, WindowSeries)):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, dq_exp: RatLike = 0, dz_exp: RatLike = 0) -> "WindowSeries":
        dq_exp, dz_exp = rat(dq_exp), rat(dz_exp)
        t, dq, dz = PolySeries._shifted(self, dq_exp, dz_exp)
        return WindowSeries._make(t, dq, dz, self.qmax + dq_exp, self.t_lo + dz_exp,
                                  None if self.t_hi is None else self.t_hi + dz_exp,
                                  None if self._minq is None else self._minq + dq_exp)

    def restrict(self, lo: RatLike, hi: RatLike | None = None) -> "WindowSeries":
        lo = max(rat(lo), self.t_lo)
        hi = self.t_hi if hi is None else (rat(hi) if self.t_hi is None else min(rat(hi), self.t_hi))
        zl, zh = lo * self._dz, None if hi is None else hi * self._dz
        t = {k: v for k, v in self._t.items() if k[1] >= zl and (zh is None or k[1] <= zh)}
        return WindowSeries._make(t, self._dq, self._dz, self.qmax, lo, hi, self._minq)

    def truncate(self, qmax: RatLike) -> "WindowSeries":
        qmax = rat(qmax)
        if qmax > self.qmax:
            raise ValueError(f"cannot extend a series known to {self.qmax} up to {qmax}")
        lim = qmax * self._dq
        return WindowSeries._make({k: v for k, v in self._t.items() if k[0] <= lim}, self._dq,
                                  self._dz, qmax, self.t_lo, self.t_hi, self._minq)

    def string(self, n: RatLike) -> PolySeries:
        """The scalar q-series multiplying zeta^n."""
        n = rat(n)
        if n < self.t_lo or (self.t_hi is not None and n > self.t_hi):
            raise ValueError(f"zeta^{n} lies outside the trusted window [{self.t_lo}, {self.t_hi}]")
        zi = n * self._dz
        if zi.denominator != 1:
            return PolySeries.zero(self.qmax)
        zi = int(zi)
        return PolySeries._make({(q, 0): c for (q, z), c in self._t.items() if z == zi},
                                self._dq, 1, self.qmax)

    def leading(self) -> tuple[Fraction, Fraction, GaussRat]:
        if not self._t:
            raise ValueError("no stored terms")
        q = min(k[0] for k in self._t)
        z = max(k[1] for k in self._t if k[0] == q)
        return Fraction(q, self._dq), Fraction(z, self._dz), self._t[(q, z)]

    def to_json(self) -> dict:
        return {"kind": "window", "qmax": rat_str(self.qmax),
                "window": [rat_str(self.t_lo), None if self.t_hi is None else rat_str(self.t_hi)],
                "min_q": rat_str(self.min_q), "terms": self._json_terms()}

    @classmethod
    def from_json(cls, data: dict | str) -> "WindowSeries":
        if isinstance(data, str):
            data = json.loads(data)
        lo, hi = data["window"]
        return cls([(q, z, GaussRat(re, im)) for q, z, re, im in data["terms"]], data["qmax"],
                   lo, hi, data.get("min_q"))


def series_from_json(data: dict | str):
    if isinstance(data, str):
        data = json.loads(data)
    return (WindowSeries if data.get("kind") == "window" else PolySeries).from_json(data)


def _window_addsub(a: WindowSeries, b, sign: int) -> WindowSeries:
    if isinstance(b, PolySeries):
        b = WindowSeries.from_poly(b, a.t_lo, a.t_hi)
    lo = max(a.t_lo, b.t_lo)
    his = [h for h in (a.t_hi, b.t_hi) if h is not None]
    hi = min(his) if his else None
    a, b = a.restrict(lo, hi), b.restrict(lo, hi)
    ta, tb, dq, dz = a._aligned(b)
    qmax = min(a.qmax, b.qmax)
    lim = qmax * dq
    out = {k: v for k, v in ta.items() if k[0] <= lim}
    for k, v in tb.items():
        if k[0] > lim:
            continue
        w = out.get(k, ZERO) + (v if sign > 0 else -v)
        if w.is_zero():
            out.pop(k, None)
        else:
            out[k] = w
    return WindowSeries._make(out, dq, dz, qmax, lo, hi, min(a.min_q, b.min_q))


def _convolve(ta: dict, tb: dict, qlim: int, zlo: int | None, zhi: int | None):
    """Exact product of two integer-keyed term maps, pruned to q <= qlim and zlo <= z <= zhi."""
    rows: dict[int, list] = {}
    for (q, z), c in tb.items():
        rows.setdefault(q, []).append((z, c.re, c.im))
    brows = []
    for q in sorted(rows):
        row = sorted(rows[q], reverse=True)
        brows.append((q, row))
    if not brows:
        return {}
    bq0 = brows[0][0]
    acc_re: dict = {}
    acc_im: dict = {}
    get_re, get_im = acc_re.get, acc_im.get
    for (qa, za), ca in ta.items():
        lim = qlim - qa
        if bq0 > lim:
            continue
        ar, ai = ca.re, ca.im
        zl = None if zlo is None else zlo - za
        zh = None if zhi is None else zhi - za
        for qb, row in brows:
            if qb > lim:
                break
            q = qa + qb
            for zb, br, bi in row:
                if zl is not None and zb < zl:
                    break
                if zh is not None and zb > zh:
                    continue
                key = (q, za + zb)
                if ai:
                    if bi:
                        acc_re[key] = get_re(key, 0) + ar * br - ai * bi
                        acc_im[key] = get_im(key, 0) + ar * bi + ai * br
                    else:
                        acc_re[key] = get_re(key, 0) + ar * br
                        acc_im[key] = get_im(key, 0) + ai * br
                elif bi:
                    acc_re[key] = get_re(key, 0) + ar * br
                    acc_im[key] = get_im(key, 0) + ar * bi
                else:
                    acc_re[key] = get_re(key, 0) + ar * br
    return _build(acc_re, acc_im)


def product_order(a: _Graded, b: _Graded) -> Fraction:
    """Order up to which a product is complete: min(N_a + min_b, N_b + min_a)."""
    return min(a.qmax + b.min_q, b.qmax + a.min_q)


def multiply(a: _Graded, b: _Graded, qmax: RatLike | None = None):
    """Exact product, truncated to the order that both factors determine.

    A poly times a poly is a poly.  Any product involving a window is a
    window whose lower edge is raised by the upper zeta-support of the other
    factor.
    """
    order = product_order(a, b)
    if qmax is not None:
        qmax = rat(qmax)
        if qmax > order:
            raise ValueError(f"product only known to q^{order}, requested {qmax}")
        order = qmax
    ta, tb, dq, dz = a._aligned(b)
    qlim = math.floor(order * dq)
    if isinstance(a, PolySeries) and isinstance(b, PolySeries):
        return PolySeries._make(_convolve(ta, tb, qlim, None, None), dq, dz, order)
    los = []
    if isinstance(a, WindowSeries):
        if isinstance(b, WindowSeries):
            los.append(a.t_lo + b._upper())
        else:
            mz = b.max_z()
            los.append(a.t_lo + (mz if mz is not None else 0))
    if isinstance(b, WindowSeries):
        if isinstance(a, WindowSeries):
            los.append(b.t_lo + a._upper())
        else:
            mz = a.max_z()
            los.append(b.t_lo + (mz if mz is not None else 0))
    t_lo = max(los)
    his = []
    for w, other in ((a, b), (b, a)):
        if isinstance(w, WindowSeries) and w.t_hi is not None:
            if isinstance(other, WindowSeries):
                raise ValueError("product of a bounded-above window with a window trusts nothing")
            mz = other.min_z()
            his.append(w.t_hi + (mz if mz is not None else 0))
    t_hi = min(his) if his else None
    zlo = math.ceil(t_lo * dz)
    zhi = None if t_hi is None else math.floor(t_hi * dz)
    t = _convolve(ta, tb, qlim, zlo, zhi)
    return WindowSeries._make(t, dq, dz, order, t_lo, t_hi, a.min_q + b.min_q)


def scalar_inverse(s: PolySeries) -> PolySeries:
    """Inverse of a zeta-free series with an invertible lowest term.

    If s = c q^r (1 + ...) is known to order N then 1/s is known to N - 2r.
    """
    if not s.is_scalar():
        raise ValueError("scalar_inverse needs a series without zeta dependence")
    if not s._t:
        raise ZeroDivisionError("series vanishes to its truncation order")
    q0 = min(q for q, _ in s._t)
    c0 = s._t[(q0, 0)]
    r = Fraction(q0, s._dq)
    # u = s / (c0 q^r) on an integer grid k with step 1/dq
    step = 0
    for q, _ in s._t:
        step = math.gcd(step, q - q0)
    step = step or 1
    dq = s._dq
    inv0 = c0.inverse()
    u = sorted(((q - q0) // step, v * inv0) for (q, _), v in s._t.items() if q != q0)
    nmax = math.floor((s.qmax - r) * dq / step)
    t = [ZERO] * (nmax + 1)
    t[0] = ONE
    for n in range(1, nmax + 1):
        acc = ZERO
        for k, uk in u:
            if k > n:
                break
            tk = t[n - k]
            if not tk.is_zero():
                acc = acc + uk * tk
        t[n] = -acc
    out = {}
    for n, v in enumerate(t):
        if not v.is_zero():
            out[(n * step - q0, 0)] = v * inv0
    return PolySeries._make(out, dq, 1, s.qmax - 2 * r)


def ps_equal(a: _Graded, b: _Graded, order: RatLike | None = None,
             window: tuple | None = None, check: str = "series-equal") -> VerificationReport:
    """Compare two series on their common range; report the first differing term."""
    top = min(a.qmax, b.qmax)
    if order is not None:
        order = rat(order)
        if order > top:
            return VerificationReport(check, False, f"order {order} exceeds known order {top}")
        top = order
    lo, hi = None, None
    for s in (a, b):
        if isinstance(s, WindowSeries):
            lo = s.t_lo if lo is None else max(lo, s.t_lo)
            if s.t_hi is not None:
                hi = s.t_hi if hi is None else min(hi, s.t_hi)
    if window is not None:
        wl, wh = window
        if wl is not None:
            wl = rat(wl)
            if lo is not None and wl < lo:
                return VerificationReport(check, False, f"window {wl} below trusted edge {lo}")
            lo = wl
        if wh is not None:
            wh = rat(wh)
            if hi is not None and wh > hi:
                return VerificationReport(check, False, f"window {wh} above trusted edge {hi}")
            hi = wh
    ta, tb, dq, dz = a._aligned(b)

    def ok(key):
        q, z = key
        if q > top * dq:
            return False
        if lo is not None and z < lo * dz:
            return False
        return hi is None or z <= hi * dz

    keys = sorted(k for k in set(ta) | set(tb) if ok(k))
    compared = 0
    for k in keys:
        x, y = ta.get(k, ZERO), tb.get(k, ZERO)
        compared += 1
        if x != y:
            q, z = Fraction(k[0], dq), Fraction(k[1], dz)
            return VerificationReport(
                check, False, f"coefficient of q^{q} zeta^{z} differs: {x} != {y}",
                {"q": rat_str(q), "zeta": rat_str(z), "lhs": str(x), "rhs": str(y)},
                {"order": rat_str(top)})
    return VerificationReport(check, True, f"{compared} coefficients agree to q^{top}",
                              None, {"order": rat_str(top)})
