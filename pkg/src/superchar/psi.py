"""Mock-theta type functions Psi on the slices (z, -z) and (-z, z).

For a spec with level data [M, m, s; eps] and indices j, k in eps' + Z,

    Psi_i(tau, z1, z2) = q^{(m/M) j k} e^{(2 pi i m/M)(k z1 + j z2)} Phi_i(M tau, z1 + j tau + eps, z2 + k tau - eps)

with the single-sum functions

    Phi_1^{[m,s]}(tau, z1, z2) = sum_l e^{2 pi i (m l (z1 + z2) + s z1)} q^{m l^2 + s l} / (1 - e^{2 pi i z1} q^l)
    Phi_2^{[m,s]}(tau, z1, z2) = sum_l e^{-2 pi i (m l (z1 + z2) + s z2)} q^{m l^2 + s l} / (1 - e^{-2 pi i z2} q^l)

and Psi = Psi_1 - Psi_2.  On a slice every geometric factor is 1/(1 - X q^a)
with X = e^{2 pi i (u + eps)}, u = +-z.  It is expanded in q^a when a != 0; when
a = 0 the factor is expanded in powers of 1/zeta, matching the domain |zeta| > 1
in which the Kac-Peterson kernel is expanded.  Those a = 0 rows become
``Tail`` objects: one q-order carrying an infinite geometric zeta-series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact import (ZERO, GaussRat, NotDivisible, PolySeries, WindowSeries, ZPoly, multiply,
                    product_order, rat, root_of_unity_quarter)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PsiSpec:
    M: int
    m: Fraction
    s: Fraction
    eps: Fraction
    eps_p: Fraction
    j: Fraction
    k: Fraction
    branch: str = "diff"
    orientation: int = 1

    def __post_init__(self):
        for name in ("m", "s", "eps", "eps_p", "j", "k"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        M, m = self.M, self.m
        if not isinstance(M, int) or M < 1:
            raise ValueError("M must be a positive integer")
        if m <= 0 or (2 * m).denominator != 1:
            raise ValueError("m must be a positive element of Z/2")
        # for integral m the level condition is gcd(M, m) = 1, for half-odd m it is gcd(M, 2m) = 1
        if gcd(M, int(2 * m) if m.denominator == 2 else int(m)) != 1:
            raise ValueError(f"M = {M} and m = {m} are not coprime")
        if (2 * self.s).denominator != 1:
            raise ValueError("s must lie in Z/2")
        if self.eps not in (0, HALF) or self.eps_p not in (0, HALF):
            raise ValueError("eps and eps' must be 0 or 1/2")
        for name in ("j", "k"):
            v = getattr(self, name)
            if (v - self.eps_p).denominator != 1:
                raise ValueError(f"{name} = {v} is not in eps' + Z")
            if not 0 <= v <= M:
                raise ValueError(f"{name} = {v} outside [0, M]")
        if self.branch not in ("1", "2", "diff"):
            raise ValueError("branch must be '1', '2' or 'diff'")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 for (z, -z) or -1 for (-z, z)")

    def with_(self, **kw) -> "PsiSpec":
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d.update(kw)
        return PsiSpec(**d)


@dataclass(frozen=True)
class Tail:
    """coeff * sum_{t >= 0} ratio^t zeta^{top - t} q^{q}."""

    q: Fraction
    top: Fraction
    coeff: GaussRat
    ratio: int

    def as_rational(self) -> ZPoly:
        return ZPoly.monomial(self.top, self.coeff)

    def expand(self, lo: Fraction) -> list[tuple[Fraction, Fraction, GaussRat]]:
        out, e, c = [], self.top, self.coeff
        while e >= lo:
            out.append((self.q, e, c))
            e -= 1
            c = c * self.ratio
        return out


@dataclass
class PsiSeries:
    """Regular part (a PolySeries) plus exact geometric tails."""

    regular: PolySeries
    tails: list[Tail] = field(default_factory=list)

    @property
    def qmax(self) -> Fraction:
        return self.regular.qmax

    @property
    def min_q(self) -> Fraction:
        qs = [self.regular.min_q] + [t.q for t in self.tails]
        return min(qs)

    def is_poly(self) -> bool:
        return not self.tails

    def as_poly(self) -> PolySeries:
        if self.tails:
            raise ValueError("series has infinite zeta-tails; use to_window or times_poly")
        return self.regular

    def max_z(self) -> Fraction | None:
        vals = [t.top for t in self.tails]
        mz = self.regular.max_z()
        if mz is not None:
            vals.append(mz)
        return max(vals) if vals else None

    def to_window(self, lo) -> WindowSeries:
        lo = rat(lo)
        terms = [(q, z, c) for q, z, c in self.regular.terms() if z >= lo]
        for t in self.tails:
            terms.extend(t.expand(lo))
        return WindowSeries(terms, self.qmax, lo, min_q=self.min_q)

    def order_coefficient(self, q) -> tuple[ZPoly, list[Tail]]:
        q = rat(q)
        return self.regular.zpoly(q), [t for t in self.tails if t.q == q]

    def times_poly(self, p: PolySeries) -> PolySeries:
        """Exact product with a poly series; each tail must be cancelled by p."""
        base = multiply(self.regular, p)
        order = min(base.qmax, product_order(self.regular, p),
                    min(self.qmax + p.min_q, p.qmax + self.min_q))
        terms = [(q, z, c) for q, z, c in base.truncate(order).terms()]
        for t in self.tails:
            for x in p.orders():
                if t.q + x > order:
                    continue
                num = p.zpoly(x) * ZPoly.monomial(t.top, t.coeff)
                try:
                    quo = num.over_geometric(GaussRat(t.ratio))
                except NotDivisible as exc:
                    raise NotDivisible(f"tail at q^{t.q} not cancelled by q^{x} coefficient") from exc
                terms.extend((t.q + x, e, c) for e, c in quo.items())
        return PolySeries(terms, order)


def _phase(x: Fraction) -> GaussRat:
    return root_of_unity_quarter(x)


def _branch_rows(spec: PsiSpec, b: int):
    """Per-branch data: a(l), Q(l) as callables and the overall zeta prefactor."""
    M, m, j, k = spec.M, spec.m, spec.j, spec.k
    c = m / M
    if b == 1:
        def a(l): return M * l + j
        def Q(l): return c * (M * l + j) * (M * l + k)
    else:
        def a(l): return M * l - k
        def Q(l): return c * (M * l - j) * (M * l - k)
    return a, Q


def _row_min(spec: PsiSpec, al: Fraction, Ql: Fraction) -> Fraction:
    if al > 0:
        return Ql + spec.s * al
    if al < 0:
        return Ql + (spec.s - 1) * al
    return Ql


def _vertex_reach(spec: PsiSpec) -> int:
    # l -> Q(l) + c a(l) has its vertex at -(+-j +- k)/(2M) - c/(2m); bound |l| there
    v = (spec.j + spec.k) / (2 * spec.M) + (abs(spec.s) + 1) / (2 * spec.m)
    return math.ceil(v) + 1


def _l_range(spec: PsiSpec, b: int, qmax: Fraction) -> list[int]:
    """All l whose row reaches below qmax; stops two indices past the last hit beyond the vertex."""
    a, Q = _branch_rows(spec, b)
    vert = _vertex_reach(spec)
    out = []
    for direction in (1, -1):
        l = 0 if direction == 1 else -1
        misses = 0
        while True:
            if _row_min(spec, a(l), Q(l)) <= qmax:
                out.append(l)
                misses = 0
            else:
                misses += 1
            if abs(l) > vert and misses > 2:
                break
            l += direction
    return sorted(out)


def _iter_branch(spec: PsiSpec, b: int, qmax: Fraction, bsign: int):
    """Yield ('term', q, z, c) and ('tail', Tail) items for one branch."""
    a, Q = _branch_rows(spec, b)
    sigma, s, eps = spec.orientation, spec.s, spec.eps
    pre = sigma * spec.m / spec.M * (spec.k - spec.j)
    ls = _l_range(spec, b, qmax)
    for l in ls:
        al, Ql = a(l), Q(l)
        if al == 0:
            if Ql > qmax:
                continue
            if sigma == 1:
                n0, sgn, step = -1, -1, -1
            else:
                n0, sgn, step = 0, 1, 1
            coeff = _phase((n0 + s) * eps) * (bsign * sgn)
            top = sigma * (n0 + s) + pre
            ratio = _phase(step * eps)
            yield ("tail", Tail(Ql, top, coeff, int(ratio.re)))
            continue
        if al > 0:
            # n >= 0 with Ql + (n + s) al <= qmax
            nmax = math.floor((qmax - Ql) / al - s)
            ns, sgn = range(0, nmax + 1), 1
        else:
            # n <= -1 with Ql + (n + s) al <= qmax, i.e. n >= (qmax - Ql)/al - s
            nmin = math.ceil((qmax - Ql) / al - s)
            ns, sgn = range(nmin, 0), -1
        for n in ns:
            e = Ql + (n + s) * al
            yield ("term", e, sigma * (n + s) + pre, _phase((n + s) * eps) * (bsign * sgn))


def _branches(spec: PsiSpec):
    if spec.branch == "1":
        return [(1, 1)]
    if spec.branch == "2":
        return [(2, 1)]
    return [(1, 1), (2, -1)]


def psi_series(spec: PsiSpec, qmax) -> PsiSeries:
    """Exact expansion of Psi to q^qmax on the slice given by spec.orientation."""
    qmax = rat(qmax)
    terms, tails = [], []
    for b, bsign in _branches(spec):
        for item in _iter_branch(spec, b, qmax, bsign):
            if item[0] == "term":
                terms.append(item[1:])
            else:
                tails.append(item[1])
    tails = _merge_tails(tails)
    return PsiSeries(PolySeries(terms, qmax), tails)


def _merge_tails(tails: list[Tail]) -> list[Tail]:
    groups: dict = {}
    for t in tails:
        key = (t.q, t.top, t.ratio)
        groups[key] = groups.get(key, ZERO) + t.coeff
    return [Tail(q, top, c, r) for (q, top, r), c in sorted(groups.items(), key=lambda kv: kv[0])
            if not c.is_zero()]


def psi_min_q(spec: PsiSpec) -> Fraction:
    """A lower bound for the q-support of Psi (exact for a single branch)."""
    best = None
    for b, _ in _branches(spec):
        a, Q = _branch_rows(spec, b)
        reach = _vertex_reach(spec) + 2
        for l in range(-reach, reach + 1):
            v = _row_min(spec, a(l), Q(l))
            best = v if best is None or v < best else best
    return best


# -- leading terms as stated for the character families -------------------------


@dataclass(frozen=True)
class LeadingTerm:
    """coeff * zeta^zeta q^q, divided by (1 - pole/zeta) when pole is set."""

    q: Fraction
    zeta: Fraction
    coeff: GaussRat
    pole: int | None = None

    def monomial(self) -> tuple[Fraction, Fraction, GaussRat]:
        return self.q, self.zeta, self.coeff

    def expand(self, lo) -> ZPoly:
        p = ZPoly.monomial(self.zeta, self.coeff)
        return p if self.pole is None else p.over_geometric(GaussRat(self.pole), rat(lo))


def psi_family(spec: PsiSpec) -> tuple[str, int, int, int]:
    """Identify (family, m2, k1, k2) of a character Psi spec."""
    if spec.s.denominator != 1 or spec.s > 0:
        raise ValueError("character Psi specs have s = -m2 with m2 a non-negative integer")
    m2 = int(-spec.s)
    j, k = spec.j, spec.k
    if spec.eps_p == HALF:
        fam = "I" if spec.orientation == 1 else "III"
        k1, k2 = j - HALF, k - j
    elif spec.orientation == -1:
        fam = "I-tw"
        k1, k2 = j - 1, k - j + 1
    else:
        fam = "III-tw"
        k1, k2 = j, k - j - 1
    if k1.denominator != 1 or k2.denominator != 1 or k1 < 0 or k2 < 0:
        raise ValueError("spec does not belong to a character family")
    return fam, m2, int(k1), int(k2)


def psi_leading(spec: PsiSpec, variant: str = "stated") -> LeadingTerm:
    """Leading term of a character Psi as stated by the leading-term lemma.

    The stated coefficient (-1)^{m2} is the eps = 1/2 value; for eps = 0 the
    same computation gives 1, and the degenerate pole is (1 - 1/zeta).

    With ``variant="corrected"`` the degenerate factor is 1/(1 - pole * zeta),
    i.e. zeta^{-1}/(1 - pole/zeta) up to sign, and the twisted-I pole at
    (k1, k2) = (0, 0) only reaches the lowest order when m2 = 0.
    """
    stated = _psi_leading_stated(spec)
    if variant == "stated" or stated.pole is None:
        return stated
    if variant != "corrected":
        raise ValueError(f"unknown variant {variant!r}")
    fam, m2, _, _ = psi_family(spec)
    if fam == "I-tw" and m2 > 0:
        return LeadingTerm(stated.q, stated.zeta, stated.coeff)
    return LeadingTerm(stated.q, stated.zeta - 1, stated.coeff * (-stated.pole), stated.pole)


def _psi_leading_stated(spec: PsiSpec) -> LeadingTerm:
    fam, m2, k1, k2 = psi_family(spec)
    c = spec.m / spec.M
    coeff = _phase(-m2 * spec.eps)
    pole_ratio = int(_phase(spec.eps).re)
    if fam == "I":
        return LeadingTerm(c * (k1 + HALF) * (k1 + k2 + HALF) - m2 * (k1 + HALF), c * k2 - m2, coeff)
    if fam == "III":
        return LeadingTerm(c * (k1 + HALF) * (k1 + k2 + HALF) - m2 * (k1 + HALF), -c * k2 + m2, coeff)
    if fam == "I-tw":
        pole = pole_ratio if (k1, k2) == (0, 0) else None
        return LeadingTerm(c * (k1 + 1) * (k1 + k2) - m2 * (k1 + 1), -c * (k2 - 1) + m2, coeff, pole)
    pole = pole_ratio if k1 == 0 else None
    return LeadingTerm(c * k1 * (k1 + k2 + 1) - m2 * k1, c * (k2 + 1) - m2, coeff, pole)


def series_leading(ps: PsiSeries) -> LeadingTerm:
    """Actual leading monomial: lowest q-order, highest zeta-exponent."""
    q = ps.min_q
    poly, tails = ps.order_coefficient(q)
    cands = dict(poly.items())
    for t in tails:
        cands[t.top] = cands.get(t.top, ZERO) + t.coeff
    # a tail's top may cancel against a regular term; fall back to expansion
    lo = min(cands) - 4 if cands else Fraction(0)
    full = poly
    for t in tails:
        full = full + ZPoly({e: c for _, e, c in t.expand(lo)})
    if full.is_zero():
        raise ValueError("lowest order cancels")
    e, c = full.top()
    return LeadingTerm(q, e, c)


# -- numeric evaluation --------------------------------------------------------


def _e(x: complex) -> complex:
    return cmath.exp(2j * math.pi * x)


def _phi_sum(i: int, m: Fraction, s: Fraction, tau: complex, z1: complex, z2: complex,
             tol: float = 1e-17) -> tuple[complex, float]:
    m, s = float(m), float(s)
    logq = 2j * math.pi * tau

    def term(l: int) -> complex:
        # everything in log space so that |q^l| never overflows
        lw = logq * (m * l * l + s * l)
        if i == 1:
            lx = 2j * math.pi * z1 + logq * l
            ln = 2j * math.pi * (m * l * (z1 + z2) + s * z1)
        else:
            lx = -2j * math.pi * z2 + logq * l
            ln = -2j * math.pi * (m * l * (z1 + z2) + s * z2)
        if lx.real > 0:
            # 1/(1 - X) = -X^{-1}/(1 - X^{-1})
            inv = cmath.exp(-lx)
            den = 1 - inv
            if abs(den) < 1e-12:
                raise ValueError("evaluation point sits on a pole of Psi")
            lt = lw + ln - lx
            return -cmath.exp(lt) / den if lt.real > -745 else 0j
        den = 1 - cmath.exp(lx)
        if abs(den) < 1e-12:
            raise ValueError("evaluation point sits on a pole of Psi")
        lt = lw + ln
        return cmath.exp(lt) / den if lt.real > -745 else 0j

    total = term(0)
    mags = abs(total)
    err = 0.0
    for direction in (1, -1):
        l, prev = direction, None
        while True:
            t = term(l)
            total += t
            mags += abs(t)
            a = abs(t)
            if prev is not None and a <= prev and a < tol * max(1.0, mags) and abs(l) > 3:
                rho = a / prev if prev else 0.0
                err += a * rho / (1 - rho) if rho < 1 else a
                break
            prev = a
            l += direction
            if abs(l) > 10000:
                raise RuntimeError("Psi sum failed to converge")
    return total, err + 1e-15 * mags


def psi_numeric(spec: PsiSpec, tau: complex, z: complex) -> tuple[complex, float]:
    """Psi at (tau, z) on the slice named by the PsiSpec, with an error bound."""
    M, m, s, eps = spec.M, spec.m, spec.s, float(spec.eps)
    j, k = float(spec.j), float(spec.k)
    u1, u2 = (z, -z) if spec.orientation == 1 else (-z, z)
    pref = _e(tau * float(m) * j * k / M) * _e(float(m) / M * (k * u1 + j * u2))
    w1, w2 = u1 + j * tau + eps, u2 + k * tau - eps
    val, err = 0j, 0.0
    for b, bsign in _branches(spec):
        v, e = _phi_sum(b, m, s, M * tau, w1, w2)
        val += bsign * v
        err += e
    return pref * val, abs(pref) * err


def psi_numeric_general(spec: PsiSpec, tau: complex, z1: complex, z2: complex) -> complex:
    """Psi at an arbitrary (z1, z2); the PsiSpec orientation is ignored."""
    M, m, eps = spec.M, spec.m, float(spec.eps)
    j, k = float(spec.j), float(spec.k)
    pref = _e(tau * float(m) * j * k / M) * _e(float(m) / M * (k * z1 + j * z2))
    val = 0j
    for b, bsign in _branches(spec):
        val += bsign * _phi_sum(b, m, spec.s, M * tau, z1 + j * tau + eps, z2 + k * tau - eps)[0]
    return pref * val
