"""Jacobi theta functions, eta quotients and the Kac-Peterson kernel as exact series.

Conventions: q = e^{2 pi i tau}, zeta = e^{2 pi i z} and

    theta_ab(tau, z) = sum_n exp(pi i (n + a/2)^2 tau + 2 pi i (n + a/2)(z + b/2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (HALF, I, GaussRat, PolySeries, WindowSeries, ZPoly, multiply, ps_equal, rat,
                    root_of_unity_quarter, scalar_inverse)
from .report import VerificationReport


def eta_series(scale: int, qmax) -> PolySeries:
    """eta(scale * tau) from Euler's pentagonal number theorem."""
    qmax = rat(qmax)
    if scale < 1:
        raise ValueError("eta scale must be a positive integer")
    base = Fraction(scale, 24)
    terms = []
    k = 0
    while True:
        added = False
        for kk in {k, -k}:
            e = base + scale * Fraction(kk * (3 * kk - 1), 2)
            if e <= qmax:
                terms.append((e, 0, -1 if kk % 2 else 1))
                added = True
        if not added and base + scale * Fraction(k * (3 * k - 1), 2) > qmax:
            break
        k += 1
    return PolySeries(terms, qmax)


@dataclass(frozen=True)
class ThetaSpec:
    """theta_ab(qscale * tau, zscale * z + tshift * tau + cshift)."""

    a: int
    b: int
    qscale: Fraction = Fraction(1)
    zscale: Fraction = Fraction(1)
    tshift: Fraction = Fraction(0)
    cshift: Fraction = Fraction(0)

    def __post_init__(self):
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError("theta characteristics must be 0 or 1")
        for name in ("qscale", "zscale", "tshift", "cshift"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.qscale <= 0:
            raise ValueError("qscale must be positive")

    @property
    def name(self) -> str:
        return f"theta{self.a}{self.b}"


def theta_series(spec: ThetaSpec, qmax) -> PolySeries:
    qmax = rat(qmax)
    g, c, d = spec.qscale, spec.zscale, spec.tshift
    phase_unit = Fraction(spec.b, 2) + spec.cshift
    # q-exponent g r^2 / 2 + d r <= qmax with r = n + a/2
    disc = float(d * d + 2 * g * qmax)
    if disc < 0:
        return PolySeries.zero(qmax)
    root = math.sqrt(disc)
    r_lo = math.floor((-float(d) - root) / float(g)) - 2
    r_hi = math.ceil((-float(d) + root) / float(g)) + 2
    half_a = Fraction(spec.a, 2)
    terms = []
    for n in range(r_lo, r_hi + 1):
        r = n + half_a
        e = g * r * r / 2 + d * r
        if e > qmax:
            continue
        terms.append((e, c * r, root_of_unity_quarter(r * phase_unit)))
    return PolySeries(terms, qmax)


def theta(a: int, b: int, qmax, **kw) -> PolySeries:
    return theta_series(ThetaSpec(a, b, **kw), qmax)


def power(s: PolySeries, n: int, qmax=None) -> PolySeries:
    out = s
    for _ in range(n - 1):
        out = multiply(out, s)
    return out if qmax is None else out.truncate(qmax)


def eta_quotient(factors: Sequence[tuple[int, int]], qmax) -> PolySeries:
    """prod eta(s tau)^p over (s, p) pairs, exact to q^qmax."""
    qmax = rat(qmax)
    if not factors:
        return PolySeries.one(qmax)
    margin = 2 * sum(Fraction(abs(p) * s, 24) for s, p in factors) + 1
    out = None
    for s, p in factors:
        if p == 0:
            continue
        f = power(eta_series(s, qmax + margin), abs(p))
        if p < 0:
            f = scalar_inverse(f)
        out = f if out is None else multiply(out, f)
    if out is None:
        return PolySeries.one(qmax)
    if out.qmax < qmax:
        raise AssertionError(f"eta quotient only reached q^{out.qmax}")
    return out.truncate(qmax)


def eta_quotient_leading(factors: Sequence[tuple[int, int]]) -> Fraction:
    return sum((Fraction(s * p, 24) for s, p in factors), Fraction(0))


# -- the Kac-Peterson kernel 1/(eta^3 theta_11(tau, 2z)) ----------------------


def _kp_terms(qmax: Fraction, zeta_lo: Fraction):
    """Terms of sum_{j,k>=0} - sum_{j,k<0} (-1)^j zeta^{-(2k+1)} q^{j(j+1)/2 + jk}."""
    out = []
    # j, k >= 0
    j = 0
    while Fraction(j * (j + 1), 2) <= qmax:
        base = Fraction(j * (j + 1), 2)
        k = 0
        while True:
            e = base + j * k
            z = -(2 * k + 1)
            if e > qmax or z < zeta_lo:
                break
            out.append((e, z, -1 if j % 2 else 1))
            k += 1
        j += 1
    # j, k < 0: exponents are at least j(j+1)/2 - j
    j = -1
    while Fraction(j * (j + 1), 2) - j <= qmax:
        base = Fraction(j * (j + 1), 2)
        k = -1
        while base + j * k <= qmax:
            z = -(2 * k + 1)
            if z >= zeta_lo:
                out.append((base + j * k, z, 1 if j % 2 else -1))
            k -= 1
        j -= 1
    return out


def kp_kernel(qmax, zeta_lo) -> WindowSeries:
    """1/(eta(tau)^3 theta_11(tau, 2z)) expanded for |zeta| > 1, exact for zeta-exponents >= zeta_lo."""
    qmax, zeta_lo = rat(qmax), rat(zeta_lo)
    quarter = Fraction(1, 4)
    kp = WindowSeries(_kp_terms(qmax + quarter, zeta_lo), qmax + quarter, zeta_lo, min_q=0)
    inv6 = scalar_inverse(power(eta_series(1, qmax + 1), 6)).truncate(qmax)
    out = multiply(kp, inv6.scale(-I), qmax)
    return out


def kp_coefficient(q, zeta) -> GaussRat:
    """Coefficient of q^q zeta^zeta in the kernel, computed without any window."""
    q, zeta = rat(q), rat(zeta)
    if zeta.denominator != 1 or zeta.numerator % 2 == 0:
        return GaussRat(0)
    k = (-zeta.numerator - 1) // 2
    x_top = q + Fraction(1, 4)
    if x_top < 0:
        return GaussRat(0)
    inv6 = scalar_inverse(power(eta_series(1, q + 1), 6))
    total = GaussRat(0)
    sign_block = 1 if k >= 0 else -1
    j = 0 if k >= 0 else -1
    while True:
        e = Fraction(j * (j + 1), 2) + j * k
        if k >= 0 and Fraction(j * (j + 1), 2) > x_top:
            break
        if k < 0 and Fraction(j * (j + 1), 2) > x_top:
            break
        if e <= x_top:
            c = sign_block * (-1 if j % 2 else 1)
            total = total + inv6.coeff(q - e) * c
        j += 1 if k >= 0 else -1
    return total * (-I)


# -- identity anchors ----------------------------------------------------------


def theta_square_parts(kind: str, qmax) -> tuple[PolySeries, PolySeries]:
    """The two lattice sums entering theta_00^2 and theta_10^2 and their eta-quotient weights.

    Returns (even, odd) with even = E1 sum zeta^{2n} q^{n^2} + ... as two series.
    """
    qmax = rat(qmax)
    e1 = eta_quotient([(2, 5), (1, -2), (4, -2)], qmax)
    e2 = eta_quotient([(4, 2), (2, -1)], qmax).scale(2)
    even = theta(0, 0, qmax, qscale=2, zscale=2)   # sum zeta^{2n} q^{n^2}
    odd = theta(1, 0, qmax, qscale=2, zscale=2)    # sum zeta^{2n+1} q^{(n+1/2)^2}
    if kind == "00":
        return multiply(e1, even, qmax), multiply(e2, odd, qmax)
    if kind == "10":
        return multiply(e2, even, qmax), multiply(e1, odd, qmax)
    raise ValueError(kind)


def verify_theta_identities(qmax=6) -> list[VerificationReport]:
    qmax = rat(qmax)
    reports = []

    def rep(name, lhs, rhs, **kw):
        r = ps_equal(lhs, rhs, check=name, **kw)
        reports.append(r)

    # half-period shift
    rep("theta11(z+1/2) = -theta10(z)", theta(1, 1, qmax, cshift=HALF), theta(1, 0, qmax).scale(-1))
    # theta11(2 tau, tau) = -i q^{-1/4} eta^2 / eta(2 tau)
    rhs = eta_quotient([(1, 2), (2, -1)], qmax + 1).shift(Fraction(-1, 4)).scale(-I)
    rep("theta11(2tau, tau) = -i q^-1/4 eta^2/eta(2tau)", theta(1, 1, qmax, qscale=2, zscale=0, tshift=1),
        rhs.truncate(qmax))
    # product pairs
    w = eta_quotient([(2, 2), (1, -1)], qmax + 1)
    a = theta(1, 0, qmax + 1, qscale=2, tshift=HALF)
    b = theta(1, 0, qmax + 1, qscale=2, tshift=-HALF)
    rep("theta10(2tau,z+tau/2) theta10(2tau,z-tau/2)", multiply(a, b).truncate(qmax),
        multiply(w, theta(0, 0, qmax + 1)).shift(Fraction(-1, 8)).truncate(qmax))
    a = theta(1, 1, qmax + 1, qscale=2, tshift=HALF)
    b = theta(1, 1, qmax + 1, qscale=2, tshift=-HALF)
    rep("theta11(2tau,z+tau/2) theta11(2tau,z-tau/2)", multiply(a, b).truncate(qmax),
        multiply(w, theta(0, 1, qmax + 1)).shift(Fraction(-1, 8)).truncate(qmax))
    a = theta(1, 0, qmax + 1, qscale=2, tshift=1)
    b = theta(1, 0, qmax + 1, qscale=2)
    rep("theta10(2tau,z+tau) theta10(2tau,z)", multiply(a, b).truncate(qmax),
        multiply(w, theta(1, 0, qmax + 1)).shift(Fraction(-1, 4), -HALF).truncate(qmax))
    a = theta(1, 1, qmax + 1, qscale=2, tshift=1)
    b = theta(1, 1, qmax + 1, qscale=2)
    rep("theta11(2tau,z+tau) theta11(2tau,z)", multiply(a, b).truncate(qmax),
        multiply(w, theta(1, 1, qmax + 1)).shift(Fraction(-1, 4), -HALF).scale(-I).truncate(qmax))
    # theta-square decompositions
    for kind in ("00", "10"):
        ev, od = theta_square_parts(kind, qmax)
        sq = power(theta(int(kind[0]), 0, qmax), 2, qmax)
        rep(f"theta{kind}^2 lattice decomposition", sq, ev + od)
    # Jacobi: eta^3 = sum (-1)^n (2n+1) q^{(2n+1)^2/8}
    jac = PolySeries([(Fraction((2 * n + 1) ** 2, 8), 0, (-1 if n % 2 else 1) * (2 * n + 1))
                      for n in range(0, 60)], qmax)
    rep("eta^3 Jacobi series", power(eta_series(1, qmax), 3, qmax), jac)
    # kernel inverts eta^3 theta11(2z) on its trusted window
    ker = kp_kernel(qmax, -20)
    den = multiply(power(eta_series(1, qmax + 1), 3), theta(1, 1, qmax + 1, zscale=2))
    prod = multiply(ker, den)
    one = PolySeries.one(prod.qmax)
    rep("kernel * eta^3 theta11(2z) = 1", prod, one)
    return reports


def kernel_lowest_order(lo) -> ZPoly:
    """-i zeta^{-1} / (1 - zeta^{-2}) expanded down to zeta^lo."""
    lo = rat(lo)
    out = {}
    e = Fraction(-1)
    while e >= lo:
        out[e] = -I
        e -= 2
    return ZPoly(out)
