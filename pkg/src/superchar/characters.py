"""Characters of N=2 and N=4 modules as exact truncated series, plus their conformal data.

N=4 characters are assembled as

    ch = c * Psi * theta_ab(tau, z)^2 / (eta^3 theta_11(tau, 2z))

where the kernel 1/(eta^3 theta_11(tau, 2z)) is expanded for |zeta| > 1.  The
result is infinite towards small zeta-powers at each q-order, so it comes back
as a WindowSeries.  N=2 characters c * Psi * theta_ab / eta^3 are finite at
each q-order and come back as PolySeries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import I, ONE, PolySeries, WindowSeries, multiply, rat, scalar_inverse
from .psi import PsiSpec, psi_min_q, psi_series
from .theta import _kp_terms, eta_series, power, theta

HALF = Fraction(1, 2)
HEARTS = ("I", "II", "III", "IV")


class LabelError(ValueError):
    """A module label violates the constraints of its domain."""


class Sector(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"
    PLUS_TW = "plus-tw"
    MINUS_TW = "minus-tw"

    @property
    def twisted(self) -> bool:
        return self in (Sector.PLUS_TW, Sector.MINUS_TW)

    @property
    def plus(self) -> bool:
        return self in (Sector.PLUS, Sector.PLUS_TW)

    @property
    def theta_ab(self) -> tuple[int, int]:
        return {Sector.PLUS: (0, 0), Sector.MINUS: (0, 1),
                Sector.PLUS_TW: (1, 0), Sector.MINUS_TW: (1, 1)}[self]

    @property
    def eps(self) -> Fraction:
        return HALF if self.plus else Fraction(0)

    @classmethod
    def parse(cls, text: str) -> "Sector":
        aliases = {"+": "plus", "-": "minus", "+tw": "plus-tw", "-tw": "minus-tw",
                   "plus_tw": "plus-tw", "minus_tw": "minus-tw"}
        key = aliases.get(text.strip().lower(), text.strip().lower())
        try:
            return cls(key)
        except ValueError:
            raise LabelError(f"unknown sector {text!r}; use plus, minus, plus-tw or minus-tw") from None

    @property
    def symbol(self) -> str:
        return {"plus": "(+)", "minus": "(-)", "plus-tw": "(+)tw", "minus-tw": "(-)tw"}[self.value]


def omega_domain(M: int, heart: str) -> list[tuple[int, int]]:
    """Admissible (k1, k2) for the given heart, sorted."""
    if heart == "I":
        pts = [(a, b) for a in range(M) for b in range(M) if 2 * a + b <= M - 2]
    elif heart == "II":
        pts = [(a, b) for a in range(1, M + 1) for b in range(1, M + 1) if 2 * a + b <= M]
    elif heart == "III":
        pts = [(a, b) for a in range(M) for b in range(1, M) if 2 * a + b <= M - 2]
    elif heart == "IV":
        pts = [(a, b) for a in range(1, M + 1) for b in range(M + 1) if 2 * a + b <= M]
    else:
        raise LabelError(f"unknown heart {heart!r}")
    return sorted(pts)


def _omega_violation(M: int, heart: str, k1: int, k2: int) -> str | None:
    rules = {
        "I": [(k1 >= 0, "k1 >= 0"), (k2 >= 0, "k2 >= 0"), (2 * k1 + k2 <= M - 2, "2k1+k2 <= M-2")],
        "II": [(k1 >= 1, "k1 >= 1"), (k2 >= 1, "k2 >= 1"), (2 * k1 + k2 <= M, "2k1+k2 <= M")],
        "III": [(k1 >= 0, "k1 >= 0"), (k2 >= 1, "k2 >= 1"), (2 * k1 + k2 <= M - 2, "2k1+k2 <= M-2")],
        "IV": [(k1 >= 1, "k1 >= 1"), (k2 >= 0, "k2 >= 0"), (2 * k1 + k2 <= M, "2k1+k2 <= M")],
    }
    for ok, text in rules[heart]:
        if not ok:
            return text
    return None


@dataclass(frozen=True)
class ModuleLabel:
    """Highest-weight label.  For N=2 labels ``heart`` is unused and m is the N=2 level."""

    algebra: str
    M: int
    m: int
    m2: int
    k1: int
    k2: int
    heart: str = "I"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        M, m, m2, k1, k2 = self.M, self.m, self.m2, self.k1, self.k2
        if self.algebra not in ("N4", "N2"):
            raise LabelError(f"algebra must be N4 or N2, got {self.algebra!r}")
        if M < 1:
            raise LabelError("M >= 1 violated")
        if self.algebra == "N4":
            if m < 1:
                raise LabelError("m >= 1 violated")
            if gcd(M, m) != 1:
                raise LabelError(f"gcd(M, m) = 1 violated for M={M}, m={m}")
            if not 0 <= m2 <= m - 1:
                raise LabelError(f"0 <= m2 <= m-1 violated (m2={m2})")
            if self.heart not in HEARTS:
                raise LabelError(f"unknown heart {self.heart!r}")
            if not omega_domain(M, self.heart):
                raise LabelError(f"Ω^{{({self.heart})}} empty for M={M}")
            bad = _omega_violation(M, self.heart, k1, k2)
            if bad:
                raise LabelError(f"(k1,k2)=({k1},{k2}) not in Ω^{{({self.heart})}} for M={M}: {bad} violated")
        else:
            if m < 0:
                raise LabelError("m >= 0 violated")
            if gcd(M, m + 1) != 1:
                raise LabelError(f"gcd(M, m+1) = 1 violated for M={M}, m={m}")
            if not 0 <= m2 <= m:
                raise LabelError(f"0 <= m2 <= m violated (m2={m2})")
            if k1 < 0 or k2 < 0:
                raise LabelError("k1, k2 >= 0 violated")
            if k1 + k2 > M - 1:
                raise LabelError("k1+k2 <= M-1 violated")

    @classmethod
    def n4(cls, M, m, m2, k1, k2, heart="I") -> "ModuleLabel":
        return cls("N4", M, m, m2, k1, k2, heart)

    @classmethod
    def n2(cls, M, m, m2, k1, k2) -> "ModuleLabel":
        return cls("N2", M, m, m2, k1, k2, "-")

    def as_dict(self) -> dict:
        return {"algebra": self.algebra, "M": self.M, "m": self.m, "m2": self.m2,
                "k1": self.k1, "k2": self.k2, "heart": self.heart}

    def __str__(self):
        if self.algebra == "N2":
            return f"N2(M={self.M},m={self.m},m2={self.m2},k=({self.k1},{self.k2}))"
        return f"N4(M={self.M},m={self.m},m2={self.m2},k=({self.k1},{self.k2}),{self.heart})"


def n4_labels(M: int, m: int, hearts=("I", "III")) -> list[ModuleLabel]:
    out = []
    for heart in hearts:
        for k1, k2 in omega_domain(M, heart):
            for m2 in range(m):
                out.append(ModuleLabel.n4(M, m, m2, k1, k2, heart))
    return out


def n2_labels(M: int, m: int) -> list[ModuleLabel]:
    return [ModuleLabel.n2(M, m, m2, k1, k2) for m2 in range(m + 1)
            for k1 in range(M) for k2 in range(M - k1)]


# -- conformal data ----------------------------------------------------------------


def central_charge(M: int, m: int, algebra: str = "N4") -> Fraction:
    if algebra == "N4":
        return -6 * (Fraction(m, M) + 1)
    return -3 * (Fraction(2 * (m + 1), M) - 1)


@dataclass(frozen=True)
class ConformalData:
    c: Fraction
    h: Fraction
    s: Fraction

    @property
    def leading_q(self) -> Fraction:
        return self.h - self.c / 24


def conformal_data(label: ModuleLabel, twisted: bool, m2_shift: int = 0) -> ConformalData:
    """(c, h, s) from the highest-weight lemmas, evaluated at m2 + m2_shift.

    The leading-term lemma matches the character's lowest monomial with the
    data at m2 + 1, so ``m2_shift=1`` gives the calibrated values.
    """
    if label.algebra != "N4":
        raise LabelError("conformal data is tabulated for N=4 labels")
    M, m, k1, k2 = label.M, label.m, label.k1, label.k2
    m2 = label.m2 + m2_shift
    r = Fraction(m, M)
    c = central_charge(M, m)
    heart = label.heart
    if not twisted:
        kk = HALF if heart in ("I", "III") else -HALF
        h = r * (k1 + kk) * (k1 + k2 + kk) - (m2 - 1) * (k1 + kk) - Fraction(1, 4) * (r + 2)
        s = r * k2 - m2 if heart in ("I", "IV") else -r * k2 + m2 - 2
    else:
        quarter = Fraction(1, 4) * (r + 1)
        if heart == "I":
            h = r * (k1 + 1) * (k1 + k2) - (k1 + 1) * (m2 - 1) - quarter
        elif heart == "II":
            h = r * (k1 - 1) * (k1 + k2) - (k1 - 1) * (m2 - 1) - quarter
        elif heart == "III":
            h = r * k1 * (k1 + k2 + 1) - k1 * (m2 - 1) - quarter
        else:
            h = r * k1 * (k1 + k2 - 1) - k1 * (m2 - 1) - quarter
        if heart in ("I", "IV"):
            s = -r * (k2 - 1) + m2 - 1
        else:
            s = r * (k2 + 1) - m2 + 1
    return ConformalData(c, h, s)


# -- Psi data for each character family ------------------------------------------


def n4_psi_spec(label: ModuleLabel, sector: Sector) -> PsiSpec:
    if label.algebra != "N4":
        raise LabelError("expected an N=4 label")
    if label.heart not in ("I", "III"):
        raise LabelError("character formulas are given for hearts I and III; "
                         "use the equivalent label (II ~ III with k1-1, IV ~ I with k1-1)")
    M, m, m2, k1, k2 = label.M, label.m, label.m2, label.k1, label.k2
    eps = sector.eps
    if not sector.twisted:
        j, k, ep = k1 + HALF, k1 + k2 + HALF, HALF
        orient = 1 if label.heart == "I" else -1
    elif label.heart == "I":
        j, k, ep, orient = Fraction(k1 + 1), Fraction(k1 + k2), Fraction(0), -1
    else:
        j, k, ep, orient = Fraction(k1), Fraction(k1 + k2 + 1), Fraction(0), 1
    return PsiSpec(M, Fraction(m), Fraction(-m2), eps, ep, j, k, "diff", orient)


def n4_prefactor(label: ModuleLabel, sector: Sector):
    sign = -1 if (sector.plus and label.m2 % 2) else 1
    return I * sign


def n2_psi_spec(label: ModuleLabel, sector: Sector) -> PsiSpec:
    if label.algebra != "N2":
        raise LabelError("expected an N=2 label")
    M, m, m2, k1, k2 = label.M, label.m, label.m2, label.k1, label.k2
    if not sector.twisted:
        j, k, ep = k1 + HALF, k2 + HALF, HALF
    else:
        j, k, ep = Fraction(k1 + 1), Fraction(k2), Fraction(0)
    return PsiSpec(M, Fraction(m + 1), Fraction(-m2), sector.eps, ep, j, k, "diff", 1)


def n2_prefactor(label: ModuleLabel, sector: Sector):
    return ONE * (-1 if (sector.plus and label.m2 % 2) else 1)


def n2_character(label: ModuleLabel, sector: Sector, qmax) -> PolySeries:
    """(-1)^{m2} Psi * theta_ab / eta^3, exact to q^qmax."""
    qmax = rat(qmax)
    spec = n2_psi_spec(label, sector)
    a, b = sector.theta_ab
    mu_psi = psi_min_q(spec)
    mu_th = Fraction(1, 8) * a
    eighth = Fraction(1, 8)
    psi = psi_series(spec, qmax + eighth - mu_th)
    th = theta(a, b, qmax + eighth - mu_psi)
    num = psi.times_poly(th)
    inv = scalar_inverse(power(eta_series(1, qmax - num.min_q + 1), 3))
    out = multiply(num, inv)
    if out.qmax < qmax:
        raise AssertionError(f"N=2 character only reached q^{out.qmax}")
    return out.truncate(qmax).scale(n2_prefactor(label, sector))


def _theta_square(sector: Sector, qmax) -> PolySeries:
    a, b = sector.theta_ab
    t = theta(a, b, qmax + 1)
    return multiply(t, t).truncate(qmax)


def n4_character(label: ModuleLabel, sector: Sector, qmax, window=(-6, None)) -> WindowSeries:
    """Exact N=4 character to q^qmax, trusted for zeta-exponents in the window."""
    qmax = rat(qmax)
    lo = rat(window[0])
    hi = None if window[1] is None else rat(window[1])
    spec = n4_psi_spec(label, sector)
    quarter = Fraction(1, 4)
    mu_psi = psi_min_q(spec)
    mu_th = Fraction(1, 4) * sector.theta_ab[0]
    mu_k = -quarter
    psi = psi_series(spec, qmax - mu_th - mu_k)
    th2 = _theta_square(sector, qmax - mu_psi - mu_k)
    x_top = (psi.max_z() or 0) + (th2.max_z() or 0)
    # the kernel is (-i/eta^6) * KP; multiply by the sparse KP first, the scalar after
    k_lo = lo - x_top
    kq = qmax - mu_psi - mu_th
    kp = WindowSeries(_kp_terms(kq + quarter, k_lo), kq + quarter, k_lo, min_q=0)
    kp_top = kp._upper()
    if psi.is_poly():
        x = multiply(psi.regular, th2)
    else:
        x = multiply(psi.to_window(lo - kp_top - (th2.max_z() or 0)), th2)
    y = multiply(x, kp)
    inv6 = scalar_inverse(power(eta_series(1, qmax - y.min_q + 1), 6))
    out = multiply(y, inv6)
    if out.qmax < qmax or out.t_lo > lo:
        raise AssertionError(f"character reached q^{out.qmax} on [{out.t_lo}, ...), wanted q^{qmax} on [{lo}, ...)")
    out = out.truncate(qmax).restrict(lo, hi)
    return out.scale(n4_prefactor(label, sector) * (-I))


def character(label: ModuleLabel, sector: Sector, qmax, window=(-6, None)):
    if label.algebra == "N2":
        return n2_character(label, sector, qmax)
    return n4_character(label, sector, qmax, window)


def leading_monomial(series) -> tuple[Fraction, Fraction, object]:
    """Lowest q-order, highest zeta-exponent term of a character series."""
    return series.leading()
