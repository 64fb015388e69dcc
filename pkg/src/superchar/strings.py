"""String-function path: N=4 characters from the quadruple-sum expansions.

For sectors (+) and (+tw) the character is written as

    zeta^P sum_n zeta^n { [E1/eta^6 (sum over n1 = n mod 2) + 2 E2/eta^6 (sum over n1 != n mod 2)]
                          x [sum_{l2,n2 >= 0} - sum_{l2,n2 < 0}] (-1)^{n1+l2} q^{c L^2} q^{l2(l2+1)/2 + l2 n2}
                          x (Psi branch 1 - Psi branch 2) }

with E1/eta^6 = eta(2tau)^5 / eta(tau)^8 eta(4tau)^2 and 2 E2/eta^6 = 2 eta(4tau)^2 / eta(tau)^6 eta(2tau).
The lattice exponent L = n + sign * n1 + 2 n2 + offset, the coefficient c and the shift P
depend on the family.  Two readings of the printed text are kept side by side so the
comparison with the kernel path can decide between them.

Every sum is enumerated with explicit bounds: each of the three exponent pieces
(Psi part, kernel part, lattice part) is bounded below, so for a target order all
but finitely many terms are provably out of range.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .characters import HALF, LabelError, ModuleLabel, Sector
from .exact import PolySeries, WindowSeries, multiply, rat
from .theta import eta_quotient

QUARTER = Fraction(1, 4)
E1_FACTORS = ((2, 5), (1, -8), (4, -2))     # leading q^{-1/4}
E2_FACTORS = ((4, 2), (1, -6), (2, -1))     # leading q^0, weighted by 2


@dataclass(frozen=True)
class StringForm:
    """One textual reading of a quadruple-sum expansion."""

    family: str
    variant: str
    prefactor: Fraction       # P in zeta^P
    coeff: Fraction           # c in q^{c L^2}
    n1_sign: int              # L = n + n1_sign * n1 + 2 n2 + offset
    offset: int
    j: Fraction
    k: Fraction


FAMILIES = ("I", "III", "I-tw", "III-tw")


def family_of(label: ModuleLabel, sector: Sector) -> str:
    if sector not in (Sector.PLUS, Sector.PLUS_TW):
        raise LabelError("quadruple-sum expansions are given for sectors (+) and (+tw) only")
    if label.heart not in ("I", "III"):
        raise LabelError("quadruple-sum expansions are given for hearts I and III")
    return label.heart + ("-tw" if sector.twisted else "")


def variants(family: str) -> tuple[str, ...]:
    return {"I": ("printed",), "III": ("printed", "corrected"), "I-tw": ("printed",),
            "III-tw": ("printed", "quarter", "corrected", "k-literal")}[family]


def string_form(label: ModuleLabel, sector: Sector, variant: str = "printed") -> StringForm:
    """The expansion data for a label, sector and textual variant.

    III, "printed":      zeta^{-mk2/M + m2 + 1}, as typeset
    III, "corrected":    zeta^{-mk2/M + m2 - 1}, the leading-term charge
    III-tw, "printed":   q^{(1/2)(n + n1 + 2n2 + 1)^2}, as typeset
    III-tw, "quarter":   q^{(1/4)(n + n1 + 2n2 + 1)^2}, the twisted-I coefficient only
    III-tw, "corrected": q^{(1/4)(n - n1 + 2n2 + 1)^2}
    III-tw, "k-literal": the corrected sum with the Psi index k1 + k2 in place of k1 + k2 + 1
    """
    fam = family_of(label, sector)
    if variant not in variants(fam):
        raise ValueError(f"family {fam} has variants {variants(fam)}, not {variant!r}")
    M, m, m2, k1, k2 = label.M, label.m, label.m2, label.k1, label.k2
    r = Fraction(m, M)
    if fam == "I":
        return StringForm(fam, variant, r * k2 - m2 - 1, QUARTER, -1, 0, k1 + HALF, k1 + k2 + HALF)
    if fam == "III":
        p = -r * k2 + m2 + (1 if variant == "printed" else -1)
        return StringForm(fam, variant, p, QUARTER, 1, 0, k1 + HALF, k1 + k2 + HALF)
    if fam == "I-tw":
        return StringForm(fam, variant, -r * (k2 - 1) + m2, QUARTER, 1, 1, Fraction(k1 + 1), Fraction(k1 + k2))
    coeff, sign = {"printed": (HALF, 1), "quarter": (QUARTER, 1), "corrected": (QUARTER, -1),
                   "k-literal": (QUARTER, -1)}[variant]
    k = k1 + k2 if variant == "k-literal" else k1 + k2 + 1
    return StringForm(fam, variant, r * (k2 + 1) - m2, coeff, sign, 1, Fraction(k1), Fraction(k))


# -- the Psi rows ---------------------------------------------------------------


@dataclass(frozen=True)
class PsiRow:
    """Terms q^{Q + (n1 - m2) a} for n1 on a half-line; sign already includes the branch."""

    branch: int
    ell: int
    a: Fraction
    Q: Fraction
    positive: bool            # n1 >= 0 if True, n1 <= -1 otherwise
    sign: int

    def exponent(self, n1: int, m2: int) -> Fraction:
        return self.Q + (n1 - m2) * self.a

    def minimum(self, m2: int) -> Fraction:
        return self.exponent(0 if self.positive else -1, m2) if self.a != 0 else self.Q


def _positive_region(branch: int, ell: int, form: StringForm) -> bool:
    # branch 1: l >= 0 with n >= 0, l < 0 with n < 0; branch 2: l > 0 with n >= 0, l <= 0 with n < 0.
    # The a = 0 rows follow the region that keeps their sum one-sided in the right direction.
    if branch == 1:
        if form.j == 0 and ell == 0 and form.family == "III-tw":
            return False
        return ell >= 0
    if form.k == 0 and ell == 0 and form.family == "I-tw":
        return True
    return ell > 0


def psi_rows(label: ModuleLabel, form: StringForm, budget: Fraction) -> list[PsiRow]:
    """All rows whose smallest exponent is at most budget."""
    M, m, m2 = label.M, label.m, label.m2
    j, k = form.j, form.k
    r = Fraction(m, M)
    rows = []
    # the row minimum is a convex quadratic in l on each side, increasing beyond |l| > vertex
    vertex = (m * (j + k) + (m2 + 1) * M) / (2 * M * m) + 1
    for branch in (1, 2):
        for direction in (1, -1):
            ell = 0 if direction == 1 else -1
            while True:
                if branch == 1:
                    a, Q = M * ell + j, r * (M * ell + j) * (M * ell + k)
                else:
                    a, Q = M * ell - k, r * (M * ell - j) * (M * ell - k)
                pos = _positive_region(branch, ell, form)
                if (a > 0 and not pos) or (a < 0 and pos):
                    raise ArithmeticError(f"region of row l={ell} (branch {branch}) makes the sum diverge")
                sign = (1 if pos else -1) * (1 if branch == 1 else -1)
                row = PsiRow(branch, ell, a, Q, pos, sign)
                low = row.minimum(m2)
                if low <= budget:
                    rows.append(row)
                elif abs(ell) > vertex:
                    break
                ell += direction
    return rows


def kernel_rows(budget: Fraction) -> list[tuple[int, int, int, Fraction]]:
    """(l2, n2, sign, exponent) for l2 != 0 with exponent <= budget; l2 = 0 is handled separately."""
    out = []
    ell = 1
    while Fraction(ell * (ell + 1), 2) <= budget:
        base = Fraction(ell * (ell + 1), 2)
        n2 = 0
        while base + ell * n2 <= budget:
            out.append((ell, n2, -1 if ell % 2 else 1, base + ell * n2))
            n2 += 1
        ell += 1
    ell = -1
    # l2, n2 <= -1: exponent l2(l2+1)/2 + l2 n2 >= l2(l2+1)/2 + |l2|
    while Fraction(ell * (ell + 1), 2) - ell <= budget:
        base = Fraction(ell * (ell + 1), 2)
        n2 = -1
        while base + ell * n2 <= budget:
            out.append((ell, n2, 1 if ell % 2 else -1, base + ell * n2))
            n2 -= 1
        ell -= 1
    return out


def _isqrt_bound(x: Fraction) -> int:
    """Largest integer t with t^2 <= x (x >= 0)."""
    if x < 0:
        return -1
    t = math.isqrt(x.numerator // x.denominator)
    while Fraction((t + 1) ** 2) <= x:
        t += 1
    while t > 0 and Fraction(t * t) > x:
        t -= 1
    return t


def string_terms(label: ModuleLabel, form: StringForm, n: int, qmax: Fraction) -> tuple[dict, dict]:
    """The two parity-split inner sums for charge P + n, as {q-exponent: integer}."""
    m2 = label.m2
    budget = qmax + QUARTER
    rows = psi_rows(label, form, budget)
    # Psi exponents can be negative, leaving more room for the kernel
    floor = min((row.minimum(m2) for row in rows), default=Fraction(0))
    krows = kernel_rows(budget - min(floor, Fraction(0)))
    kn2 = [nn for _, nn, _, _ in krows]
    kn2_lo, kn2_hi = (min(kn2), max(kn2)) if kn2 else (0, 0)
    same: dict = defaultdict(int)
    other: dict = defaultdict(int)
    c, s1, off = form.coeff, form.n1_sign, form.offset

    def add(n1: int, sign: int, e: Fraction) -> None:
        (same if (n1 - n) % 2 == 0 else other)[e] += sign

    def lattice_n2_range(n1: int, room: Fraction) -> range:
        t = _isqrt_bound(room / c)
        base = n + s1 * n1 + off
        # |base + 2 n2| <= t
        return range(math.ceil((-t - base) / 2), math.floor((t - base) / 2) + 1)

    def n1_values(row: PsiRow, room: Fraction):
        """n1 on the row's half-line with Psi exponent <= room, for rows with a != 0."""
        if row.positive:
            n1 = 0
            while row.exponent(n1, m2) <= room:
                yield n1
                n1 += 1
        else:
            n1 = -1
            while row.exponent(n1, m2) <= room:
                yield n1
                n1 -= 1

    for row in rows:
        if row.a != 0:
            for n1 in n1_values(row, budget):
                ep = row.exponent(n1, m2)
                sgn = row.sign * (-1 if n1 % 2 else 1)
                for l2, n2, ks, ek in krows:
                    room = budget - ep - ek
                    if room < 0:
                        continue
                    L = n + s1 * n1 + 2 * n2 + off
                    if c * L * L <= room:
                        add(n1, sgn * ks, ep + ek + c * L * L)
                # l2 = 0, n2 >= 0: kernel exponent 0, sign +
                for n2 in lattice_n2_range(n1, budget - ep):
                    if n2 < 0:
                        continue
                    L = n + s1 * n1 + 2 * n2 + off
                    add(n1, sgn, ep + c * L * L)
            continue
        # a = 0: every n1 on the half-line has exponent Q; the lattice bounds n1
        ep = row.Q
        if ep > budget:
            continue
        t = _isqrt_bound((budget - ep) / c)
        d1 = 1 if row.positive else -1
        if s1 * d1 < 0:
            raise ArithmeticError("lattice does not bound the degenerate row: this reading diverges")
        # with n2 >= kn2_lo, |L| <= t forces s1*n1 <= t - n - off - 2*kn2_lo
        n1 = 0 if row.positive else -1
        while True:
            lo_L = n + s1 * n1 + off + 2 * min(kn2_lo, 0)
            if lo_L > t:
                break
            sgn = row.sign * (-1 if n1 % 2 else 1)
            for l2, n2, ks, ek in krows:
                room = budget - ep - ek
                if room < 0:
                    continue
                L = n + s1 * n1 + 2 * n2 + off
                if c * L * L <= room:
                    add(n1, sgn * ks, ep + ek + c * L * L)
            for n2 in lattice_n2_range(n1, budget - ep):
                if n2 < 0:
                    continue
                L = n + s1 * n1 + 2 * n2 + off
                add(n1, sgn, ep + c * L * L)
            n1 += d1
    return dict(same), dict(other)


def n4_string_expansion(label: ModuleLabel, sector: Sector, qmax, window=(-5, 5),
                        variant: str = "printed") -> WindowSeries:
    """The character from the quadruple sums, exact to q^qmax on the zeta-window."""
    qmax = rat(qmax)
    lo, hi = rat(window[0]), rat(window[1])
    form = string_form(label, sector, variant)
    n_lo = math.ceil(lo - form.prefactor)
    n_hi = math.floor(hi - form.prefactor)
    inner = {n: string_terms(label, form, n, qmax) for n in range(n_lo, n_hi + 1)}
    # inner exponents may be negative, so the eta quotients must reach past qmax
    low = min((e for pair in inner.values() for part in pair for e in part), default=Fraction(0))
    reach = qmax + QUARTER - min(low, Fraction(0)) + 1
    e1 = eta_quotient(E1_FACTORS, reach)
    e2 = eta_quotient(E2_FACTORS, reach).scale(2)
    terms = []
    for n, (same, other) in inner.items():
        a = PolySeries([(e, 0, v) for e, v in same.items() if v], qmax + QUARTER)
        b = PolySeries([(e, 0, v) for e, v in other.items() if v], qmax + QUARTER)
        string = (multiply(e1, a, qmax) + multiply(e2, b, qmax)).truncate(qmax)
        zeta = form.prefactor + n
        for e, z, coef in string.terms():
            terms.append((e, z + zeta, coef))
    return WindowSeries(terms, qmax, lo, hi)


# -- the M = 2 triple sums ---------------------------------------------------------


def m2_triple_sum(twisted: bool, qmax, window=(-6, 6), variant: str = "printed") -> WindowSeries:
    """zeta^P / eta^3 sum_n zeta^n [sum_{j,k>=0} - sum_{j,k<0}] (-1)^j q^{j(j+1)/2 + jk + (n + x)^2/2}.

    Untwisted: P = -1, x = 2k.  Twisted: P = -1/2 and x = -2k - 1/2 as printed,
    x = 2k + 1/2 when variant == "corrected".
    """
    from .exact import scalar_inverse
    from .theta import eta_series, power

    qmax = rat(qmax)
    lo, hi = rat(window[0]), rat(window[1])
    if not twisted:
        pref, shift, ksign = Fraction(-1), Fraction(0), 2
    elif variant == "printed":
        pref, shift, ksign = -HALF, -HALF, -2
    elif variant == "corrected":
        pref, shift, ksign = -HALF, HALF, 2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    budget = qmax + Fraction(1, 8)
    raw: dict = defaultdict(int)
    n_lo = math.ceil(lo - pref)
    n_hi = math.floor(hi - pref)
    for n in range(n_lo, n_hi + 1):
        for region in (1, -1):
            j = 0 if region == 1 else -1
            while Fraction(j * (j + 1), 2) + (abs(j) if region == -1 else 0) <= budget:
                base = Fraction(j * (j + 1), 2)
                k = 0 if region == 1 else -1
                while True:
                    kexp = base + j * k
                    if kexp > budget:
                        break
                    x = n + ksign * k + shift
                    e = kexp + x * x / 2
                    if e <= budget:
                        raw[(e, n)] += region * (-1 if j % 2 else 1)
                    # j = 0 rows have constant kernel exponent, so stop once the square has passed the budget
                    if j == 0 and x * x / 2 > budget and ksign * (x) * region > 0:
                        break
                    k += region
                j += region
    num = PolySeries([(e, pref + n, v) for (e, n), v in raw.items() if v], budget)
    inv3 = scalar_inverse(power(eta_series(1, qmax + 1), 3))
    out = multiply(num, inv3, qmax)
    return WindowSeries(out.terms(), qmax, lo, hi)
