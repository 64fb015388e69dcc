"""Floating-point evaluation of characters and the modular checks built on it."""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .characters import (ModuleLabel, Sector, n2_prefactor, n2_psi_spec, n4_labels, n4_prefactor,
                         n4_psi_spec, omega_domain)
from .psi import PsiSpec, psi_numeric, psi_numeric_general
from .report import VerificationReport

TWO_PI_I = 2j * math.pi


def _e(x: complex) -> complex:
    return cmath.exp(TWO_PI_I * x)


def complex_str(w: complex) -> str:
    """Round-trippable "a+bi" text."""
    sign = "-" if math.copysign(1.0, w.imag) < 0 else "+"
    return f"{w.real!r}{sign}{abs(w.imag)!r}i"


def parse_complex(text: str) -> complex:
    return complex(text.strip().replace(" ", "").replace("i", "j"))


@dataclass(frozen=True)
class EvalPoint:
    tau: complex
    z: complex
    t: float = 0.0
    tol: float = 1e-8

    def __post_init__(self):
        if self.tau.imag <= 0:
            raise ValueError("Im tau must be positive")
        if self.t != 0:
            raise ValueError("only t = 0 is supported")
        # theta_11(tau, 2z) vanishes on the half-lattice 2z in Z + tau Z
        w = 2 * self.z
        b = round(w.imag / self.tau.imag)
        a = round((w - b * self.tau).real)
        if abs(w - a - b * self.tau) < 1e-3:
            raise ValueError("z sits at a zero of theta_11(tau, 2z)")

    def s_image(self) -> "EvalPoint":
        return EvalPoint(-1 / self.tau, self.z / self.tau, self.t, self.tol)

    def t_image(self) -> "EvalPoint":
        return EvalPoint(self.tau + 1, self.z, self.t, self.tol)

    def as_dict(self) -> dict:
        return {"tau": complex_str(self.tau), "z": complex_str(self.z)}


def theta_numeric(a: int, b: int, tau: complex, z: complex) -> tuple[complex, float]:
    total, mags = 0j, 0.0
    n0 = -round((z.imag / tau.imag)) if tau.imag else 0
    for direction in (1, -1):
        n = n0 if direction == 1 else n0 - 1
        prev = None
        while True:
            r = n + a / 2
            t = cmath.exp(1j * math.pi * r * r * tau + TWO_PI_I * r * (z + b / 2))
            total += t
            mags += abs(t)
            if prev is not None and abs(t) < prev and abs(t) < 1e-18 * max(1.0, mags):
                break
            prev = abs(t)
            n += direction
    return total, 1e-15 * mags


def eta_numeric(tau: complex) -> complex:
    q = _e(tau)
    prod, n = 1.0 + 0j, 1
    while True:
        qn = q ** n
        prod *= 1 - qn
        if abs(qn) < 1e-18:
            break
        n += 1
    return _e(tau / 24) * prod


def eval_character_bound(label: ModuleLabel, sector: Sector, tau: complex, z: complex) -> tuple[complex, float]:
    """Character value and a propagated error bound."""
    a, b = sector.theta_ab
    th, th_err = theta_numeric(a, b, tau, z)
    eta3 = eta_numeric(tau) ** 3
    if label.algebra == "N2":
        psi, perr = psi_numeric(n2_psi_spec(label, sector), tau, z)
        c = complex(n2_prefactor(label, sector))
        val = c * psi * th / eta3
        err = abs(c / eta3) * (abs(psi) * th_err + perr * abs(th)) + 1e-14 * abs(val)
        return val, err
    psi, perr = psi_numeric(n4_psi_spec(label, sector), tau, z)
    den, _ = theta_numeric(1, 1, tau, 2 * z)
    c = complex(n4_prefactor(label, sector))
    k = 1 / (eta3 * den)
    val = c * psi * th * th * k
    err = abs(c * k) * (perr * abs(th) ** 2 + 2 * abs(psi * th) * th_err) + 1e-13 * abs(val)
    return val, err


def eval_character(label: ModuleLabel, sector: Sector, point: EvalPoint) -> complex:
    return eval_character_bound(label, sector, point.tau, point.z)[0]


def _close(lhs: complex, rhs: complex, tol: float) -> tuple[bool, float]:
    err = abs(lhs - rhs)
    return err <= tol * max(1.0, abs(rhs)), err


def _numeric_report(check: str, lhs: complex, rhs: complex, tol: float, extra: dict) -> VerificationReport:
    ok, err = _close(lhs, rhs, tol)
    data = {"lhs": complex_str(lhs), "rhs": complex_str(rhs), "abs_err": err, "tol": tol}
    data.update(extra)
    return VerificationReport(check, ok, f"|lhs-rhs| = {err:.3e}", None if ok else dict(extra), data)


# -- the m = 1 modular data ---------------------------------------------------------


S_TARGET = {Sector.PLUS: Sector.PLUS, Sector.MINUS: Sector.PLUS_TW,
            Sector.PLUS_TW: Sector.MINUS, Sector.MINUS_TW: Sector.MINUS_TW}


def index_pair(label: ModuleLabel, sector: Sector) -> tuple[Fraction, Fraction]:
    """Psi index pair of the m = 1 character after the index swap (z, -z orientation)."""
    k1, k2 = label.k1, label.k2
    h = Fraction(1, 2)
    if not sector.twisted:
        return (k1 + h, k1 + k2 + h) if label.heart == "I" else (k1 + k2 + h, k1 + h)
    return (Fraction(k1 + k2), Fraction(k1 + 1)) if label.heart == "I" else (Fraction(k1), Fraction(k1 + k2 + 1))


def s_phase(source: ModuleLabel, sector: Sector, target: ModuleLabel) -> complex:
    """exp(-2 pi i/M (A a' + B b')) for source pair (A, B) and target pair (a', b')."""
    A, B = index_pair(source, sector)
    a, b = index_pair(target, S_TARGET[sector])
    return _e(-(A * a + B * b) / source.M)


def s_sign(sector: Sector) -> int:
    return 1 if sector is Sector.MINUS_TW else -1


def t_phase(label: ModuleLabel, sector: Sector) -> complex:
    A, B = index_pair(label, sector)
    ph = _e(A * B / label.M)
    return -1j * ph if not sector.twisted else ph


T_TARGET = {Sector.PLUS: Sector.MINUS, Sector.MINUS: Sector.PLUS,
            Sector.PLUS_TW: Sector.PLUS_TW, Sector.MINUS_TW: Sector.MINUS_TW}


def m1_labels(M: int) -> list[ModuleLabel]:
    return [ModuleLabel.n4(M, 1, 0, k1, k2, h) for h in ("I", "III") for k1, k2 in omega_domain(M, h)]


def label_of_pair(M: int, sector: Sector, a: Fraction, b: Fraction) -> ModuleLabel:
    """The m = 1 label whose index pair (in the z, -z orientation) is (a, b), with a + b < M."""
    if not sector.twisted:
        k1 = min(a, b) - Fraction(1, 2)
        heart = "I" if a <= b else "III"
        return ModuleLabel.n4(M, 1, 0, int(k1), int(abs(b - a)), heart)
    if b - a <= 1:
        return ModuleLabel.n4(M, 1, 0, int(b) - 1, int(a - b + 1), "I")
    return ModuleLabel.n4(M, 1, 0, int(a), int(b - a - 1), "III")


def reduce_pair(M: int, sector: Sector, a: Fraction, b: Fraction) -> tuple[ModuleLabel, int] | None:
    """Express the sector function with Psi indices (a, b) as coeff * ch(label), or None when it vanishes.

    Representatives lie in [eps, eps + M). Pairs with a + b > M reflect to (M - b, M - a) with a sign;
    in the twisted sectors an index 0 is first moved to M, which costs -1 exactly when eps = 1/2.
    """
    coeff = 1
    if sector.twisted and b == 0 and a > 0:
        b = Fraction(M)
        coeff = -1 if sector.eps else 1
    if a + b == M or a + b == 0:
        return None
    if a + b > M:
        a, b = M - b, M - a
        coeff = -coeff
    return label_of_pair(M, sector, a, b), coeff


def s_matrix_derived(label: ModuleLabel, sector: Sector) -> dict[ModuleLabel, complex]:
    """S-row obtained by reducing the full M^2 sum of the Psi S-law onto the label set."""
    M = label.M
    A, B = index_pair(label, sector)
    tgt = S_TARGET[sector]
    base = Fraction(0) if tgt.twisted else Fraction(1, 2)
    row: dict[ModuleLabel, complex] = {}
    for x in range(M):
        for y in range(M):
            a, b = base + x, base + y
            red = reduce_pair(M, tgt, a, b)
            if red is None:
                continue
            lab, c = red
            row[lab] = row.get(lab, 0j) + c * _e(-(a * B + b * A) / M)
    return {lab: s_sign(sector) / M * v for lab, v in row.items()}


def s_check(label: ModuleLabel, sector: Sector, point: EvalPoint, variant: str = "printed") -> VerificationReport:
    """ch(-1/tau, z/tau) against an S-matrix combination of characters at tau.

    variant "printed" uses the phase table over Omega^(I) and Omega^(III) as stated;
    variant "derived" uses the reduction of the Psi S-law in s_matrix_derived.
    """
    if label.m != 1 or label.m2 != 0:
        raise ValueError("the S-transformation is stated for (m, m2) = (1, 0)")
    M = label.M
    lhs = eval_character(label, sector, point.s_image())
    tgt = S_TARGET[sector]
    if variant == "printed":
        row = {o: s_sign(sector) / M * s_phase(label, sector, o) for o in m1_labels(M)}
    elif variant == "derived":
        row = s_matrix_derived(label, sector)
    else:
        raise ValueError(f"unknown S variant {variant!r}")
    acc = sum((c * eval_character(o, tgt, point) for o, c in row.items()), 0j)
    rhs = _e(-(1 + 1 / M) * point.z ** 2 / point.tau) * acc
    return _numeric_report(f"S[{variant}]", lhs, rhs, point.tol,
                           {"label": label.as_dict(), "sector": sector.value, **point.as_dict()})


def t_check(label: ModuleLabel, sector: Sector, point: EvalPoint) -> VerificationReport:
    lhs = eval_character(label, sector, point.t_image())
    rhs = t_phase(label, sector) * eval_character(label, T_TARGET[sector], point)
    return _numeric_report("T", lhs, rhs, point.tol,
                           {"label": label.as_dict(), "sector": sector.value, **point.as_dict()})


def s_matrix(M: int, variant: str = "printed") -> tuple[list[tuple[ModuleLabel, Sector]], list[list[complex]]]:
    """The full S-matrix on (label, sector) pairs, with the Gaussian factor stripped."""
    basis = [(lab, sec) for sec in Sector for lab in m1_labels(M)]
    index = {b: i for i, b in enumerate(basis)}
    mat = [[0j] * len(basis) for _ in basis]
    for lab, sec in basis:
        if variant == "printed":
            row = {o: s_sign(sec) / M * s_phase(lab, sec, o) for o in m1_labels(M)}
        else:
            row = s_matrix_derived(lab, sec)
        for other, c in row.items():
            mat[index[(lab, sec)]][index[(other, S_TARGET[sec])]] = c
    return basis, mat


def s_squared_check(M: int, point: EvalPoint, variant: str = "printed") -> VerificationReport:
    """Applying S twice sends z to -z: ch(tau, -z) = sum (S^2) ch(tau, z)."""
    basis, S = s_matrix(M, variant)
    vals = [eval_character(lab, sec, point) for lab, sec in basis]
    refl = EvalPoint(point.tau, -point.z, point.t, point.tol)
    worst, bad = 0.0, None
    n = len(basis)
    for i in range(n):
        rhs = sum(S[i][k] * S[k][j] * vals[j] for k in range(n) for j in range(n))
        lhs = eval_character(*basis[i], refl)
        ok, err = _close(lhs, rhs, point.tol)
        worst = max(worst, err)
        if not ok and bad is None:
            bad = {"label": basis[i][0].as_dict(), "sector": basis[i][1].value}
    return VerificationReport(f"S^2[{variant}]", bad is None, f"max error {worst:.3e}", bad,
                              {"M": M, **point.as_dict()})


# -- auxiliary identities -------------------------------------------------------------


def denominator_numeric(eps: Fraction, eps_p: Fraction, tau: complex, z: complex) -> complex:
    """R^{(eps)}_{eps'} = eta^3 / theta_{1-2eps', 1-2eps}."""
    a, b = int(1 - 2 * eps_p), int(1 - 2 * eps)
    return eta_numeric(tau) ** 3 / theta_numeric(a, b, tau, z)[0]


def aux_denominator_s(eps: Fraction, eps_p: Fraction, point: EvalPoint, variant: str = "printed") -> VerificationReport:
    """S-law of the N=2 denominators.

    printed: -(-1)^{(1-2eps)(1-2eps')} tau e^{2 pi i z^2/tau} R^{(eps')}_{eps}
    derived: (-i tau / c) e^{-pi i z^2/tau} R^{(eps')}_{eps}, with c = -i for theta_11 and 1 otherwise
    """
    tau, z = point.tau, point.z
    lhs = denominator_numeric(eps, eps_p, -1 / tau, z / tau)
    swapped = denominator_numeric(eps_p, eps, tau, z)
    if variant == "printed":
        sign = -((-1) ** int((1 - 2 * eps) * (1 - 2 * eps_p)))
        rhs = sign * tau * _e(z * z / tau) * swapped
    elif variant == "derived":
        c = -1j if eps == 0 and eps_p == 0 else 1
        rhs = (-1j * tau / c) * _e(-z * z / (2 * tau)) * swapped
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _numeric_report(f"denominator-S[{variant}]", lhs, rhs, point.tol,
                           {"eps": str(eps), "eps_p": str(eps_p), **point.as_dict()})


def aux_denominator_t(eps: Fraction, eps_p: Fraction, point: EvalPoint, variant: str = "printed") -> VerificationReport:
    """T-law of the N=2 denominators: phase e^{pi i eps'} as printed, e^{pi i eps'/2} derived."""
    tau, z = point.tau, point.z
    lhs = denominator_numeric(eps, eps_p, tau + 1, z)
    shifted = denominator_numeric((eps + eps_p) % 1, eps_p, tau, z)
    if variant == "printed":
        rhs = _e(eps_p / 2) * shifted
    elif variant == "derived":
        rhs = _e(eps_p / 4) * shifted
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _numeric_report(f"denominator-T[{variant}]", lhs, rhs, point.tol,
                           {"eps": str(eps), "eps_p": str(eps_p), **point.as_dict()})


def aux_half_shift(spec: PsiSpec, point: EvalPoint) -> VerificationReport:
    """Psi^{eps=0}(z + 1/2) = e^{pi i m (k-j)/M} Psi^{eps=1/2}(z) and the reverse shift."""
    tau, z = point.tau, point.z
    M, m, j, k = spec.M, spec.m, spec.j, spec.k
    s0 = spec.with_(eps=Fraction(0), orientation=1)
    s1 = spec.with_(eps=Fraction(1, 2), orientation=1)
    lhs = psi_numeric(s0, tau, z + 0.5)[0]
    rhs = _e(float(m * (k - j)) / (2 * M)) * psi_numeric(s1, tau, z)[0]
    r1 = _numeric_report("half-shift", lhs, rhs, point.tol,
                         {"spec": str(spec), "direction": "+1/2", **point.as_dict()})
    lhs2 = psi_numeric(s1, tau, z - 0.5)[0]
    rhs2 = _e(float(m * (j - k)) / (2 * M)) * psi_numeric(s0, tau, z)[0]
    r2 = _numeric_report("half-shift", lhs2, rhs2, point.tol,
                         {"spec": str(spec), "direction": "-1/2", **point.as_dict()})
    return r1 if not r1.passed else r2


def aux_index_swap(spec: PsiSpec, point: EvalPoint) -> VerificationReport:
    """For m = 1, s in Z: Psi_{j,k}(z, -z) = Psi_{k,j}(-z, z)."""
    lhs = psi_numeric(spec.with_(orientation=1), point.tau, point.z)[0]
    rhs = psi_numeric(spec.with_(j=spec.k, k=spec.j, orientation=-1), point.tau, point.z)[0]
    return _numeric_report("index-swap", lhs, rhs, point.tol, {"spec": str(spec), **point.as_dict()})


def aux_psi_s(spec: PsiSpec, point: EvalPoint, z2: complex | None = None) -> VerificationReport:
    """The m = 1, s in Z S-law of Psi: a sum over (a, b) in (eps + Z/MZ)^2 with eps and eps' exchanged."""
    if spec.m != 1 or spec.s.denominator != 1:
        raise ValueError("the Psi S-law needs m = 1 and integral s")
    tau, z1 = point.tau, point.z
    z2 = -0.7 * z1 + 0.05j if z2 is None else z2
    M, j, k = spec.M, spec.j, spec.k
    lhs = psi_numeric_general(spec, -1 / tau, z1 / tau, z2 / tau)
    acc = 0j
    for x in range(M):
        for y in range(M):
            a, b = spec.eps + x, spec.eps + y
            tgt = spec.with_(eps=spec.eps_p, eps_p=spec.eps, j=a, k=b)
            acc += _e(-(a * k + b * j) / M) * psi_numeric_general(tgt, tau, z1, z2)
    rhs = tau / M * _e(z1 * z2 / (M * tau)) * acc
    return _numeric_report("psi-S", lhs, rhs, point.tol, {"spec": str(spec), **point.as_dict()})


# -- points and series comparison ----------------------------------------------------------


def seeded_points(seed: int, n: int, tol: float = 1e-8) -> list[EvalPoint]:
    """Generic points with Im tau in [1, 2], away from poles and half-lattice zeros."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 2.0))
        z = complex(rng.uniform(0.05, 0.45), rng.uniform(-0.2, 0.2))
        if abs(z.real - 0.25) < 0.03:
            continue
        try:
            out.append(EvalPoint(tau, z, 0.0, tol))
        except ValueError:
            continue
    return out


def series_vs_numeric(series, tau: complex, z: complex, value: complex, bound: float) -> VerificationReport:
    approx = series.eval(tau, z)
    err = abs(approx - value)
    ok = err <= bound
    return VerificationReport("series-vs-numeric", ok, f"|series - numeric| = {err:.3e} (bound {bound:.3e})",
                              None if ok else {"tau": complex_str(tau), "z": complex_str(z)},
                              {"abs_err": err, "bound": bound})


def n4_m1_grid(max_M: int) -> list[ModuleLabel]:
    return [lab for M in range(2, max_M + 1) for lab in n4_labels(M, 1)]
