"""Verification suites: each returns a list of VerificationReport objects.

Suites are pure functions of their arguments, so the CLI can fan them out over
worker processes and merge the results in a fixed order.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .characters import (HALF, LabelError, ModuleLabel, Sector, conformal_data, n2_character,
                         n2_labels, n2_prefactor, n2_psi_spec, n4_character, n4_labels, n4_psi_spec,
                         omega_domain)
from .exact import (I, ONE, NotDivisible, PolySeries, WindowSeries, ZPoly, multiply, ps_equal, rat,
                    root_of_unity_quarter, scalar_inverse)
from .numeric import (aux_denominator_s, aux_denominator_t, aux_half_shift, aux_index_swap,
                      m1_labels, s_check, seeded_points, t_check)
from .psi import PsiSpec, psi_leading, psi_min_q, psi_series, series_leading
from .report import VerificationReport, combine
from .strings import (FAMILIES, family_of, m2_triple_sum, n4_string_expansion, string_form,
                      variants)
from .theta import eta_series, power, theta, verify_theta_identities

SECTORS = (Sector.PLUS, Sector.MINUS, Sector.PLUS_TW, Sector.MINUS_TW)


def coprime_levels(max_M: int, max_m: int, min_M: int = 2):
    return [(M, m) for M in range(min_M, max_M + 1) for m in range(1, max_m + 1) if math.gcd(M, m) == 1]


def _margin(p: PolySeries) -> Fraction:
    """How far a window shrinks when multiplied by p."""
    mz = p.max_z()
    return (mz if mz is not None else Fraction(0)) + 1


def times_poly_factor(label: ModuleLabel, sector: Sector, qmax: Fraction, lo: Fraction, factor) -> WindowSeries:
    """The N=4 character times factor(top), exact to q^qmax and trusted from lo upwards.

    The factor's order top must cover qmax minus the character's lowest order,
    and the character's window must reach below lo by the factor's zeta-width.
    """
    top = qmax + 1
    while True:
        p = factor(top)
        ch = n4_character(label, sector, qmax - p.min_q, window=(lo - _margin(p), None))
        need = qmax - ch.min_q
        if top >= need:
            return multiply(ch, p, qmax)
        top = need + 1


def _named(report: VerificationReport, name: str, **data) -> VerificationReport:
    report.check = name
    report.data.update(data)
    return report


# -- theta anchors and the kernel ------------------------------------------------


def theta_anchor_suite(qmax=8) -> list[VerificationReport]:
    return verify_theta_identities(qmax)


def note_kernel(qmax, zeta_lo) -> WindowSeries:
    """eta^3/theta11(tau, z) as the double sum -i [sum_{j,k>=0} - sum_{j,k<0}] (-1)^j zeta^{-(2k+1)/2} q^{j(j+1)/2+jk}."""
    qmax, zeta_lo = rat(qmax), rat(zeta_lo)
    terms = []
    for region in (1, -1):
        j = 0 if region == 1 else -1
        while Fraction(j * (j + 1), 2) + (0 if region == 1 else -j) <= qmax:
            k = 0 if region == 1 else -1
            while True:
                e = Fraction(j * (j + 1), 2) + j * k
                z = Fraction(-(2 * k + 1), 2)
                if e > qmax or z < zeta_lo:
                    break
                terms.append((e, z, -I * (region * (-1 if j % 2 else 1))))
                k += region
            j += region
    return WindowSeries(terms, qmax, zeta_lo, min_q=0)


def kernel_suite(qmax=6, window=(-6, 6)) -> list[VerificationReport]:
    """Cross-multiplied kernel expansions on the trusted window."""
    qmax = rat(qmax)
    lo, hi = rat(window[0]), rat(window[1])
    th = theta(1, 1, qmax + 1)
    ker = note_kernel(qmax + 1, lo - _margin(th))
    lhs = multiply(ker, th, qmax)
    eta3 = power(eta_series(1, qmax + 1), 3, qmax)
    out = [_named(ps_equal(lhs, eta3, order=qmax, window=(lo, hi)),
                  "kernel: double sum x theta11(z) = eta^3")]
    from .theta import kp_kernel
    den = multiply(power(eta_series(1, qmax + 2), 3), theta(1, 1, qmax + 2, zscale=2))
    kp = kp_kernel(qmax + 1, lo - _margin(den))
    prod = multiply(kp, den, qmax)
    out.append(_named(ps_equal(prod, PolySeries.one(qmax), order=qmax, window=(lo, hi)),
                      "kernel: 1/(eta^3 theta11(2z)) x eta^3 theta11(2z) = 1"))
    lead = kp.leading()
    ok = lead == (Fraction(-1, 4), Fraction(-1), -I)
    out.append(VerificationReport("kernel: leading term -i zeta^-1 q^-1/4", ok,
                                  f"leading term {lead[2]} zeta^{lead[1]} q^{lead[0]}"))
    return out


# -- Psi ------------------------------------------------------------------------------


CLOSED_FORMS = (
    # (eps, eps', j, k, theta characteristics, scalar multiplying eta^3)
    (HALF, HALF, HALF, HALF, (0, 0), ONE),
    (Fraction(0), HALF, HALF, HALF, (0, 1), ONE),
    (HALF, Fraction(0), Fraction(1), Fraction(0), (1, 0), ONE),
    (Fraction(0), Fraction(0), Fraction(1), Fraction(0), (1, 1), I),
)


def psi_closed_form_suite(qmax=6) -> list[VerificationReport]:
    """Psi^{[2,1,0;eps]}_{j,k;eps'}(z, -z) x theta_ab(z) = c eta^3."""
    qmax = rat(qmax)
    out = []
    eta3 = power(eta_series(1, qmax + 1), 3, qmax)
    for eps, eps_p, j, k, (a, b), c in CLOSED_FORMS:
        spec = PsiSpec(2, Fraction(1), Fraction(0), eps, eps_p, j, k, "diff", 1)
        psi = psi_series(spec, qmax + 1)
        prod = psi.times_poly(theta(a, b, qmax + 1)).truncate(qmax)
        name = f"Psi[2,1,0;{eps}]_({j},{k};{eps_p}) x theta{a}{b} = {c} eta^3"
        out.append(_named(ps_equal(prod, eta3.scale(c), order=qmax), name))
    return out


def psi_bruteforce(spec: PsiSpec, branch: int, qmax, zeta_lo, reach: int = 40) -> WindowSeries:
    """Psi_1 or Psi_2 on its slice by direct enumeration of (l, n) with |l|, |n| <= reach.

    Each term comes from expanding the Phi denominator 1/(1 - X q^a) as a
    geometric series: in q^a for a != 0, and in 1/zeta when a = 0.  The
    exponent Mm(l +- j/M)(l +- k/M) + (n + s) a grows as n moves away from
    the start of its half-line, so each row stops at the first term above qmax.
    """
    qmax, zeta_lo = rat(qmax), rat(zeta_lo)
    M, m, s, eps = spec.M, spec.m, spec.s, spec.eps
    j, k, c1 = spec.j, spec.k, spec.orientation
    base_z = (m / M) * c1 * (k - j)
    terms = []
    for ell in range(-reach, reach + 1):
        if branch == 1:
            a = M * ell + j
            Q = M * m * (ell + j / M) * (ell + k / M)
        else:
            a = M * ell - k
            Q = M * m * (ell - j / M) * (ell - k / M)
        # the a = 0 geometric factor is expanded in powers of 1/zeta
        forward = a > 0 or (a == 0 and c1 == -1)
        ns = range(0, reach + 1) if forward else range(-1, -reach - 1, -1)
        sign = 1 if forward else -1
        for n in ns:
            e = Q + (n + s) * a
            if e > qmax:
                if a != 0:
                    break
                continue
            z = base_z + (s + n) * c1
            if z < zeta_lo:
                if a == 0:
                    break
                continue
            terms.append((e, z, root_of_unity_quarter((s + n) * eps) * sign))
    return WindowSeries(terms, qmax, zeta_lo)


def character_psi_specs(max_M: int, max_m: int) -> list[PsiSpec]:
    """Every Psi entering an N=4 or N=2 character with M <= max_M and Psi-level <= max_m."""
    specs = []
    for M, m in coprime_levels(max_M, max_m):
        for label in n4_labels(M, m):
            for sector in SECTORS:
                specs.append(n4_psi_spec(label, sector))
        if m >= 1:
            for label in n2_labels(M, m - 1):
                for sector in SECTORS:
                    specs.append(n2_psi_spec(label, sector))
    seen, out = set(), []
    for sp in specs:
        if sp not in seen:
            seen.add(sp)
            out.append(sp)
    return out


def psi_oracle_check(spec: PsiSpec, qmax=6, zeta_lo=-10) -> VerificationReport:
    reps = []
    brute = {}
    for b in (1, 2):
        brute[b] = psi_bruteforce(spec, b, qmax, zeta_lo)
        fast = psi_series(spec.with_(branch=str(b)), qmax).to_window(zeta_lo)
        reps.append(_named(ps_equal(fast, brute[b], order=qmax), f"branch {b}"))
    fast = psi_series(spec, qmax).to_window(zeta_lo)
    reps.append(_named(ps_equal(fast, brute[1] - brute[2], order=qmax), "difference"))
    rep = combine(f"Psi oracle {_spec_text(spec)}", reps)
    return rep


def psi_leading_check(spec: PsiSpec, variant: str = "stated") -> VerificationReport:
    """Top monomial at the lowest order against the leading-term lemma; a pole must match too."""
    lead = psi_leading(spec, variant)
    ps = psi_series(spec, lead.q + 1)
    actual = series_leading(ps)
    ok = (actual.q, actual.zeta, actual.coeff) == (lead.q, lead.zeta, lead.coeff)
    if ok and lead.pole is not None:
        poly, tails = ps.order_coefficient(lead.q)
        lo = lead.zeta - 6
        full = poly + ZPoly({e: c for t in tails for _, e, c in t.expand(lo)})
        ok = _above(full, lo) == _above(lead.expand(lo), lo)
    return VerificationReport(f"Psi leading [{variant}] {_spec_text(spec)}", ok,
                              f"lemma {lead.coeff} zeta^{lead.zeta} q^{lead.q}"
                              f"{'' if lead.pole is None else f' / (1 - {lead.pole}/zeta)'}, "
                              f"found {actual.coeff} zeta^{actual.zeta} q^{actual.q}",
                              None, {"variant": variant})


def _above(p: ZPoly, lo: Fraction) -> ZPoly:
    return ZPoly({e: c for e, c in p.items() if e >= lo})


def _spec_text(spec: PsiSpec) -> str:
    orient = "(z,-z)" if spec.orientation == 1 else "(-z,z)"
    return f"[{spec.M},{spec.m},{spec.s};{spec.eps}]_({spec.j},{spec.k};{spec.eps_p}){orient}"


def psi_oracle_suite(max_M=5, max_m=3, qmax=6) -> list[VerificationReport]:
    return [psi_oracle_check(sp, qmax) for sp in character_psi_specs(max_M, max_m)]


# -- leading terms --------------------------------------------------------------------


def expected_leading_coefficient(sector: Sector):
    # theta11^2 starts with -zeta q^{1/4}(1 - 1/zeta)^2, the other squares with +1
    return -ONE if sector is Sector.MINUS_TW else ONE


def leading_term_check(label: ModuleLabel, sector: Sector, variant: str = "stated") -> VerificationReport:
    """Top zeta-monomial at the lowest q-order against zeta^s q^{h - c/24} at m2 + 1.

    The stated degenerations (1 + 1/zeta) zeta^s keep zeta^s on top.  With
    ``variant="corrected"`` the Psi pole 1/(1 + zeta) moves the top to zeta^{s-1},
    where every twisted sector has coefficient 1.
    """
    cd = conformal_data(label, sector.twisted, m2_shift=1)
    want = (cd.leading_q, cd.s, expected_leading_coefficient(sector))
    if variant == "corrected" and psi_leading(n4_psi_spec(label, sector), "corrected").pole is not None:
        want = (cd.leading_q, cd.s - 1, ONE)
    ch = n4_character(label, sector, cd.leading_q, window=(cd.s - 4, None))
    got = ch.leading()
    ok = got == want
    return VerificationReport(
        f"leading [{variant}] {label} {sector.symbol}", ok,
        f"expected {want[2]} zeta^{want[1]} q^{want[0]}, found {got[2]} zeta^{got[1]} q^{got[0]}",
        None if ok else {"q": str(got[0]), "zeta": str(got[1]), "coeff": str(got[2])},
        {"degenerate": _degenerate(label, sector), "variant": variant})


def _degenerate(label: ModuleLabel, sector: Sector) -> bool:
    if not sector.twisted:
        return False
    return (label.k1, label.k2) == (0, 0) if label.heart == "I" else label.k1 == 0


def leading_term_suite(max_M=5, max_m=3, variant="stated") -> list[VerificationReport]:
    out = []
    for M, m in coprime_levels(max_M, max_m):
        for label in n4_labels(M, m):
            for sector in SECTORS:
                out.append(leading_term_check(label, sector, variant))
    return out


# -- N=2 <-> N=4 --------------------------------------------------------------------


def n2n4_cases(label: ModuleLabel) -> list[tuple[Sector, object, int]]:
    """(sector, scalar, sign of z in the N=2 factor) for each relation stated for the heart."""
    if label.heart == "I":
        return [(Sector.PLUS, I, 1), (Sector.MINUS, I, 1), (Sector.PLUS_TW, I, -1), (Sector.MINUS_TW, -I, -1)]
    return [(Sector.PLUS, I, -1), (Sector.MINUS, I, -1)]


def n2_partner(label: ModuleLabel) -> ModuleLabel:
    if label.m < 1:
        raise LabelError("the N=2 partner needs m >= 1")
    return ModuleLabel.n2(label.M, label.m - 1, label.m2, label.k1, label.k1 + label.k2)


def n2_times_theta(label: ModuleLabel, sector: Sector, zsign: int, qmax, zeta_lo) -> WindowSeries:
    """ch^{N=2}(tau, zsign z) * theta_ab(tau, z) as a window series."""
    qmax = rat(qmax)
    a, b = sector.theta_ab
    if zsign == 1:
        base = n2_character(label, sector, qmax + 1)
        th = theta(a, b, qmax - min(base.min_q, Fraction(0)) + 1)
        return WindowSeries.from_poly(multiply(base, th, qmax), zeta_lo)
    return n2_at_minus_z(label, sector, qmax, zeta_lo, times_theta=True)


def n2n4_relation_check(label: ModuleLabel, qmax=6, window=(-6, 6)) -> list[VerificationReport]:
    """ch^{N=4} theta11(2z) = c ch^{N=2}(tau, +-z) theta_ab(z) on the window."""
    qmax = rat(qmax)
    lo, hi = rat(window[0]), rat(window[1])
    partner = n2_partner(label)
    out = []
    for sector, c, zsign in n2n4_cases(label):
        lhs = times_poly_factor(label, sector, qmax, lo, lambda top: theta(1, 1, top, zscale=2))
        rhs = n2_times_theta(partner, sector, zsign, qmax, lo - 1).scale(c)
        rep = ps_equal(lhs, rhs, order=qmax, window=(lo, hi))
        zt = "z" if zsign == 1 else "-z"
        out.append(_named(rep, f"N2-N4 {label} {sector.symbol}: ch4 theta11(2z) = {c} ch2({zt}) theta"))
    return out


def n2n4_suite(max_M=4, max_m=3, qmax=6) -> list[VerificationReport]:
    out = []
    for M, m in coprime_levels(max_M, max_m):
        for label in n4_labels(M, m):
            out.extend(n2n4_relation_check(label, qmax))
    return out


# -- product forms --------------------------------------------------------------------


def _product(factors, qmax) -> PolySeries:
    """prod (1 + c zeta^x q^e) over (c, x, e) with the finitely many factors that matter."""
    qmax = rat(qmax)
    out = PolySeries.one(qmax)
    for c, x, e in factors:
        if e > qmax:
            continue
        out = multiply(out, PolySeries([(Fraction(0), Fraction(0), 1), (e, x, c)], qmax), qmax)
    return out


def product_form_factors(sector: Sector, qmax):
    """Numerator factors, the common denominator factors and the leading monomial."""
    n_top = int(qmax) + 2
    sgn = 1 if sector.plus else -1
    if not sector.twisted:
        num = [(sgn, x, Fraction(2 * n - 1, 2)) for n in range(1, n_top + 1) for x in (1, -1)]
    else:
        num = [(sgn, 1, Fraction(n - 1)) for n in range(1, n_top + 1)]
        num += [(sgn, -1, Fraction(n)) for n in range(1, n_top + 1)]
    den = [(-1, 2, Fraction(n - 1)) for n in range(1, n_top + 1)]
    den += [(-1, -2, Fraction(n)) for n in range(1, n_top + 1)]
    return num, den


def product_form_check(label: ModuleLabel, sector: Sector, qmax=6, window=(-6, 6)) -> VerificationReport:
    """ch^{N=4} x prod(1 - zeta^2 q^{n-1})(1 - zeta^-2 q^n) = prefactor x ch^{N=2}(+-z) x numerator product."""
    qmax = rat(qmax)
    lo, hi = rat(window[0]), rat(window[1])
    cases = {s: (c, zs) for s, c, zs in n2n4_cases(label)}
    if sector not in cases:
        raise LabelError(f"no product form for {label} in sector {sector.symbol}")
    zsign = cases[sector][1]
    num, den = product_form_factors(sector, qmax)
    lhs = times_poly_factor(label, sector, qmax, lo, lambda top: _product(den, top))
    partner = n2_partner(label)
    if not sector.twisted:
        scalar, shift = -ONE, (Fraction(-1, 8), Fraction(1))
    else:
        scalar = -ONE if sector.plus else -I
        shift = (Fraction(0), HALF)
    nprod = _product(num, qmax + 2)
    if zsign == 1:
        n2 = WindowSeries.from_poly(n2_character(partner, sector, qmax + 1), lo - _margin(nprod) - 1)
    else:
        n2 = n2_at_minus_z(partner, sector, qmax + 1, lo - _margin(nprod) - 1)
    rhs = multiply(n2, nprod, qmax + Fraction(1, 8)).shift(*shift).scale(scalar)
    return _named(ps_equal(lhs, rhs.truncate(qmax), order=qmax, window=(lo, hi)),
                  f"product form {label} {sector.symbol}")


def n2_at_minus_z(label: ModuleLabel, sector: Sector, qmax, zeta_lo, times_theta: bool = False) -> WindowSeries:
    """ch^{N=2}(tau, -z), optionally times theta_ab(tau, z), expanded in the domain |zeta| > 1.

    At -z the Psi factor lives on the opposite slice, whose a = 0 rows expand
    towards 1/zeta like everything else on the N=4 side.
    """
    qmax = rat(qmax)
    a, b = sector.theta_ab
    spec = n2_psi_spec(label, sector).with_(orientation=-1)
    mu = psi_min_q(spec)
    top = qmax + 2 - min(mu, Fraction(0))
    th = theta(a, b, top, zscale=-1)
    if times_theta:
        th = multiply(th, theta(a, b, top + 1))
    psi = psi_series(spec, qmax + 2)
    try:
        num = WindowSeries.from_poly(psi.times_poly(th), zeta_lo)
    except NotDivisible:
        num = multiply(psi.to_window(zeta_lo - _margin(th)), th)
    inv = scalar_inverse(power(eta_series(1, qmax - min(num.min_q, Fraction(0)) + 2), 3))
    return multiply(num, inv, qmax).scale(n2_prefactor(label, sector))


# -- M = 2 and N=2 specials --------------------------------------------------------------


M2_THETA_RATIOS = {
    Sector.PLUS: ((0, 0), I),
    Sector.MINUS: ((0, 1), I),
    Sector.PLUS_TW: ((1, 0), I),
    Sector.MINUS_TW: ((1, 1), ONE),
}


def m2_special_suite(qmax=8, window=(-6, 6)) -> list[VerificationReport]:
    """The c = -9 module: theta ratios, product forms and the triple sums."""
    qmax = rat(qmax)
    lo, hi = rat(window[0]), rat(window[1])
    label = ModuleLabel.n4(2, 1, 0, 0, 0, "I")
    out = []
    for sector in SECTORS:
        (a, b), c = M2_THETA_RATIOS[sector]
        lhs = times_poly_factor(label, sector, qmax, lo, lambda top: theta(1, 1, top, zscale=2))
        rhs = theta(a, b, qmax).scale(c)
        out.append(_named(ps_equal(lhs, rhs, order=qmax, window=(lo, hi)),
                          f"M=2 {sector.symbol}: ch theta11(2z) = {c} theta{a}{b}(z)"))
        out.append(product_form_check(label, sector, qmax, window))
    for twisted, sector in ((False, Sector.PLUS), (True, Sector.PLUS_TW)):
        ref = n4_character(label, sector, qmax, window=(lo, hi))
        if not twisted:
            s = m2_triple_sum(False, qmax, (lo, hi))
            out.append(_named(ps_equal(s, ref, order=qmax, window=(lo, hi)), f"M=2 {sector.symbol}: triple sum"))
            continue
        for v in ("printed", "corrected"):
            s = m2_triple_sum(True, qmax, (lo, hi), v)
            out.append(_named(ps_equal(s, ref, order=qmax, window=(lo, hi)),
                              f"M=2 {sector.symbol}: triple sum ({v})", variant=v))
    return out


N2_SPECIAL_VALUES = {Sector.PLUS: ONE, Sector.MINUS: ONE, Sector.PLUS_TW: ONE, Sector.MINUS_TW: I}


def n2_special_suite(qmax=8) -> list[VerificationReport]:
    qmax = rat(qmax)
    label = ModuleLabel.n2(2, 0, 0, 0, 0)
    out = []
    for sector in SECTORS:
        ch = n2_character(label, sector, qmax)
        want = PolySeries.one(qmax).scale(N2_SPECIAL_VALUES[sector])
        out.append(_named(ps_equal(ch, want, order=qmax),
                          f"N2 (M,m)=(2,0) {sector.symbol} = {N2_SPECIAL_VALUES[sector]}"))
    return out


# -- two paths ---------------------------------------------------------------------------


def two_path_check(label: ModuleLabel, sector: Sector, qmax=6, window=(-5, 5)) -> list[VerificationReport]:
    """Every textual reading of the quadruple sum against the kernel path."""
    qmax = rat(qmax)
    lo, hi = rat(window[0]), rat(window[1])
    ref = n4_character(label, sector, qmax, window=(lo, hi))
    fam = family_of(label, sector)
    out = []
    for v in variants(fam):
        name = f"two-path {label} {sector.symbol} [{v}]"
        try:
            s = n4_string_expansion(label, sector, qmax, (lo, hi), v)
        except ArithmeticError as exc:
            out.append(VerificationReport(name, False, f"diverges: {exc}", None,
                                          {"family": fam, "variant": v}))
            continue
        out.append(_named(ps_equal(s, ref, order=qmax, window=(lo, hi)), name, family=fam, variant=v))
    return out


def two_path_suite(max_M=4, max_m=2, qmax=6, window=(-5, 5)) -> list[VerificationReport]:
    out = []
    for M, m in coprime_levels(max_M, max_m):
        for label in n4_labels(M, m):
            for sector in (Sector.PLUS, Sector.PLUS_TW):
                out.extend(two_path_check(label, sector, qmax, window))
    return out


def variant_verdict(reports: list[VerificationReport]) -> dict[str, dict[str, str]]:
    """Per family and variant: "holds", "fails" or "mixed" over the sampled labels."""
    table: dict[str, dict[str, list[bool]]] = {}
    for r in reports:
        fam, v = r.data.get("family"), r.data.get("variant")
        if fam is None:
            continue
        table.setdefault(fam, {}).setdefault(v, []).append(r.passed)
    out = {}
    for fam in FAMILIES:
        if fam not in table:
            continue
        out[fam] = {v: ("holds" if all(x) else "fails" if not any(x) else "mixed")
                    for v, x in table[fam].items()}
    return out


def two_path_resolved(reports: list[VerificationReport]) -> bool:
    """Each family has a reading that holds for every sampled label."""
    verdict = variant_verdict(reports)
    return bool(verdict) and all("holds" in vs.values() for vs in verdict.values())


def describe_variant(label: ModuleLabel, sector: Sector, variant: str) -> str:
    f = string_form(label, sector, variant)
    sgn = "+" if f.n1_sign > 0 else "-"
    off = f" + {f.offset}" if f.offset else ""
    return f"zeta^({f.prefactor}) ... q^({f.coeff} (n {sgn} n1 + 2 n2{off})^2)"


# -- conformal data -----------------------------------------------------------------------


def conformal_equivalence_suite(max_M=6, max_m=3) -> list[VerificationReport]:
    """(I,k1,k2) ~ (IV,k1+1,k2) and (III,k1,k2) ~ (II,k1+1,k2), then the h-ordering."""
    out = []
    for M, m in coprime_levels(max_M, max_m, min_M=1):
        for src, dst in (("I", "IV"), ("III", "II")):
            for k1, k2 in omega_domain(M, src):
                for m2 in range(m + 1):
                    for tw in (False, True):
                        a = _raw_data(M, m, m2, k1, k2, src, tw)
                        b = _raw_data(M, m, m2, k1 + 1, k2, dst, tw)
                        ok = a == b
                        out.append(VerificationReport(
                            f"equivalence M={M} m={m} m2={m2} ({src},{k1},{k2}) ~ ({dst},{k1 + 1},{k2})"
                            f"{' tw' if tw else ''}", ok, f"{a} vs {b}"))
        for heart in ("I", "II", "III", "IV"):
            for k1, k2 in omega_domain(M, heart):
                for m2 in range(m):
                    for tw in (False, True):
                        h0 = _raw_data(M, m, m2, k1, k2, heart, tw).h
                        h1 = _raw_data(M, m, m2 + 1, k1, k2, heart, tw).h
                        if not tw or heart == "I":
                            ok, rule = h0 > h1, ">"
                        elif heart == "III":
                            ok, rule = (h0 > h1, ">") if k1 > 0 else (h0 == h1, "=")
                        else:
                            continue
                        out.append(VerificationReport(
                            f"h-ordering M={M} m={m} ({heart},{k1},{k2}) m2={m2}{' tw' if tw else ''}: "
                            f"h(m2) {rule} h(m2+1)", ok, f"{h0} vs {h1}"))
    return out


def _raw_data(M, m, m2, k1, k2, heart, twisted):
    """Conformal data without the label's m2 <= m-1 restriction (the lemmas allow m2 = m)."""
    label = ModuleLabel.n4(M, m, 0, k1, k2, heart)
    return conformal_data(label, twisted, m2_shift=m2)


# -- modular (numeric) ---------------------------------------------------------------


DEFAULT_SEED = 20240917


def modular_suite(seed: int = DEFAULT_SEED, points: int = 3, aux_points: int = 5, levels=(2, 3),
                  s_variant: str = "printed", aux_variant: str = "printed") -> list[VerificationReport]:
    """S and T for every m = 1 label and sector, then the denominator and Psi auxiliaries.

    ``s_variant`` selects the S-matrix ("printed" or "derived"); ``aux_variant`` selects
    the denominator laws. T and the Psi identities have a single reading.
    """
    out: list[VerificationReport] = []
    pts = seeded_points(seed, points, 1e-8)
    for M in levels:
        for lab in m1_labels(M):
            for sec in SECTORS:
                for p in pts:
                    out.append(s_check(lab, sec, p, s_variant))
                    out.append(t_check(lab, sec, p))
    aux = seeded_points(seed + 1, aux_points, 1e-9)
    eps_values = (Fraction(0), HALF)
    for p in aux:
        for e in eps_values:
            for ep in eps_values:
                out.append(aux_denominator_s(e, ep, p, aux_variant))
                out.append(aux_denominator_t(e, ep, p, aux_variant))
    specs = []
    for M in levels:
        for lab in m1_labels(M):
            for sec in SECTORS:
                spec = n4_psi_spec(lab, sec)
                if spec not in specs:
                    specs.append(spec)
    for p in aux:
        for spec in specs:
            out.append(aux_half_shift(spec, p))
            if spec.s.denominator == 1:
                out.append(aux_index_swap(spec, p))
    return out


# -- suite registry ------------------------------------------------------------------------


READINGS = ("printed", "corrected")


def _run_leading(qmax, reading, seed):
    return leading_term_suite(variant="stated" if reading == "printed" else "corrected")


def _run_m2(qmax, reading, seed):
    reps = m2_special_suite(**({} if qmax is None else {"qmax": qmax}))
    want = "printed" if reading == "printed" else "corrected"
    return [r for r in reps if r.data.get("variant") in (None, want)]


def _run_modular(qmax, reading, seed):
    v = "printed" if reading == "printed" else "derived"
    return modular_suite(seed=seed, s_variant=v, aux_variant=v)


def _with_qmax(fn):
    return lambda qmax, reading, seed: fn(**({} if qmax is None else {"qmax": qmax}))


SUITES = {
    "theta-anchors": _with_qmax(theta_anchor_suite),
    "kernel": _with_qmax(kernel_suite),
    "psi-closed-forms": _with_qmax(psi_closed_form_suite),
    "psi-oracle": _with_qmax(psi_oracle_suite),
    "leading-terms": _run_leading,
    "n2-n4": _with_qmax(n2n4_suite),
    "two-path": _with_qmax(two_path_suite),
    "m2-specials": _run_m2,
    "n2-specials": _with_qmax(n2_special_suite),
    "modular": _run_modular,
    "conformal": lambda qmax, reading, seed: conformal_equivalence_suite(),
}


def run_suite(name: str, qmax=None, reading: str = "printed", seed: int = DEFAULT_SEED) -> dict:
    """Run one named suite and summarize it.

    ``reading`` picks the printed or corrected form where a suite has both. The
    two-path suite always runs every reading and passes when each family has one that holds.
    """
    if name not in SUITES:
        raise KeyError(name)
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    reports = SUITES[name](qmax, reading, seed)
    summary: dict = {"suite": name, "reading": reading, "cases": len(reports)}
    if name == "two-path":
        summary["pass"] = two_path_resolved(reports)
        summary["verdict"] = variant_verdict(reports)
        failing = [r for r in reports if not r.passed and r.data.get("variant") == "printed"]
    else:
        failing = [r for r in reports if not r.passed]
        summary["pass"] = not failing
    summary["failed"] = len(failing)
    summary["counterexamples"] = [r.to_dict() for r in failing[:3]]
    return summary
