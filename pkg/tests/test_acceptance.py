"""The eleven acceptance criteria, each at its stated settings.

Criteria that compare against a printed formula run the printed reading. Where a
printed formula is wrong, a companion test runs the corrected reading and the
criterion line reports both.
"""

import time

from superchar.checks import (conformal_equivalence_suite, describe_variant, kernel_suite,
                              leading_term_suite, m2_special_suite, modular_suite, n2_special_suite,
                              n2n4_suite, psi_closed_form_suite, psi_oracle_suite, theta_anchor_suite,
                              two_path_resolved, two_path_suite, variant_verdict)
from superchar.characters import ModuleLabel, Sector


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def _failures(reports):
    return [r for r in reports if not r.passed]


def _line(reports, seconds, extra=""):
    bad = _failures(reports)
    text = f"{len(reports) - len(bad)}/{len(reports)} cases, {seconds:.1f}s"
    if bad:
        text += f"; first failure: {bad[0].check}: {bad[0].detail}"
    return text + extra


def test_criterion_01_theta_anchors(criterion):
    reports, dt = _timed(theta_anchor_suite, 8)
    ok = bool(reports) and not _failures(reports) and dt < 5
    criterion(1, ok, "theta anchors to q^8: " + _line(reports, dt))
    assert ok


def test_criterion_02_kernel(criterion):
    reports, dt = _timed(kernel_suite, 6, (-6, 6))
    ok = bool(reports) and not _failures(reports)
    criterion(2, ok, "kernel expansion x theta11 = eta^3 on [-6,6] to q^6: " + _line(reports, dt))
    assert ok


def test_criterion_03_psi_closed_forms(criterion):
    reports, dt = _timed(psi_closed_form_suite, 6)
    ok = len(reports) == 4 and not _failures(reports)
    criterion(3, ok, "Psi closed forms at (M,m,s)=(2,1,0) to q^6: " + _line(reports, dt))
    assert ok


def test_criterion_04_psi_oracle(criterion):
    reports, dt = _timed(psi_oracle_suite, 5, 3, 6)
    ok = bool(reports) and not _failures(reports)
    criterion(4, ok, "Psi series vs (l,n) enumeration, M<=5 m<=3, q^6: " + _line(reports, dt))
    assert ok


def test_criterion_05_leading_terms(criterion):
    reports, dt = _timed(leading_term_suite, 5, 3, "stated")
    corrected, _ = _timed(leading_term_suite, 5, 3, "corrected")
    ok = bool(reports) and not _failures(reports) and dt < 60
    extra = (f" | corrected degenerate factor: {len(corrected) - len(_failures(corrected))}/{len(corrected)}")
    criterion(5, ok, "leading terms as stated, M<=5 m<=3: " + _line(reports, dt, extra))
    assert ok


def test_criterion_05_corrected_degenerations():
    reports = leading_term_suite(5, 3, "corrected")
    assert reports and not _failures(reports)


def test_criterion_06_n2_n4(criterion):
    reports, dt = _timed(n2n4_suite, 4, 3, 6)
    ok = bool(reports) and not _failures(reports)
    criterion(6, ok, "N=2 <-> N=4 relation, M<=4 m<=3, q^6: " + _line(reports, dt))
    assert ok


def test_criterion_07_two_path(criterion):
    reports, dt = _timed(two_path_suite, 4, 2, 6, (-5, 5))
    verdict = variant_verdict(reports)
    ok = two_path_resolved(reports)
    holds = {fam: [v for v, r in vs.items() if r == "holds"] for fam, vs in verdict.items()}
    text = "; ".join(f"{fam}: {'/'.join(h) or 'none'} holds" for fam, h in holds.items())
    sample = ModuleLabel.n4(4, 1, 0, 0, 1, "III")
    form = describe_variant(sample, Sector.PLUS_TW, holds.get("III-tw", ["printed"])[0])
    criterion(7, ok, f"two paths on [-5,5] to q^6, {len(reports)} comparisons, {dt:.1f}s: {text}"
                     f" (III-tw at M=4 reads {form})")
    assert ok
    assert verdict["I"]["printed"] == "holds" and verdict["I-tw"]["printed"] == "holds"


def test_criterion_08_m2_specials(criterion):
    reports, dt = _timed(m2_special_suite, 8, (-6, 6))
    printed = [r for r in reports if r.data.get("variant") != "corrected"]
    corrected = [r for r in reports if r.data.get("variant") == "corrected"]
    ok = bool(printed) and not _failures(printed)
    extra = f" | corrected twisted triple sum: {'pass' if all(corrected) else 'fail'}"
    criterion(8, ok, "M=2 theta ratios, product forms, triple sums on [-6,6] to q^8: "
                     + _line(printed, dt, extra))
    assert ok


def test_criterion_08_corrected_twisted_triple_sum():
    reports = [r for r in m2_special_suite(8, (-6, 6)) if r.data.get("variant") != "printed"]
    assert reports and not _failures(reports)


def test_criterion_09_n2_specials(criterion):
    reports, dt = _timed(n2_special_suite, 8)
    ok = len(reports) == 4 and not _failures(reports)
    criterion(9, ok, "N=2 (M,m)=(2,0) characters 1, 1, 1, i to q^8: " + _line(reports, dt))
    assert ok


def test_criterion_10_modular(criterion):
    reports, dt = _timed(modular_suite, points=3, aux_points=5, levels=(2, 3))
    derived, _ = _timed(modular_suite, points=3, aux_points=5, levels=(2, 3),
                        s_variant="derived", aux_variant="derived")
    ok = bool(reports) and not _failures(reports) and dt < 120
    groups = {}
    for r in reports:
        name = r.check.split("[")[0]
        g = groups.setdefault(name, [0, 0])
        g[0] += r.passed
        g[1] += 1
    by_law = ", ".join(f"{k} {p}/{n}" for k, (p, n) in groups.items())
    extra = f" | by law: {by_law} | derived S and denominator laws: {len(derived) - len(_failures(derived))}/{len(derived)}"
    criterion(10, ok, "S/T at 3 points (<1e-8), auxiliaries at 5 points (<1e-9): " + _line(reports, dt, extra))
    assert ok


def test_criterion_10_derived_laws():
    reports = modular_suite(points=3, aux_points=5, levels=(2, 3), s_variant="derived", aux_variant="derived")
    assert reports and not _failures(reports)


def test_criterion_11_conformal(criterion):
    reports, dt = _timed(conformal_equivalence_suite, 6, 3)
    ok = bool(reports) and not _failures(reports)
    criterion(11, ok, "(I,k1,k2)~(IV,k1+1,k2), (III,k1,k2)~(II,k1+1,k2) and h-ordering, M<=6: "
                      + _line(reports, dt))
    assert ok
