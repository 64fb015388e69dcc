from fractions import Fraction

import pytest

from superchar.characters import LabelError, ModuleLabel, Sector, n4_character
from superchar.checks import describe_variant, two_path_check, variant_verdict
from superchar.exact import ps_equal
from superchar.strings import family_of, m2_triple_sum, n4_string_expansion, string_form, variants


def test_families_and_variants():
    lab1 = ModuleLabel.n4(3, 1, 0, 0, 1, "I")
    lab3 = ModuleLabel.n4(3, 1, 0, 0, 1, "III")
    assert family_of(lab1, Sector.PLUS) == "I"
    assert family_of(lab3, Sector.PLUS_TW) == "III-tw"
    assert variants("III-tw") == ("printed", "quarter", "corrected", "k-literal")
    with pytest.raises(LabelError):
        family_of(lab1, Sector.MINUS)


def test_printed_untwisted_i_holds():
    lab = ModuleLabel.n4(3, 2, 1, 0, 1, "I")
    s = n4_string_expansion(lab, Sector.PLUS, 4, (-4, 4))
    ref = n4_character(lab, Sector.PLUS, 4, window=(-4, 4))
    assert ps_equal(s, ref, order=4, window=(-4, 4)).passed


def test_twisted_iii_readings():
    reports = two_path_check(ModuleLabel.n4(4, 1, 0, 0, 1, "III"), Sector.PLUS_TW, qmax=4, window=(-4, 4))
    by_variant = {r.data["variant"]: r for r in reports}
    assert by_variant["corrected"].passed
    assert not by_variant["printed"].passed and "diverges" in by_variant["printed"].detail
    assert not by_variant["k-literal"].passed


def test_untwisted_iii_prefactor():
    reports = two_path_check(ModuleLabel.n4(3, 1, 0, 0, 1, "III"), Sector.PLUS, qmax=4, window=(-4, 4))
    verdict = variant_verdict(reports)
    assert verdict == {"III": {"printed": "fails", "corrected": "holds"}}


def test_describe_variant_text():
    text = describe_variant(ModuleLabel.n4(4, 1, 0, 0, 1, "III"), Sector.PLUS_TW, "corrected")
    assert text.startswith("zeta^(") and "n - n1" in text


def test_m2_triple_sums():
    lo, hi = Fraction(-6), Fraction(6)
    lab = ModuleLabel.n4(2, 1, 0, 0, 0, "I")
    untw = n4_character(lab, Sector.PLUS, 5, window=(lo, hi))
    assert ps_equal(m2_triple_sum(False, 5, (lo, hi)), untw, order=5, window=(lo, hi)).passed
    tw = n4_character(lab, Sector.PLUS_TW, 5, window=(lo, hi))
    assert not ps_equal(m2_triple_sum(True, 5, (lo, hi), "printed"), tw, order=5, window=(lo, hi)).passed
    assert ps_equal(m2_triple_sum(True, 5, (lo, hi), "corrected"), tw, order=5, window=(lo, hi)).passed


def test_string_form_fields():
    f = string_form(ModuleLabel.n4(3, 1, 0, 0, 1, "I"), Sector.PLUS, "printed")
    assert f.family == "I" and f.variant == "printed"
