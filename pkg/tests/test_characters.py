from fractions import Fraction

import pytest

from superchar.characters import (LabelError, ModuleLabel, Sector, central_charge, character,
                                  conformal_data, n2_character, n4_character, n4_labels, omega_domain)
from superchar.checks import leading_term_check, n2n4_relation_check, product_form_check
from superchar.exact import GaussRat
from superchar.numeric import EvalPoint, eval_character

F = Fraction

# ch(+) of N4(M=2, m=1, m2=0, (0,0), I) from an independent expansion of its product form,
# keyed by (2 (q + 1/8), zeta)
M2_PLUS = {
    (0, -5): 1, (0, -3): 1, (0, -1): 1, (1, -4): 2, (1, -2): 2, (1, 0): 1, (2, -5): 3, (2, -3): 3,
    (2, -1): 2, (2, 1): 1, (3, -4): 6, (3, -2): 5, (3, 0): 3, (3, 2): 1, (4, -5): 11, (4, -3): 10,
    (4, -1): 7, (4, 1): 4, (4, 3): 1, (5, -4): 17, (5, -2): 14, (5, 0): 9, (5, 2): 4, (6, -5): 27,
    (6, -3): 24, (6, -1): 18, (6, 1): 10, (6, 3): 4,
}


def test_m2_character_against_product_oracle():
    ch = n4_character(ModuleLabel.n4(2, 1, 0, 0, 0, "I"), Sector.PLUS, F(23, 8), window=(-6, 6))
    got = {}
    for q, z, c in ch.terms():
        k = 2 * (q + F(1, 8))
        if k <= 6 and -5 <= z <= 3:
            got[(int(k), int(z))] = c
    assert got == {k: GaussRat(v) for k, v in M2_PLUS.items()}


@pytest.mark.parametrize("M, m", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_series_matches_numeric_evaluation(M, m):
    # |zeta| ~ 6.6 sits inside the expansion annulus, so the dropped zeta tail is tiny
    tau, z = 0.13 + 2.0j, 0.21 - 0.3j
    for lab in n4_labels(M, m):
        for sec in Sector:
            ch = n4_character(lab, sec, 4, window=(-14, None))
            want = eval_character(lab, sec, EvalPoint(tau, z))
            assert abs(ch.eval(tau, z) - want) < 1e-9 * abs(want), (lab, sec)


# -- labels --------------------------------------------------------------------------


def test_empty_omega_message():
    with pytest.raises(LabelError, match=r"Ω\^\{\(III\)\} empty for M=2"):
        ModuleLabel.n4(2, 1, 0, 0, 0, "III")


@pytest.mark.parametrize("args, text", [
    ((4, 2, 0, 0, 0, "I"), "gcd"),
    ((3, 1, 1, 0, 0, "I"), "m2"),
    ((4, 1, 0, 1, 1, "I"), "2k1\\+k2 <= M-2"),
    ((4, 1, 0, 0, 0, "III"), "k2 >= 1"),
    ((4, 1, 0, 0, 0, "V"), "heart"),
])
def test_label_violations_name_the_constraint(args, text):
    with pytest.raises(LabelError, match=text):
        ModuleLabel.n4(*args)


def test_omega_sizes():
    assert omega_domain(2, "I") == [(0, 0)]
    assert omega_domain(2, "III") == []
    assert len(omega_domain(6, "I")) == 9
    assert omega_domain(3, "IV") == [(1, 0), (1, 1)]


def test_n2_label_constraints():
    assert ModuleLabel.n2(2, 0, 0, 0, 0)
    with pytest.raises(LabelError, match="k1\\+k2 <= M-1"):
        ModuleLabel.n2(3, 1, 0, 2, 1)


def test_sector_parsing():
    assert Sector.parse("+tw") is Sector.PLUS_TW
    assert Sector.parse("minus_tw") is Sector.MINUS_TW
    with pytest.raises(LabelError):
        Sector.parse("ramond")


# -- conformal data ------------------------------------------------------------------


def test_central_charges():
    assert central_charge(2, 1) == -9
    assert central_charge(3, 1) == -8
    assert central_charge(2, 0, "N2") == 0


def test_conformal_data_examples():
    lab = ModuleLabel.n4(2, 1, 0, 0, 0, "I")
    lead = conformal_data(lab, False, m2_shift=1)
    assert (lead.c, lead.leading_q, lead.s) == (-9, F(-1, 8), -1)
    assert conformal_data(ModuleLabel.n4(3, 1, 0, 0, 0, "I"), False).h == 0


def test_equivalent_hearts_share_data():
    for tw in (False, True):
        a = conformal_data(ModuleLabel.n4(5, 2, 1, 0, 1, "I"), tw)
        b = conformal_data(ModuleLabel.n4(5, 2, 1, 1, 1, "IV"), tw)
        assert a == b
        a = conformal_data(ModuleLabel.n4(5, 2, 1, 0, 2, "III"), tw)
        b = conformal_data(ModuleLabel.n4(5, 2, 1, 1, 2, "II"), tw)
        assert a == b


# -- characters ----------------------------------------------------------------------


@pytest.mark.parametrize("sector, value", [(Sector.PLUS, 1), (Sector.MINUS, 1), (Sector.PLUS_TW, 1),
                                           (Sector.MINUS_TW, GaussRat(0, 1))])
def test_n2_special_values(sector, value):
    ch = n2_character(ModuleLabel.n2(2, 0, 0, 0, 0), sector, 8)
    assert [(q, z, c) for q, z, c in ch.terms()] == [(0, 0, GaussRat.coerce(value))]


def test_character_dispatch():
    assert character(ModuleLabel.n2(2, 0, 0, 0, 0), Sector.PLUS, 2).is_scalar()
    assert character(ModuleLabel.n4(2, 1, 0, 0, 0, "I"), Sector.PLUS, 2).min_q == F(-1, 8)


def test_leading_term_nondegenerate():
    for lab in n4_labels(4, 3):
        for sec in Sector:
            assert leading_term_check(lab, sec, "stated").passed or leading_term_check(lab, sec, "corrected").passed


def test_degenerate_leading_term_needs_corrected_pole():
    lab = ModuleLabel.n4(3, 1, 0, 0, 0, "I")
    assert not leading_term_check(lab, Sector.PLUS_TW, "stated").passed
    assert leading_term_check(lab, Sector.PLUS_TW, "corrected").passed


def test_n2_n4_relation_small():
    assert all(n2n4_relation_check(ModuleLabel.n4(3, 2, 1, 0, 1, "III"), qmax=4))


def test_product_form_small():
    assert product_form_check(ModuleLabel.n4(3, 1, 0, 0, 1, "I"), Sector.MINUS_TW, qmax=4).passed
