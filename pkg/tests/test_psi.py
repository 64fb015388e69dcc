from fractions import Fraction

import pytest

from superchar.characters import ModuleLabel, Sector, n2_labels, n2_psi_spec, n4_labels, n4_psi_spec
from superchar.checks import (character_psi_specs, psi_bruteforce, psi_closed_form_suite,
                              psi_leading_check, psi_oracle_check)
from superchar.exact import GaussRat, WindowSeries, ps_equal
from superchar.numeric import EvalPoint, psi_numeric
from superchar.psi import PsiSpec, psi_family, psi_leading, psi_min_q, psi_series

F = Fraction
HALF = F(1, 2)

# Psi_1 - Psi_2 for N4(M=3, m=1, m2=0, (0,0), I), by direct (l, n) enumeration, q <= 2, zeta in [-3, 3]
FROZEN_PLUS = {
    (F(1, 12), F(0)): 1, (F(7, 12), F(-1)): -1, (F(7, 12), F(1)): -1,
    (F(13, 12), F(-2)): 1, (F(13, 12), F(2)): 1, (F(19, 12), F(-3)): -1, (F(19, 12), F(3)): -1,
}
FROZEN_PLUS_TW = {
    (F(0), F(-8, 3)): 1, (F(0), F(-5, 3)): -1, (F(0), F(-2, 3)): 1,
    (F(1), F(-2, 3)): -1, (F(2), F(-5, 3)): 1, (F(2), F(1, 3)): -1,
}


def _table(w: WindowSeries, zmax=3):
    return {(q, z): c for q, z, c in w.terms() if z <= zmax}


@pytest.mark.parametrize("sector, frozen", [(Sector.PLUS, FROZEN_PLUS), (Sector.PLUS_TW, FROZEN_PLUS_TW)])
def test_frozen_psi_tables(sector, frozen):
    spec = n4_psi_spec(ModuleLabel.n4(3, 1, 0, 0, 0, "I"), sector)
    got = _table(psi_series(spec, 2).to_window(-3))
    assert got == {k: GaussRat(v) for k, v in frozen.items()}


def test_twisted_degenerate_row_is_a_geometric_tail():
    # q^0 row: zeta^{-2/3} (1 - zeta^{-1} + zeta^{-2} - ...) = zeta^{-2/3} / (1 + zeta^{-1})
    spec = n4_psi_spec(ModuleLabel.n4(3, 1, 0, 0, 0, "I"), Sector.PLUS_TW)
    w = psi_series(spec, 0).to_window(-20)
    exps = sorted((z, c) for q, z, c in w.terms() if q == 0)
    assert [z for z, _ in exps] == [F(-2, 3) - n for n in range(19, -1, -1)]
    assert all(c == GaussRat((-1) ** int(F(-2, 3) - z)) for z, c in exps)


def test_closed_forms():
    reports = psi_closed_form_suite(6)
    assert len(reports) == 4 and all(reports)


@pytest.mark.parametrize("spec", character_psi_specs(3, 2), ids=str)
def test_series_matches_enumeration(spec):
    assert psi_oracle_check(spec, qmax=4).passed


def test_branch_enumeration_agrees_with_numeric_sum():
    spec = n4_psi_spec(ModuleLabel.n4(3, 2, 1, 0, 1, "I"), Sector.PLUS)
    tau, z = 0.1 + 1.7j, 0.21 - 0.02j
    series = psi_series(spec, 8).to_window(-30)
    val = psi_numeric(spec, tau, z)[0]
    assert abs(series.eval(tau, z) - val) < 1e-6 * max(1.0, abs(val))


def test_min_q_is_attained_for_n4_specs():
    for M, m in ((3, 1), (3, 2), (4, 1)):
        for lab in n4_labels(M, m):
            for sec in Sector:
                spec = n4_psi_spec(lab, sec)
                assert psi_series(spec, psi_min_q(spec) + 1).min_q == psi_min_q(spec)


def test_spec_validation():
    with pytest.raises(ValueError, match="coprime"):
        PsiSpec(4, F(2), F(0), HALF, HALF, HALF, HALF)
    with pytest.raises(ValueError, match="eps' \\+ Z"):
        PsiSpec(3, F(1), F(0), HALF, HALF, F(1), HALF)
    with pytest.raises(ValueError, match="outside"):
        PsiSpec(3, F(1), F(0), HALF, HALF, F(7, 2), HALF)


def test_family_identification():
    lab = ModuleLabel.n4(5, 2, 1, 0, 2, "III")
    assert psi_family(n4_psi_spec(lab, Sector.PLUS)) == ("III", 1, 0, 2)
    assert psi_family(n4_psi_spec(lab, Sector.MINUS_TW)) == ("III-tw", 1, 0, 2)


def test_nondegenerate_leading_terms_hold_as_stated():
    for M, m in ((3, 1), (4, 3), (5, 2)):
        for lab in n4_labels(M, m):
            for sec in Sector:
                spec = n4_psi_spec(lab, sec)
                if psi_leading(spec).pole is None:
                    assert psi_leading_check(spec, "stated").passed, (lab, sec)


def test_degenerate_pole_orientation():
    # twisted III with k1 = 0: the stated 1/(1 + zeta^{-1}) does not match, 1/(1 + zeta) does
    spec = n4_psi_spec(ModuleLabel.n4(4, 1, 0, 0, 1, "III"), Sector.PLUS_TW)
    assert psi_leading(spec).pole is not None
    assert not psi_leading_check(spec, "stated").passed
    assert psi_leading_check(spec, "corrected").passed


def test_min_q_bounds_n2_specs():
    # j + k = M makes Psi vanish, so the bound need not be attained
    for lab in n2_labels(3, 1):
        for sec in Sector:
            spec = n2_psi_spec(lab, sec)
            assert psi_series(spec, 2).min_q >= psi_min_q(spec)
