from fractions import Fraction

import pytest

from superchar.exact import GaussRat, PolySeries, multiply, ps_equal, scalar_inverse
from superchar.theta import (eta_quotient, eta_quotient_leading, eta_series, power, theta,
                             verify_theta_identities)

# p(n), n = 0..20
PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]
# r_2(n): representations as a sum of two squares, n = 0..12
R2 = [1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8, 0, 0]


def at_zeta_one(s: PolySeries) -> dict[Fraction, GaussRat]:
    out = {}
    for q, _, c in s.terms():
        out[q] = out.get(q, GaussRat(0)) + c
    return {q: c for q, c in out.items() if not c.is_zero()}


def test_inverse_eta_counts_partitions():
    inv = scalar_inverse(eta_series(1, 21))
    for n, p in enumerate(PARTITIONS):
        assert inv.coeff(n - Fraction(1, 24)) == GaussRat(p)


def test_eta_cubed_jacobi():
    lhs = power(eta_series(1, 8), 3, 8)
    rhs = PolySeries([(Fraction((2 * n + 1) ** 2, 8), 0, (-1) ** n * (2 * n + 1)) for n in range(8)], 8)
    assert ps_equal(lhs, rhs, order=8).passed


def test_theta00_squared_at_zero_counts_two_squares():
    sq = at_zeta_one(power(theta(0, 0, 7), 2, 6))
    for n, r in enumerate(R2):
        assert sq.get(Fraction(n, 2), GaussRat(0)) == GaussRat(r)


def test_triangular_eta_quotient():
    # eta(2tau)^2/eta(tau) = q^{1/8} sum_{n >= 0} q^{n(n+1)/2}
    lhs = eta_quotient([(2, 2), (1, -1)], 8)
    rhs = PolySeries([(Fraction(1, 8) + n * (n + 1) // 2, 0, 1) for n in range(5)], 8)
    assert ps_equal(lhs, rhs, order=8).passed
    assert eta_quotient_leading([(2, 2), (1, -1)]) == Fraction(1, 8)


@pytest.mark.parametrize("a, b, parity", [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)])
def test_theta_parity_in_z(a, b, parity):
    t = theta(a, b, 6)
    assert ps_equal(t.reflect(), t.scale(parity)).passed


def test_theta11_leading_term():
    q, z, c = theta(1, 1, 4).leading()
    # i q^{1/8} (zeta^{1/2} - zeta^{-1/2}) = -2 q^{1/8} sin(pi z) at lowest order
    assert (q, z, c) == (Fraction(1, 8), Fraction(1, 2), GaussRat(0, 1))


def test_eta_rejects_bad_scale():
    with pytest.raises(ValueError):
        eta_series(0, 2)


def test_theta_anchor_identities():
    reports = verify_theta_identities(6)
    assert reports and all(r.passed for r in reports), [r.check for r in reports if not r.passed]


@pytest.mark.parametrize("factors, lead", [([(2, 5), (1, -2), (4, -2)], Fraction(0)),
                                           ([(2, 5), (1, -8), (4, -2)], Fraction(-1, 4)),
                                           ([(4, 2), (2, -2), (2, 1)], Fraction(1, 4)),
                                           ([(1, 3)], Fraction(1, 8))])
def test_eta_quotient_leading_terms(factors, lead):
    s = eta_quotient(factors, 4)
    assert s.leading() == (lead, 0, GaussRat(1))
    assert eta_quotient_leading(factors) == lead


def test_theta11_at_doubled_tau_shifted_by_tau():
    # theta11(2tau, tau) = -i q^{-1/4} (1 - 2q + 2q^4 - ...)
    t = theta(1, 1, 4, qscale=2, zscale=0, tshift=1)
    want = PolySeries([(Fraction(-1, 4), 0, GaussRat(0, -1)), (Fraction(3, 4), 0, GaussRat(0, 2)),
                       (Fraction(15, 4), 0, GaussRat(0, -2))], 4)
    assert ps_equal(t, want, order=4).passed
