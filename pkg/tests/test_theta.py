"""Theta generators against independent oracles, plus the transformation
identity grids."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qsv.series import GR_ONE, GaussianRational, QZSeries
from qsv.theta import (
    J,
    J1,
    ThetaArg,
    big_theta,
    eta,
    euler_product,
    jacobi_theta,
    mono,
    neg_qmono,
    product_rearrangements,
    qmono,
    theta,
    theta_identity_suite,
)

PENTAGONAL = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}


def test_pentagonal_series_vs_euler_product():
    # bilateral triple-product sum for (q)_inf against the direct product
    j1 = J1(1, 30)
    got = {int(e): int(str(c)) for e, c in j1.q_coefficients()}
    assert got == PENTAGONAL
    assert j1.equal_up_to(euler_product(1, 30), 30)[0]


def test_theta_at_one_vanishes():
    assert len(jacobi_theta(mono(0), 1, 25)) == 0


def test_theta_at_minus_one_doubles():
    lhs = jacobi_theta(mono(0, unit=2), 1, 40)
    rhs = (J1(2, 40) ** 2 * J1(1, 40).invert_unit()).scale(GaussianRational(2))
    assert lhs.equal_up_to(rhs, 38)[0]


def test_eta_definition():
    e = eta(30)
    shifted = e.times_monomial(GR_ONE, Fraction(-1, 24), 0)
    assert shifted.equal_up_to(euler_product(1, 29), 29)[0]


def test_big_theta_lowest_term():
    bt = big_theta(1, 2, 10)
    eq, ez, c = next(bt.iter_terms())
    assert eq == Fraction(1, 8)
    assert ez == Fraction(-1, 2)
    assert str(c) == "1"
    assert big_theta(0, 1, 10).coefficient(0, 0) == GR_ONE


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=6),
       st.integers(min_value=1, max_value=4),
       st.sampled_from([0, 2]))
def test_jtp_bilateral_matches_product(a, b_extra, unit):
    """Sum form of j(x;q^b) against its Pochhammer product form."""
    b = a + b_extra
    if unit == 0 and a % b == 0:
        return  # zero series; the product telescopes to zero
    T = Fraction(20)
    from qsv.series import unit_i_power
    x = ThetaArg(unit, Fraction(a))
    lhs = jacobi_theta(x, b, T)

    def factor(k, u):
        return QZSeries.one(T) + QZSeries.monomial(-unit_i_power(u), k, 0, T)

    # (x)_inf (q^b/x)_inf (q^b;q^b)_inf expanded as finite products
    prod = euler_product(b, T)
    k = a
    while k < T:  # (x; q^b)
        prod = prod * factor(k, x.unit)
        k += b
    k = b - a
    while k < T:  # (q^b/x; q^b)
        prod = prod * factor(k, (-x.unit) % 4)
        k += b
    assert lhs.equal_up_to(prod, T)[0]


def test_identity_suite_all_pass():
    results = theta_identity_suite(30)
    bad = [r for r in results if r.status == "fail"]
    assert not bad, bad[:3]
    names = {r.identity for r in results}
    assert "quintuple-product" in names and "weierstrass-three-term" in names


def test_product_rearrangements_all_pass():
    results = product_rearrangements(60)
    assert all(r.status == "pass" for r in results)
    assert len(results) == 8


def test_ellipticity_on_random_monomials():
    from qsv.series import unit_i_power
    for (u, a) in ((0, Fraction(1, 3)), (2, Fraction(5, 4)), (1, Fraction(1, 2))):
        x = ThetaArg(u, a)
        jx = theta(x, 1, 30)
        for n in (-2, -1, 1, 2):
            lhs = theta(ThetaArg(u, a + n), 1, 30)
            coeff = unit_i_power(2 * n) * (x.coeff ** (-n))
            rhs = jx.times_monomial(coeff, Fraction(-n * (n - 1), 2) - n * a, 0)
            assert lhs.equal_up_to(rhs, 24)[0], (u, a, n)


def test_J_shorthands():
    assert J(1, 2, 20).equal_up_to(
        J1(1, 22) ** 2 * J1(2, 22).invert_unit(), 18)[0]
    assert J(1, 4, 20, overline=True).equal_up_to(
        jacobi_theta(neg_qmono(1), 4, 20), 20)[0]


def test_signed_base_theta():
    # j(x;-q) J_{1,4} = j(x;q^2) j(-qx;q^2)
    x = qmono(Fraction(1, 2))
    lhs = jacobi_theta(x, 1, 25, base_unit=2) * J(1, 4, 25)
    rhs = jacobi_theta(x, 2, 25) * jacobi_theta(ThetaArg(2, Fraction(3, 2)), 2, 25)
    assert lhs.equal_up_to(rhs, 22)[0]
