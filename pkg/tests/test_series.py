"""Ring arithmetic, inversion, substitution and comparison of the series
core, including randomized algebraic properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qsv.series import (
    GR_ONE,
    GaussianRational,
    IllDefinedRootOfUnityPower,
    InsufficientTruncation,
    NotAUnit,
    QZSeries,
)

TR = Fraction(12)

coeffs = st.builds(
    GaussianRational,
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)

exponents = st.fractions(min_value=-3, max_value=8, max_denominator=4)


@st.composite
def series(draw, max_terms=6):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        eq = draw(exponents)
        ez = draw(st.fractions(min_value=-2, max_value=2, max_denominator=2))
        terms[(eq, ez)] = draw(coeffs)
    return QZSeries(terms, TR)


class TestGaussianRational:
    def test_exact_field_ops(self):
        x = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
        y = GaussianRational(Fraction(2, 3), Fraction(1, 6))
        assert (x + y) - y == x
        assert str(x * x.inverse()) == "1"
        assert (x / y) * y == x

    def test_string_forms(self):
        assert str(GaussianRational(0)) == "0"
        assert str(GaussianRational(Fraction(3, 2))) == "3/2"
        assert str(GaussianRational(0, 1)) == "i"
        assert str(GaussianRational(0, -1)) == "-i"
        assert str(GaussianRational(Fraction(1, 2), Fraction(-1, 4))) == "1/2-1/4i"
        assert str(GaussianRational(2, 2)) == "2+2i"

    def test_pow_negative(self):
        x = GaussianRational(0, 1)
        assert x ** 2 == GaussianRational(-1)
        assert x ** -1 == GaussianRational(0, -1)

    @given(coeffs, coeffs, coeffs)
    def test_field_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)


class TestSeriesRing:
    def test_add_cancellation(self):
        one_minus_q = QZSeries({(0, 0): GR_ONE, (1, 0): -GR_ONE}, 10)
        q = QZSeries.monomial(GR_ONE, 1, 0, 10)
        total = one_minus_q + q
        assert len(total) == 1
        assert total.coefficient(0) == GR_ONE

    def test_add_identity(self):
        s = QZSeries({(Fraction(1, 2), 0): GaussianRational(3)}, 10)
        assert (s + QZSeries.zero(10)).equal_up_to(s, 10)[0]

    def test_disjoint_union(self):
        a = QZSeries.monomial(GR_ONE, Fraction(1, 2), 0, 10)
        b = QZSeries.monomial(GR_ONE, Fraction(1, 3), 0, 10)
        total = a + b
        assert len(total) == 2

    def test_geometric_inverse_product(self):
        one_minus_q = QZSeries({(0, 0): GR_ONE, (1, 0): -GR_ONE}, 30)
        geo = QZSeries({(Fraction(k), Fraction(0)): GR_ONE for k in range(30)}, 30)
        assert (one_minus_q * geo).equal_up_to(QZSeries.one(30), 30)[0]

    def test_z_half_powers_multiply(self):
        zh = QZSeries.monomial(GR_ONE, 0, Fraction(1, 2), 10)
        prod = zh * zh
        assert prod.coefficient(0, 1) == GR_ONE

    def test_mul_truncation_bookkeeping(self):
        # a has negative order; the product is complete strictly below
        # trunc + ord(a)
        a = QZSeries.monomial(GR_ONE, -3, 0, 10)
        b = QZSeries.one(10)
        assert (a * b).trunc == 7

    @settings(max_examples=1000, deadline=None)
    @given(series(), series(), series())
    def test_ring_axioms(self, a, b, c):
        lhs = (a * b) * c
        rhs = a * (b * c)
        order = min(lhs.trunc, rhs.trunc)
        assert lhs.equal_up_to(rhs, order)[0]
        lhs2 = a * (b + c)
        rhs2 = a * b + a * c
        order2 = min(lhs2.trunc, rhs2.trunc)
        assert lhs2.equal_up_to(rhs2, order2)[0]
        assert (a * b).equal_up_to(b * a, (a * b).trunc)[0]


class TestInversion:
    def test_simple_unit(self):
        s = QZSeries({(0, 0): GR_ONE, (1, 0): -GR_ONE}, 20)
        inv = s.invert_unit()
        assert all(str(c) == "1" for _, c in inv.q_coefficients())

    def test_monomial(self):
        m = QZSeries.monomial(GaussianRational(2), 3, 0, 20)
        inv = m.invert_unit()
        assert inv.coefficient(-3) == GaussianRational(Fraction(1, 2))

    def test_not_a_unit(self):
        s = QZSeries({(0, 0): GR_ONE, (0, 1): -GR_ONE}, 10)
        with pytest.raises(NotAUnit):
            s.invert_unit()
        with pytest.raises(NotAUnit):
            QZSeries.zero(10).invert_unit()

    @settings(max_examples=120, deadline=None)
    @given(series(max_terms=4), st.fractions(min_value=0, max_value=3, max_denominator=2))
    def test_random_unit_roundtrip(self, tail, lead_pow):
        u = QZSeries.monomial(GaussianRational(Fraction(2, 3), 1), lead_pow, 0, TR)
        # push the tail strictly above the leading exponent
        tail_min = tail.min_q_order()
        if tail_min is not None:
            shift = lead_pow - tail_min + Fraction(1, 4)
            u = u + tail.times_monomial(GR_ONE, shift, 0)
        inv = u.invert_unit()
        prod = u * inv
        assert prod.equal_up_to(QZSeries.one(prod.trunc), prod.trunc)[0]


class TestSubstitution:
    def test_sign_flip(self):
        s = QZSeries({(0, 0): GR_ONE, (1, 0): GR_ONE, (3, 0): GR_ONE}, 10)
        out = s.substitute_q(2, 1)
        assert str(out.coefficient(1)) == "-1"
        assert str(out.coefficient(3)) == "-1"

    def test_fractional_exponent_rejected(self):
        s = QZSeries.monomial(GR_ONE, Fraction(1, 2), 0, 10)
        with pytest.raises(IllDefinedRootOfUnityPower):
            s.substitute_q(2, 1)

    def test_power_rescales_trunc(self):
        s = QZSeries.monomial(GR_ONE, 2, 0, 10)
        out = s.substitute_q(0, Fraction(3, 2))
        assert out.trunc == 15
        assert out.coefficient(3) == GR_ONE

    @settings(max_examples=60, deadline=None)
    @given(series(), st.sampled_from([1, 2, 3]), st.sampled_from([1, 2]))
    def test_substitution_composes(self, s, pa, pb):
        one_step = s.substitute_q(0, pa * pb)
        two_step = s.substitute_q(0, pa).substitute_q(0, pb)
        assert one_step.equal_up_to(two_step, one_step.trunc)[0]


class TestComparison:
    def test_equal_and_first_difference(self):
        a = QZSeries({(0, 0): GR_ONE, (1, 0): GR_ONE}, 10)
        b = QZSeries({(0, 0): GR_ONE, (1, 0): GaussianRational(2)}, 10)
        assert a.equal_up_to(a, 10)[0]
        ok, diff = a.equal_up_to(b, 2)
        assert not ok
        assert diff[0] == 1 and diff[1] == 0
        assert str(diff[2]) == "1" and str(diff[3]) == "2"

    def test_insufficient_truncation(self):
        a = QZSeries.one(5)
        with pytest.raises(InsufficientTruncation):
            a.equal_up_to(QZSeries.one(10), 7)

    @settings(max_examples=80, deadline=None)
    @given(series())
    def test_truncation_monotonicity(self, s):
        # recomputing at higher truncation and cutting back is bit-exact
        low = s.truncate(Fraction(6))
        again = (s * QZSeries.one(TR)).truncate(Fraction(6))
        assert low.equal_up_to(again, 6)[0]


class TestQuarterTurnSubstitution:
    def test_i_substitution(self):
        s = QZSeries({(0, 0): GR_ONE, (1, 0): GR_ONE,
                      (2, 0): GR_ONE, (3, 0): GR_ONE}, 10)
        out = s.substitute_q(1, 1)   # q -> i q
        assert str(out.coefficient(1)) == "i"
        assert str(out.coefficient(2)) == "-1"
        assert str(out.coefficient(3)) == "-i"
        # composing two quarter turns is the half turn
        twice = out.substitute_q(1, 1)
        flipped = s.substitute_q(2, 1)
        assert twice.equal_up_to(flipped, 10)[0]
