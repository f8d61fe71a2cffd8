"""Exact q-series arithmetic and the classical theta expansions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latsec.qseries import (
    QSeries,
    TruncationInsufficient,
    delta8_product_form,
    discriminant_delta8,
    eval_at_iy,
    mul,
    power,
    theta2,
    theta3,
    theta4,
)


class TestThetaExpansions:
    def test_theta3_square_exponents(self):
        assert theta3(40).as_q_string(10) == "1 + 2q + 2q^4 + 2q^9"

    def test_theta4_alternating(self):
        assert theta4(40).as_q_string(10) == "1 - 2q + 2q^4 - 2q^9"

    def test_theta4_q2_vanishes(self):
        # 2 is not a perfect square
        assert theta4(40).q_coefficient(2) == 0

    def test_theta2_quarter_exponents(self):
        t2 = theta2(40)
        assert t2.q_coefficient(Fraction(1, 4)) == 2
        assert t2.q_coefficient(Fraction(9, 4)) == 2
        assert t2.q_coefficient(1) == 0

    def test_theta3_times_theta4_has_even_q_powers(self):
        prod = mul(theta3(100), theta4(100))
        for e, c in prod.coeffs.items():
            if c != 0:
                assert e % 8 == 0, f"odd q-power u^{e} survived"

    def test_jacobi_quartic_identity(self):
        # theta3^4 = theta2^4 + theta4^4, coefficient by coefficient
        order = 100
        lhs = power(theta3(order), 4)
        rhs = power(theta2(order), 4).add(power(theta4(order), 4))
        assert lhs == rhs


class TestDelta8:
    def test_leading_coefficients(self):
        # the q^6 sign is forced by the product form (checked below);
        # displays sometimes typo it as +224
        d8 = discriminant_delta8(40)
        assert d8.q_coefficients(7) == [0, 1, -8, 28, -64, 126, -224]

    def test_no_constant_term(self):
        assert discriminant_delta8(12).q_coefficient(0) == 0

    def test_product_formula_agrees(self):
        assert discriminant_delta8(50) == delta8_product_form(50)


class TestArithmetic:
    def test_mul_binomials(self):
        a = QSeries.from_q_coeffs([1, 2], trunc_order=20)
        b = QSeries.from_q_coeffs([1, -2], trunc_order=20)
        assert a.mul(b).q_coefficients(3) == [1, 0, -4]

    def test_mul_by_zero(self):
        a = theta3(24)
        assert a.mul(QSeries.zero(24)) == QSeries.zero(24)

    def test_theta3_squared_counts_z2_vectors(self):
        from latsec.lattice import integer_lattice, theta_coeffs_enum

        series = power(theta3(240), 2)
        enum = theta_coeffs_enum(integer_lattice(2), 50)
        assert series.q_coefficients(51) == enum

    def test_pow_zero_is_one(self):
        a = theta4(32)
        p = a.pow(0)
        assert p == QSeries.one(32)
        assert p.trunc_order == 32

    def test_theta3_eighth_power_prefix(self):
        assert power(theta3(40), 8).q_coefficients(3) == [1, 16, 112]

    def test_theta3_twelfth_power_q1(self):
        assert power(theta3(40), 12).q_coefficient(1) == 24

    def test_truncation_min_combines(self):
        a = theta3(40)
        b = theta3(12)
        assert a.mul(b).trunc_order == 12
        assert a.add(b).trunc_order == 12


class TestEval:
    def test_constant_series(self):
        assert QSeries.one(80).eval_at_iy(0.7) == 1.0

    def test_quarter_root_of_two_ratio(self):
        r = eval_at_iy(theta3(400), 1) / eval_at_iy(theta4(400), 1)
        assert abs(r - 2 ** 0.25) < 1e-9

    def test_theta2_equals_theta4_at_one(self):
        d = eval_at_iy(theta2(400), 1) - eval_at_iy(theta4(400), 1)
        assert abs(d) < 1e-9

    def test_refuses_untrustworthy_truncation(self):
        with pytest.raises(TruncationInsufficient):
            theta3(8).eval_at_iy(0.01)

    def test_powers_positive_on_grid(self):
        for n in range(1, 25):
            series = power(theta3(2400), n)
            for y in (0.1, 1.0, 10.0):
                assert series.eval_at_iy(y) > 0


coeff_lists = st.lists(
    st.fractions(
        max_denominator=8,
        min_value=Fraction(-9),
        max_value=Fraction(9),
    ),
    min_size=0,
    max_size=6,
)


@st.composite
def small_series(draw, order=24):
    return QSeries.from_q_coeffs(draw(coeff_lists), trunc_order=order)


@settings(max_examples=60, deadline=None)
@given(small_series(), small_series(), small_series())
def test_ring_laws_exact(a, b, c):
    """Commutativity, distributivity, and (a+b)-b == a, all exact."""
    assert a.mul(b) == b.mul(a)
    assert a.add(b) == b.add(a)
    assert a.mul(b.add(c)) == a.mul(b).add(a.mul(c))
    assert a.add(b).sub(b) == a


@settings(max_examples=60, deadline=None)
@given(small_series())
def test_coefficients_stay_rational(a):
    out = a.mul(a).add(a.scale(Fraction(3, 7))).sub(a.pow(3))
    for c in out.coeffs.values():
        assert isinstance(c, Fraction)


def test_dump_format():
    a = QSeries.from_q_coeffs([1, Fraction(-1, 2)], trunc_order=12)
    assert a.dump() == "0/4 : 1/1\n4/4 : -1/2"
