"""Exact gains, Hecke-style decompositions, and the numeric diagnostics."""

import math
from fractions import Fraction

import pytest

from latsec.secrecy import (
    BestPick,
    EmptyDimension,
    HeckeDecomposition,
    NonIntegerSolution,
    OutOfStatedRange,
    SecrecyProfile,
    ZeroDenominator,
    classify_best,
    gain_closed_form,
    gain_from_decomposition,
    hecke_decompose,
    jacobi_values,
    locate_max,
    secrecy_function,
    z_of_y,
)


class TestDecompose:
    def test_e8(self):
        d = hecke_decompose(8, [1, 0, 240])
        assert d.a == (1, -16)
        assert gain_from_decomposition(d) == Fraction(4, 3)

    def test_d12_plus(self):
        d = hecke_decompose(12, [1, 0, 264])
        assert d.a == (1, -24)
        assert gain_from_decomposition(d) == Fraction(8, 5)

    def test_o23(self):
        # minimal norm 3: the first two counts vanish
        d = hecke_decompose(23, [1, 0, 0])
        assert d.a == (1, -46, 0)
        assert gain_from_decomposition(d) == Fraction(32, 9)
        # the forced series then predicts the norm-3 count
        assert d.reconstruct(3).q_coefficients(4)[3] == 4600

    def test_d8_squared(self):
        d = hecke_decompose(16, [1, 0, 224])
        assert d.a == (1, -32, 0)
        assert gain_from_decomposition(d) == Fraction(2, 1)

    def test_z16(self):
        d = hecke_decompose(16, [1, 32, 480])
        assert d.a == (1, 0, 0)
        assert gain_from_decomposition(d) == 1

    def test_reconstruct_round_trip(self):
        d = hecke_decompose(16, [1, 0, 224])
        coeffs = d.reconstruct(6).q_coefficients(7)
        assert coeffs[:3] == [1, 0, 224]
        again = hecke_decompose(16, [int(c) for c in coeffs])
        assert again == d


class TestDecomposeErrors:
    def test_dimension_positive(self):
        with pytest.raises(ValueError):
            hecke_decompose(0, [1])

    def test_needs_enough_coefficients(self):
        with pytest.raises(ValueError):
            hecke_decompose(16, [1, 0])

    def test_leading_count_must_be_one(self):
        with pytest.raises(NonIntegerSolution):
            hecke_decompose(8, [2, 0])

    def test_integer_counts_only(self):
        with pytest.raises(NonIntegerSolution):
            hecke_decompose(8, [1, Fraction(1, 2)])

    def test_inconsistent_tail_detected(self):
        # the solved prefix forces A_2 = 264 here
        with pytest.raises(NonIntegerSolution):
            hecke_decompose(12, [1, 0, 100])

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            gain_from_decomposition(HeckeDecomposition(8, [1, -64]))

    def test_container_validation(self):
        with pytest.raises(ValueError):
            HeckeDecomposition(8, [2, 0])
        with pytest.raises(ValueError):
            HeckeDecomposition(16, [1, -32])


class TestClosedForm:
    def test_named_values(self):
        assert gain_closed_form(16, 224) == 2
        assert gain_closed_form(23, 480) == Fraction(128, 51)

    def test_matches_decomposition_on_all_rows(self, catalog):
        rows = [e for e in catalog if not e.extremal]
        assert len(rows) == 111
        for e in rows:
            d = hecke_decompose(e.dimension, [1, 0, e.kissing])
            assert gain_from_decomposition(d) == gain_closed_form(
                e.dimension, e.kissing
            )

    def test_denominator_strictly_decreasing(self, catalog):
        # D(w) = 1 + a1 w + a2 w^2 on [0, 1/64]; D' is linear in w, so
        # negativity at the endpoints gives it everywhere, hence the
        # secrecy function peaks exactly at y = 1 for every row
        for e in catalog:
            if e.extremal:
                continue
            d = hecke_decompose(e.dimension, [1, 0, e.kissing])
            a1, a2 = d.a[1], d.a[2]
            for w in (Fraction(0), Fraction(1, 128), Fraction(1, 64)):
                assert a1 + 2 * a2 * w < 0

    def test_out_of_stated_range_warns(self):
        with pytest.warns(OutOfStatedRange):
            g = gain_closed_form(8, 240)
        assert g == Fraction(4, 3)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            gain_closed_form(16, -1824)


class TestProfile:
    def test_round_trip(self):
        d = hecke_decompose(12, [1, 0, 264])
        p = SecrecyProfile("D12+", 12, Fraction(8, 5), decomposition=d)
        assert p.gain == Fraction(8, 5)

    def test_gain_must_match(self):
        d = hecke_decompose(12, [1, 0, 264])
        with pytest.raises(ValueError):
            SecrecyProfile("D12+", 12, 2, decomposition=d)

    def test_gain_positive(self):
        with pytest.raises(ValueError):
            SecrecyProfile("X", 8, 0)


class TestJacobiValues:
    def test_at_one(self):
        t2, t3, t4 = jacobi_values(1.0)
        assert abs(t2 - t4) < 1e-12
        assert abs(t3 - 2 ** 0.25 * t4) < 1e-12

    def test_quartic_identity(self):
        for y in (0.3, 0.7, 1.0, 2.5, 9.0):
            t2, t3, t4 = jacobi_values(y)
            assert math.isclose(t3 ** 4, t2 ** 4 + t4 ** 4, rel_tol=1e-10)

    def test_reflection(self):
        small = jacobi_values(0.25)
        big = jacobi_values(4.0)
        f = 2.0
        assert math.isclose(small[0], f * big[2], rel_tol=1e-12)
        assert math.isclose(small[1], f * big[1], rel_tol=1e-12)
        assert math.isclose(small[2], f * big[0], rel_tol=1e-12)

    def test_positive_argument_required(self):
        with pytest.raises(ValueError):
            jacobi_values(0.0)


class TestZofY:
    def test_bounded_and_peaked(self):
        ys = [0.05 * (20.0 / 0.05) ** (i / 199) for i in range(200)]
        for y in ys:
            z = z_of_y(y)
            assert 0.0 < z <= 0.25 + 1e-12
        assert abs(z_of_y(1.0) - 0.25) < 1e-12
        assert z_of_y(2.0) < 0.249

    def test_symmetric(self):
        for y in (1.5, 2.0, 4.0, 8.0):
            assert math.isclose(z_of_y(y), z_of_y(1.0 / y), rel_tol=1e-12)


class TestSecrecyFunction:
    def test_flat_for_cubic(self):
        theta = lambda y: jacobi_values(y)[1] ** 16
        for y in (0.1, 0.5, 1.0, 3.0, 10.0):
            assert secrecy_function(theta, 16, 1, y) == 1.0

    def test_peak_value_d12_plus(self):
        d = hecke_decompose(12, [1, 0, 264])
        assert abs(secrecy_function(d, 12, 1, 1.0) - 1.6) < 1e-12

    def test_symmetry_d12_plus(self):
        d = hecke_decompose(12, [1, 0, 264])
        peak = secrecy_function(d, 12, 1, 1.0)
        for y in (1.5, 2.0, 4.0, 8.0):
            a = secrecy_function(d, 12, 1, y)
            b = secrecy_function(d, 12, 1, 1.0 / y)
            assert math.isclose(a, b, rel_tol=1e-9)
            assert a < peak

    def test_series_route_agrees(self):
        from latsec.qseries import theta3
        from latsec.qseries import QSeries

        d = hecke_decompose(12, [1, 0, 264])
        series = d.reconstruct(200)
        for y in (0.8, 1.0, 2.0):
            a = secrecy_function(series, 12, 1, y)
            b = secrecy_function(d, 12, 1, y)
            assert math.isclose(a, b, rel_tol=1e-9)

    def test_rejects_bad_theta(self):
        with pytest.raises(TypeError):
            secrecy_function("not a theta", 8, 1, 1.0)

    def test_positive_y_required(self):
        d = hecke_decompose(8, [1, 0, 240])
        with pytest.raises(ValueError):
            secrecy_function(d, 8, 1, -1.0)


class TestLocateMax:
    def test_flat(self):
        theta = lambda y: jacobi_values(y)[1] ** 8
        assert locate_max(theta, 8) == (1.0, 1.0)

    def test_d12_plus(self):
        d = hecke_decompose(12, [1, 0, 264])
        y_star, value = locate_max(d, 12)
        assert abs(y_star - 1.0) < 1e-6
        assert abs(value - 1.6) < 1e-9

    def test_range_must_straddle_one(self):
        d = hecke_decompose(12, [1, 0, 264])
        with pytest.raises(ValueError):
            locate_max(d, 12, y_range=(2.0, 20.0))


class TestClassifyBest:
    def test_padding_with_cubic_summands(self, catalog):
        winners = classify_best(catalog, 9)
        assert [w.label for w in winners] == ["E8⊕Z"]
        assert winners[0].zk == 1
        assert winners[0].gain == Fraction(4, 3)

    def test_exact_dimension_winners(self, catalog):
        for dim, labels, gain in [
            (12, ["D12+"], Fraction(8, 5)),
            (16, ["D8^2"], Fraction(2)),
            (23, ["O23"], Fraction(32, 9)),
        ]:
            winners = classify_best(catalog, dim)
            assert [w.label for w in winners] == labels
            assert all(w.gain == gain for w in winners)

    def test_ties_are_kept(self, catalog):
        assert [w.label for w in classify_best(catalog, 18)] == ["A9^2", "D6^3"]
        assert [w.label for w in classify_best(catalog, 20)] == ["A5^4", "D4^5"]

    def test_range_guard(self, catalog):
        for dim in (8, 24):
            with pytest.raises(ValueError):
                classify_best(catalog, dim)

    def test_empty_catalog(self):
        with pytest.raises(EmptyDimension):
            classify_best([], 9)
