"""Exact lattice algebra: Gram data, enumeration, glue, reduction."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latsec._kernels import SearchTooLarge
from latsec.lattice import (
    DimensionMismatch,
    GlueNotClosed,
    GlueRecipe,
    IndexMismatch,
    Lattice,
    NotIntegral,
    build_glue,
    contains_vector,
    coords_in_basis,
    det_lattice,
    direct_sum,
    dual_basis,
    enumerate_vectors_up_to_norm,
    gram,
    integer_lattice,
    is_even,
    is_integral,
    is_unimodular,
    kissing_number,
    lll_reduce,
    minimal_norm,
    root_lattice,
    same_lattice,
    scale,
    theta_coeffs_enum,
)

HALF = Fraction(1, 2)


def d12_plus():
    base = root_lattice("D12")
    return build_glue(GlueRecipe(base, [(0,) * 12, (HALF,) * 12]), label="D12+")


class TestGramAndDet:
    def test_integer_lattice_gram_identity(self):
        g = gram(integer_lattice(4))
        assert [list(row) for row in g] == [
            [1 if i == j else 0 for j in range(4)] for i in range(4)
        ]

    def test_d12_plus_integral_unimodular(self):
        L = d12_plus()
        g = gram(L)
        assert all(v.denominator == 1 for row in g for v in row)
        assert det_lattice(L) == 1

    def test_e8_gram_diagonal_even(self):
        g = gram(root_lattice("E8"))
        assert all(g[i][i] % 2 == 0 for i in range(8))

    def test_det_values(self):
        assert det_lattice(integer_lattice(5)) == 1
        assert det_lattice(scale(integer_lattice(2), 1, sqrt2=True)) == 4
        assert det_lattice(root_lattice("A2")) == 3


class TestDual:
    def test_zn_self_dual(self):
        L = integer_lattice(3)
        assert same_lattice(L, dual_basis(L))

    def test_double_dual_round_trip(self):
        for L in (root_lattice("A3"), root_lattice("D5"), d12_plus()):
            assert same_lattice(L, dual_basis(dual_basis(L)))

    def test_d12_plus_unimodular_means_self_dual(self):
        L = d12_plus()
        assert same_lattice(L, dual_basis(L))


class TestPredicates:
    def test_zn_odd_unimodular(self):
        L = integer_lattice(6)
        assert is_integral(L) and is_unimodular(L) and not is_even(L)

    def test_e8_even(self):
        L = root_lattice("E8")
        assert is_integral(L) and is_unimodular(L) and is_even(L)

    def test_half_z_not_integral(self):
        assert not is_integral(Lattice([[HALF]]))

    def test_even_lattice_has_no_odd_norms(self):
        coeffs = theta_coeffs_enum(root_lattice("E8"), 6)
        assert coeffs[1::2] == [0, 0, 0]


class TestSameLattice:
    def test_reflexive(self):
        L = root_lattice("D4")
        assert same_lattice(L, L)

    def test_unimodular_change_of_basis(self):
        assert same_lattice(integer_lattice(2), Lattice([[1, 0], [1, 1]]))

    def test_sublattice_is_not_same(self):
        assert not same_lattice(integer_lattice(2), scale(integer_lattice(2), 2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            same_lattice(integer_lattice(2), integer_lattice(3))


class TestEnumeration:
    def test_z2_unit_vectors(self):
        hits = list(enumerate_vectors_up_to_norm(integer_lattice(2), 1))
        assert len(hits) == 4
        assert all(norm == 1 for _, norm in hits)

    def test_e8_roots(self):
        hits = list(enumerate_vectors_up_to_norm(root_lattice("E8"), 2))
        assert len(hits) == 240

    def test_d12_plus_minimal_vectors(self):
        assert len(list(enumerate_vectors_up_to_norm(d12_plus(), 2))) == 264

    def test_negation_closure(self):
        hits = {v for v, _ in enumerate_vectors_up_to_norm(root_lattice("A3"), 4)}
        for v in hits:
            assert tuple(-c for c in v) in hits

    def test_guard_trips(self):
        with pytest.raises(SearchTooLarge):
            enumerate_vectors_up_to_norm(integer_lattice(16), 12, max_nodes=5000)

    def test_theta_coeffs_z1(self):
        assert theta_coeffs_enum(integer_lattice(1), 9) == [
            1, 2, 0, 0, 2, 0, 0, 0, 0, 2,
        ]

    def test_theta_multiplicative_over_direct_sum(self):
        a2 = root_lattice("A2")
        d4 = root_lattice("D4")
        both = theta_coeffs_enum(direct_sum(a2, d4), 6)
        ca = theta_coeffs_enum(a2, 6)
        cb = theta_coeffs_enum(d4, 6)
        cauchy = [
            sum(ca[i] * cb[m - i] for i in range(m + 1)) for m in range(7)
        ]
        assert both == cauchy

    def test_non_integral_rejected(self):
        with pytest.raises(NotIntegral):
            theta_coeffs_enum(Lattice([[HALF]]), 4)


class TestRootLattices:
    def test_a_series_kissing(self):
        for n in range(1, 10):
            assert kissing_number(root_lattice(f"A{n}")) == n * (n + 1)

    def test_d_series_kissing(self):
        for n in range(4, 9):
            assert kissing_number(root_lattice(f"D{n}")) == 2 * n * (n - 1)

    def test_exceptional_kissing(self):
        assert kissing_number(root_lattice("E6")) == 72
        assert kissing_number(root_lattice("E7")) == 126
        assert kissing_number(root_lattice("E8")) == 240

    def test_e8_minimal_norm(self):
        assert minimal_norm(root_lattice("E8")) == (2, 240)

    def test_bad_names(self):
        for name in ("F4", "E9", "Axx", "D1"):
            with pytest.raises(ValueError):
                root_lattice(name)


class TestScaleAndSums:
    def test_scale_multiplies_norms(self):
        assert minimal_norm(scale(root_lattice("E8"), 2))[0] == 8

    def test_sqrt2_scale(self):
        L = scale(integer_lattice(3), 1, sqrt2=True)
        assert minimal_norm(L)[0] == 2
        assert det_lattice(L) == 8

    def test_square_scale_folds_into_rows(self):
        # sqrt(1/2) * (2) = sqrt(2) * (1): same lattice, canonical scale 2
        L = Lattice([[2]], scale=HALF)
        assert L.scale == 2
        assert same_lattice(L, scale(integer_lattice(1), 1, sqrt2=True))

    def test_rank_deficient_rejected(self):
        with pytest.raises(ValueError):
            Lattice([[1, 0], [2, 0]])


class TestGlue:
    def test_d12_plus_kissing(self):
        assert kissing_number(d12_plus()) == 264

    def test_not_closed(self):
        base = scale(integer_lattice(2), 2)
        with pytest.raises(GlueNotClosed):
            build_glue(GlueRecipe(base, [(0, 0), (1, 0), (0, 1)]))

    def test_index_mismatch(self):
        # 1 coset cannot take det 4 to det 1
        base = scale(integer_lattice(1), 2)
        with pytest.raises(IndexMismatch):
            build_glue(GlueRecipe(base, [(0,)]))

    def test_zero_coset_required(self):
        base = scale(integer_lattice(1), 2)
        with pytest.raises(GlueNotClosed):
            build_glue(GlueRecipe(base, [(1,)]))


class TestMembership:
    def test_contains_and_coords_round_trip(self):
        L = root_lattice("D4")
        vec = tuple(sum(Fraction(r[i]) for r in L.rows) for i in range(4))
        assert contains_vector(L, vec)
        assert coords_in_basis(L, vec) == (1, 1, 1, 1)

    def test_outside_point(self):
        assert not contains_vector(root_lattice("D2"), (1, 0))


class TestLLL:
    def test_reduction_preserves_lattice(self):
        skewed = Lattice([[1, 0], [100, 1]])
        red = lll_reduce(skewed)
        assert same_lattice(skewed, red)
        assert [list(row) for row in gram(red)] == [[1, 0], [0, 1]]

    def test_construction_a_basis_shortens(self):
        from latsec.codes import BinaryCode, construction_a

        L = construction_a(BinaryCode([0b00001111, 0b00110011,
                                       0b01010101, 0b11111111], 8))
        red = lll_reduce(L)
        assert same_lattice(L, red)
        g = gram(red)
        assert all(g[i][i] == 2 for i in range(8))


unimodular_rows = st.integers(min_value=-4, max_value=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(unimodular_rows, min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_lll_reduce_properties(rows):
    from latsec.lattice import _det

    frac = [[Fraction(v) for v in row] for row in rows]
    if _det(frac) == 0:
        return
    L = Lattice(rows)
    red = lll_reduce(L)
    assert same_lattice(L, red)
    assert det_lattice(red) == det_lattice(L)
    # classical guarantee at delta=3/4: |b1|^2 <= 2^(n-1) det(gram)^(1/n)
    first = gram(red)[0][0]
    assert float(first) <= 4.0 * float(det_lattice(red)) ** (1 / 3) + 1e-9
