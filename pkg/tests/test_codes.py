"""Binary self-dual codes and their mod-2 construction lattices."""

import json

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from latsec.codes import (
    BinaryCode,
    InvariantViolation,
    ParseError,
    TooLarge,
    construction_a,
    dual_code,
    is_doubly_even,
    is_self_dual,
    kissing_from_code,
    load_codes,
    min_distance,
    weight_distribution,
)
from latsec.lattice import (
    is_even,
    is_integral,
    is_unimodular,
    kissing_number,
    theta_coeffs_enum,
)


class TestHamming844:
    def test_weight_distribution(self, code_844):
        assert list(weight_distribution(code_844)) == [1, 0, 0, 0, 14, 0, 0, 0, 1]

    def test_min_distance(self, code_844):
        assert min_distance(code_844) == 4

    def test_self_dual_doubly_even(self, code_844):
        assert is_self_dual(code_844)
        assert is_doubly_even(code_844)

    def test_lattice_is_even_unimodular(self, code_844):
        L = construction_a(code_844)
        assert is_unimodular(L) and is_even(L)
        assert kissing_number(L) == 240


class TestDual:
    def test_dual_dimension(self, code_844):
        sub = BinaryCode(list(code_844.rows)[:2], 8)
        assert dual_code(sub).k == 6

    def test_dual_of_dual(self, code_844):
        assert dual_code(dual_code(code_844)) == code_844

    def test_repetition_code_self_dual(self, code_211):
        assert is_self_dual(code_211)
        assert not is_doubly_even(code_211)


def _self_orthogonal(C):
    # bilinearity: checking generators suffices
    gens = list(C.rows)
    return all(
        (a & b).bit_count() % 2 == 0 for a in gens for b in gens
    )


class TestCorrespondence:
    """Code properties transfer to the construction lattice and back."""

    def test_shipped_codes_equivalences(self, code_entries):
        for entry in code_entries:
            C = entry.code
            L = construction_a(C)
            assert _self_orthogonal(C) and is_integral(L)
            assert is_self_dual(C) and is_unimodular(L)
            assert is_doubly_even(C) == is_even(L)

    def test_kissing_formula_vs_enumeration(self, code_entries):
        by_name = {e.name: e.code for e in code_entries}
        for name in ("[8,4,4]", "[12,6,4]", "[22,11,6]"):
            C = by_name[name]
            assert kissing_from_code(C) == kissing_number(construction_a(C))

    def test_kissing_small_distance_branch(self, code_211):
        # d=2: 2^d * W(d) = 4
        assert kissing_from_code(code_211) == 4
        assert kissing_number(construction_a(code_211)) == 4

    def test_theta_prefix_case_analysis(self, code_entries):
        by_name = {e.name: e.code for e in code_entries}
        c12 = by_name["[12,6,4]"]
        w12 = weight_distribution(c12)
        assert theta_coeffs_enum(construction_a(c12), 3) == [
            1, 0, 2 * 12 + 16 * w12[4], 64 * w12[6],
        ]
        c22 = by_name["[22,11,6]"]
        w22 = weight_distribution(c22)
        assert theta_coeffs_enum(construction_a(c22), 3) == [
            1, 0, 2 * 22, 64 * w22[6],
        ]

    def test_repetition_theta_prefix(self, code_211):
        assert theta_coeffs_enum(construction_a(code_211), 3) == [1, 4, 4, 0]


@settings(max_examples=80, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=16),
    data=st.data(),
)
def test_random_code_lattice_equivalences(n, data):
    rows = data.draw(
        st.lists(st.integers(min_value=1, max_value=2 ** n - 1),
                 min_size=1, max_size=min(n, 5))
    )
    try:
        C = BinaryCode(rows, n)
    except ValueError:
        # dependent generator rows; not a valid generator matrix
        assume(False)
    L = construction_a(C)
    assert _self_orthogonal(C) == is_integral(L)
    assert is_self_dual(C) == is_unimodular(L)
    if is_self_dual(C):
        # evenness is defined through unimodularity, so the parity leg
        # only bites once the lattice is unimodular
        assert is_doubly_even(C) == is_even(L)


class TestMacWilliamsSanity:
    def test_total_count(self, code_entries):
        for entry in code_entries:
            W = weight_distribution(entry.code)
            assert sum(W) == 2 ** entry.code.k

    def test_palindrome_with_all_ones(self, code_entries):
        for entry in code_entries:
            C = entry.code
            W = list(weight_distribution(C))
            assert W[C.n] == 1, f"{entry.name} misses the all-ones word"
            assert W == W[::-1]


class TestLoader:
    def test_shipped_file_round_trip(self, code_entries):
        assert len(code_entries) == 20
        for entry in code_entries:
            assert min_distance(entry.code) == entry.d
            assert list(weight_distribution(entry.code)) == list(entry.expected_weights)

    def test_multiplicity_recorded(self, code_entries):
        doubled = sorted(e.name for e in code_entries if e.multiplicity == 2)
        assert doubled == ["[22,11,4]-W4-16", "[22,11,4]-W4-28"]

    def test_parse_error_on_garbage(self, tmp_path):
        bad = tmp_path / "codes.json"
        bad.write_text('{"not": "a list"}')
        with pytest.raises(ParseError):
            load_codes(bad)

    def test_invariant_violation_on_wrong_distance(self, tmp_path, code_844):
        row = {
            "name": "[8,4,4]",
            "n": 8,
            "k": 4,
            "d": 6,
            "generator_rows": list(code_844.bitstrings()),
            "expected_weights": [1, 0, 0, 0, 14, 0, 0, 0, 1],
        }
        bad = tmp_path / "codes.json"
        bad.write_text(json.dumps([row]))
        with pytest.raises(InvariantViolation):
            load_codes(bad)


class TestGuards:
    def test_length_cap(self):
        with pytest.raises(ValueError):
            BinaryCode([1 << j for j in range(25)], 25)

    def test_too_large_enumeration(self, code_844):
        wide = BinaryCode(code_844.rows, code_844.n)
        wide.k = 25  # force past the length cap to reach the enumeration guard
        with pytest.raises(TooLarge):
            wide.codewords()

    def test_zero_row_rejected(self):
        with pytest.raises(ValueError):
            BinaryCode([0], 4)
