"""Binary linear codes and Construction A.

Codes are stored as reduced-row-echelon generator matrices over F_2
(rows are int bitmasks, bit i = coordinate i), which makes row-space
equality a plain tuple comparison.  Construction A lifts a self-dual
code to a unimodular lattice scaled by 1/sqrt(2).
"""

from __future__ import annotations

import json

from fractions import Fraction

from .lattice import Lattice

__all__ = [
    "BinaryCode",
    "TooLarge",
    "ParseError",
    "InvariantViolation",
    "weight_distribution",
    "min_distance",
    "dual_code",
    "is_self_dual",
    "is_doubly_even",
    "construction_a",
    "kissing_from_code",
    "CodeEntry",
    "load_codes",
]

MAX_ENUM_DIMENSION = 24


class TooLarge(Exception):
    pass


class ParseError(Exception):
    pass


class InvariantViolation(Exception):
    pass


def _rref(masks, n):
    rows = list(masks)
    pivots = []
    r = 0
    for col in range(n):
        bit = 1 << col
        piv = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


class BinaryCode:
    """[n, k] binary linear code with a canonical (RREF) generator."""

    __slots__ = ("n", "k", "rows", "pivots", "name")

    def __init__(self, generator_rows, n, name=None):
        if n < 1 or n > MAX_ENUM_DIMENSION:
            raise ValueError(f"code length {n} outside supported range 1..{MAX_ENUM_DIMENSION}")
        masks = []
        for row in generator_rows:
            if isinstance(row, str):
                if len(row) != n or set(row) - {"0", "1"}:
                    raise ValueError(f"bad bitstring {row!r} for length {n}")
                mask = sum(1 << i for i, ch in enumerate(row) if ch == "1")
            elif isinstance(row, int):
                mask = row
                if mask >= 1 << n:
                    raise ValueError("bitmask wider than the code length")
            else:
                bits = list(row)
                if len(bits) != n or set(bits) - {0, 1}:
                    raise ValueError("generator row is not a 0/1 vector of length n")
                mask = sum(1 << i for i, b in enumerate(bits) if b)
            masks.append(mask)
        rows, pivots = _rref(masks, n)
        if len(rows) != len(masks):
            raise ValueError("generator rows are linearly dependent over F_2")
        self.n = n
        self.k = len(rows)
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)
        self.name = name

    def codewords(self):
        """All 2^k codeword bitmasks."""
        if self.k > MAX_ENUM_DIMENSION:
            raise TooLarge(f"2^{self.k} codewords is beyond the enumeration guard")
        words = [0]
        for g in self.rows:
            words += [w ^ g for w in words]
        return words

    def generator_matrix(self):
        return tuple(
            tuple((row >> i) & 1 for i in range(self.n)) for row in self.rows
        )

    def bitstrings(self):
        return ["".join("1" if (row >> i) & 1 else "0" for i in range(self.n))
                for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        tag = self.name or f"[{self.n},{self.k}]"
        return f"<BinaryCode {tag}>"


def weight_distribution(C):
    """Exact counts (W(0), ..., W(n)) by codeword enumeration."""
    counts = [0] * (C.n + 1)
    for w in C.codewords():
        counts[w.bit_count()] += 1
    return tuple(counts)


def min_distance(C):
    weights = weight_distribution(C)
    for w in range(1, C.n + 1):
        if weights[w]:
            return w
    raise ValueError("zero code has no minimum distance")


def dual_code(C):
    """Generator of the null space of C's generator over F_2."""
    free_cols = [j for j in range(C.n) if j not in C.pivots]
    rows = []
    for f in free_cols:
        mask = 1 << f
        for i, p in enumerate(C.pivots):
            if (C.rows[i] >> f) & 1:
                mask |= 1 << p
        rows.append(mask)
    if not rows:
        # dual of the full space is the zero code, which has no generator;
        # represent it as a rank-0 edge case via an empty BinaryCode
        raise ValueError("the full space's dual (zero code) is not representable")
    return BinaryCode(rows, C.n, name=f"{C.name}^perp" if C.name else None)


def is_self_dual(C):
    """C equals its dual as a row space (forces n = 2k)."""
    if C.n != 2 * C.k:
        return False
    return dual_code(C).rows == C.rows


def is_doubly_even(C):
    return all(w.bit_count() % 4 == 0 for w in C.codewords())


def construction_a(C):
    """The lattice (1/sqrt(2)) * preimage of C under reduction mod 2.

    Basis: the k lifted generator rows plus 2*e_j for each non-pivot
    column j, all scaled by 1/sqrt(2); Gram entries are
    (lift . lift)/2, exact.
    """
    lifted = [[(row >> j) & 1 for j in range(C.n)] for row in C.rows]
    for j in range(C.n):
        if j not in C.pivots:
            row = [0] * C.n
            row[j] = 2
            lifted.append(row)
    label = f"CA({C.name})" if C.name else f"CA[{C.n},{C.k}]"
    return Lattice(lifted, scale=Fraction(1, 2), label=label)


def kissing_from_code(C):
    """Kissing number of the Construction-A lattice from the weight data.

    2^d * W(d) when the minimum distance d < 4; 2n + 16 W(4) when
    d = 4; 2n when d > 4.
    """
    weights = weight_distribution(C)
    d = min_distance(C)
    if d < 4:
        return (1 << d) * weights[d]
    if d == 4:
        return 2 * C.n + 16 * weights[4]
    return 2 * C.n


class CodeEntry:
    """One codes.json row: a validated code plus its published data."""

    __slots__ = ("name", "code", "d", "expected_weights", "multiplicity")

    def __init__(self, name, code, d, expected_weights, multiplicity):
        self.name = name
        self.code = code
        self.d = d
        self.expected_weights = tuple(expected_weights)
        self.multiplicity = multiplicity

    def __repr__(self):
        return f"<CodeEntry {self.name}>"


def load_codes(path):
    """Parse and validate the shipped code data file.

    Every entry is checked on load: generator rank, self-duality,
    recomputed weight distribution against expected_weights, and the
    declared minimum distance.  Returns a list of CodeEntry.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read code file {path}: {exc}") from exc
    if not isinstance(raw, list):
        raise ParseError("code file must be a JSON array")
    entries = []
    for idx, item in enumerate(raw):
        where = f"codes[{idx}]"
        try:
            name = item["name"]
            n = item["n"]
            k = item["k"]
            d = item["d"]
            rows = item["generator_rows"]
            expected = item["expected_weights"]
        except (TypeError, KeyError) as exc:
            raise ParseError(f"{where}: missing field {exc}") from exc
        multiplicity = item.get("num", 1)
        try:
            code = BinaryCode(rows, n, name=name)
        except ValueError as exc:
            raise ParseError(f"{where} ({name}): {exc}") from exc
        if code.k != k:
            raise InvariantViolation(f"{where} ({name}): rank {code.k}, declared {k}")
        if not is_self_dual(code):
            raise InvariantViolation(f"{where} ({name}): not self-dual")
        weights = weight_distribution(code)
        if list(weights) != list(expected):
            raise InvariantViolation(
                f"{where} ({name}): weight distribution {weights} does not match "
                f"the expected {tuple(expected)}"
            )
        if min_distance(code) != d:
            raise InvariantViolation(
                f"{where} ({name}): minimum distance {min_distance(code)}, declared {d}"
            )
        entries.append(CodeEntry(name, code, d, weights, multiplicity))
    return entries
