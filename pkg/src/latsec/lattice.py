"""Lattices over exact rationals.

A lattice is stored as a full-row-rank rational matrix M (n rows
spanning the integer-combination set) together with a squarefree
positive integer `scale` s, the lattice being sqrt(s) * {u M : u in
Z^n}.  The scale keeps Gram matrices exact for lattices such as A_n,
E6, E7 or Construction-A images, none of which admit a square rational
generator matrix: Gram = s * M M^T.  Vectors reported by enumeration
live in the rational frame (the geometric vector is sqrt(scale) times
the reported one); norms always include the scale.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ._kernels import SearchTooLarge, enumerate_upto

__all__ = [
    "Lattice",
    "GlueRecipe",
    "DimensionMismatch",
    "NotIntegral",
    "GlueNotClosed",
    "IndexMismatch",
    "NoRecipe",
    "SearchTooLarge",
    "gram",
    "det_lattice",
    "dual_basis",
    "is_integral",
    "is_unimodular",
    "is_even",
    "same_lattice",
    "enumerate_vectors_up_to_norm",
    "theta_coeffs_enum",
    "kissing_number",
    "minimal_norm",
    "direct_sum",
    "scale",
    "build_glue",
    "integer_lattice",
    "root_lattice",
    "contains_vector",
    "coords_in_basis",
    "lll_reduce",
]

MAX_SEARCH_NODES = 10**8


class DimensionMismatch(Exception):
    pass


class NotIntegral(Exception):
    pass


class GlueNotClosed(Exception):
    pass


class IndexMismatch(Exception):
    pass


class NoRecipe(Exception):
    """The catalog knows this lattice only by (dimension, kissing, gain)."""


# -- small exact linear algebra helpers -------------------------------------


def _frac_rows(rows):
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def _mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _mat_transpose(a):
    return tuple(zip(*a))


def _identity(n):
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def _det(a):
    """Determinant by fraction-free-ish Gaussian elimination on a copy."""
    n = len(a)
    m = [list(row) for row in a]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def _inv(a):
    n = len(a)
    m = [list(row) + list(ident_row) for row, ident_row in zip(a, _identity(n))]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def _rank(a):
    m = [list(row) for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _squarefree_split(n):
    """n = s * t^2 with s squarefree; returns (s, t). n must be positive."""
    s, t = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            count = 0
            while n % d == 0:
                n //= d
                count += 1
            t *= d ** (count // 2)
            if count % 2:
                s *= d
        d += 1
    return s * n, t


def _row_hnf(mat):
    """Hermite-style basis of the integer row span; returns pivot rows."""
    rows = [list(r) for r in mat if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(rank, len(rows)) if rows[i][col] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][col]))
            for i in nz:
                if i != i0:
                    q = rows[i][col] // rows[i0][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
        nz = [i for i in range(rank, len(rows)) if rows[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        rows[rank], rows[i0] = rows[i0], rows[rank]
        if rows[rank][col] < 0:
            rows[rank] = [-a for a in rows[rank]]
        for i in range(rank):
            q = rows[i][col] // rows[rank][col]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return [r for r in rows[:rank]]


def _lcm_denominator(rows):
    lcm = 1
    for row in rows:
        for v in row:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return lcm


# -- the Lattice type --------------------------------------------------------


class Lattice:
    """Immutable lattice sqrt(scale) * {u M : u in Z^n}."""

    __slots__ = (
        "rows",
        "scale",
        "dimension",
        "ambient",
        "label",
        "_gram",
        "_solve",
        "_reduced",
    )

    def __init__(self, rows, scale=1, label=None):
        rows = _frac_rows(rows)
        if not rows or not rows[0]:
            raise ValueError("a lattice needs at least one generator")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError("generator rows have inconsistent lengths")
        scale = Fraction(scale)
        if scale <= 0:
            raise ValueError("scale must be positive")
        # fold the square part of the scale into the rows:
        # scale = (s0 * t^2) / b^2 with s0 squarefree => factor t/b on rows
        s0, t = _squarefree_split(scale.numerator * scale.denominator)
        factor = Fraction(t, scale.denominator)
        if factor != 1:
            rows = tuple(tuple(factor * v for v in row) for row in rows)
        if _rank(rows) != len(rows):
            raise ValueError("generator rows are not linearly independent")
        self.rows = rows
        self.scale = s0
        self.dimension = len(rows)
        self.ambient = len(rows[0])
        self.label = label
        self._gram = None
        self._solve = None
        self._reduced = None

    def with_label(self, label):
        out = Lattice.__new__(Lattice)
        out.rows = self.rows
        out.scale = self.scale
        out.dimension = self.dimension
        out.ambient = self.ambient
        out.label = label
        out._gram = self._gram
        out._solve = self._solve
        out._reduced = self._reduced
        return out

    def embed(self, coords):
        """The rational-frame vector u M for integer (or rational) coords u."""
        if len(coords) != self.dimension:
            raise DimensionMismatch("coordinate length does not match rank")
        return tuple(
            sum(Fraction(c) * self.rows[i][j] for i, c in enumerate(coords))
            for j in range(self.ambient)
        )

    def norm_of_coords(self, coords):
        g = gram(self)
        return sum(
            Fraction(ci) * sum(g[i][j] * Fraction(cj) for j, cj in enumerate(coords))
            for i, ci in enumerate(coords)
        )

    def __repr__(self):
        name = self.label or "Lattice"
        return f"<{name}: rank {self.dimension} in R^{self.ambient}, scale {self.scale}>"


class GlueRecipe:
    """A base lattice plus coset representatives forming a group mod base."""

    __slots__ = ("base", "glue_vectors")

    def __init__(self, base, glue_vectors):
        self.base = base
        self.glue_vectors = tuple(
            tuple(Fraction(v) for v in g) for g in glue_vectors
        )
        for g in self.glue_vectors:
            if len(g) != base.ambient:
                raise DimensionMismatch("glue vector does not fit the base frame")


# -- basic operations --------------------------------------------------------


def gram(L):
    """Exact Gram matrix scale * M M^T."""
    if L._gram is None:
        mmt = _mat_mul(L.rows, _mat_transpose(L.rows))
        s = Fraction(L.scale)
        L._gram = tuple(tuple(s * v for v in row) for row in mmt)
    return L._gram


def det_lattice(L):
    return _det(gram(L))


def dual_basis(L):
    """The dual lattice {x : x.v integral for all v in L}, same frame."""
    mmt = _mat_mul(L.rows, _mat_transpose(L.rows))
    rows = _mat_mul(_inv(mmt), L.rows)
    label = f"{L.label}*" if L.label else None
    return Lattice(rows, scale=Fraction(1, L.scale), label=label)


def is_integral(L):
    return all(v.denominator == 1 for row in gram(L) for v in row)


def is_unimodular(L):
    return is_integral(L) and det_lattice(L) == 1


def is_even(L):
    """Unimodular with even diagonal (hence all norms even)."""
    return is_unimodular(L) and all(
        row[i] % 2 == 0 for i, row in enumerate(gram(L))
    )


def _solve_matrix(L):
    # cached M^T (M M^T)^{-1}; right-multiplying a frame vector by it
    # recovers basis coordinates (exact least squares, ambient >= rank)
    if L._solve is None:
        mmt = _mat_mul(L.rows, _mat_transpose(L.rows))
        L._solve = _mat_mul(_mat_transpose(L.rows), _inv(mmt))
    return L._solve


def coords_in_basis(L, vec):
    """Rational coordinates u with u M = vec, or None if vec is off the span."""
    vec = tuple(Fraction(v) for v in vec)
    if len(vec) != L.ambient:
        raise DimensionMismatch("vector does not fit the lattice frame")
    u = _mat_mul((vec,), _solve_matrix(L))[0]
    if L.embed(u) != vec:
        return None
    return u


def contains_vector(L, vec):
    """Is the rational-frame vector vec an element of L (same frame/scale)?"""
    u = coords_in_basis(L, vec)
    return u is not None and all(c.denominator == 1 for c in u)


def same_lattice(L1, L2):
    """True iff the two lattices are the same point set."""
    if L1.dimension != L2.dimension:
        raise DimensionMismatch(
            f"rank {L1.dimension} vs {L2.dimension}"
        )
    if L1.ambient != L2.ambient or L1.scale != L2.scale:
        return False
    for a, b in ((L1, L2), (L2, L1)):
        mmt = _mat_mul(b.rows, _mat_transpose(b.rows))
        t = _mat_mul(a.rows, _mat_mul(_mat_transpose(b.rows), _inv(mmt)))
        if any(v.denominator != 1 for row in t for v in row):
            return False
        if _mat_mul(t, b.rows) != a.rows:
            return False
    return True


def lll_reduce(L, delta=Fraction(3, 4)):
    """The same lattice on a Lenstra-Lenstra-Lovasz reduced basis.

    Exact rational arithmetic; the result is cached on L.  Skewed bases
    (e.g. the lifted-generator bases of mod-2 construction lattices)
    make rounding-based nearest-point searches start far from the
    target; a reduced basis keeps those searches small.
    """
    if L._reduced is not None:
        return L._reduced
    b = [list(row) for row in L.rows]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    star = [None] * n
    norms = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    valid = 0  # rows below this index have current Gram-Schmidt data

    def ensure(upto):
        nonlocal valid
        while valid < upto:
            i = valid
            v = list(b[i])
            for j in range(i):
                mu[i][j] = dot(b[i], star[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
            star[i] = v
            norms[i] = dot(v, v)
            valid += 1

    half = Fraction(1, 2)
    k = 1
    while k < n:
        ensure(k + 1)
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > half:
                q = math.floor(mu[k][j] + half)
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                valid = k
                ensure(k + 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k - 1], b[k] = b[k], b[k - 1]
            valid = k - 1
            k = max(k - 1, 1)
    out = Lattice(tuple(tuple(row) for row in b), scale=L.scale, label=L.label)
    L._reduced = out
    out._reduced = out
    return out


# -- enumeration --------------------------------------------------------------


def _integer_form(L):
    """(lambda, integer Gram) with integer_gram = lambda * gram(L)."""
    g = gram(L)
    lam = 1
    for row in g:
        for v in row:
            lam = lam * v.denominator // math.gcd(lam, v.denominator)
    g_int = [[int(v * lam) for v in row] for row in g]
    return lam, g_int


def enumerate_vectors_up_to_norm(L, norm_bound, max_nodes=MAX_SEARCH_NODES):
    """All nonzero (vector, norm) with norm <= norm_bound, both signs.

    Vectors are rational-frame tuples u M; norms are geometric (include
    the scale factor).  Sorted by (norm, vector) for reproducibility.
    """
    norm_bound = Fraction(norm_bound)
    if norm_bound < 0:
        raise ValueError("norm bound must be non-negative")
    lam, g_int = _integer_form(L)
    bound_int = math.floor(norm_bound * lam)
    hits = enumerate_upto(g_int, bound_int, False, max_nodes)
    out = []
    for coords, value in hits:
        out.append((L.embed(coords), Fraction(value, lam)))
    out.sort(key=lambda pair: (pair[1], pair[0]))
    return out


def theta_coeffs_enum(L, max_norm, max_nodes=MAX_SEARCH_NODES):
    """Theta coefficients A_0..A_max_norm (A_m = #vectors of norm m)."""
    if not is_integral(L):
        raise NotIntegral("theta coefficients need an integral lattice")
    lam, g_int = _integer_form(L)
    counts = enumerate_upto(g_int, max_norm * lam, True, max_nodes)
    coeffs = [0] * (max_norm + 1)
    coeffs[0] = 1
    for value, count in counts.items():
        if value % lam:
            raise NotIntegral(f"non-integer norm {Fraction(value, lam)} encountered")
        coeffs[value // lam] += count
    return coeffs


def minimal_norm(L, search_limit=16, max_nodes=MAX_SEARCH_NODES):
    """(min nonzero norm, count at that norm), by increasing-radius search."""
    lam, g_int = _integer_form(L)
    bound = 2
    while bound <= search_limit:
        counts = enumerate_upto(g_int, bound * lam, True, max_nodes)
        if counts:
            vmin = min(counts)
            return Fraction(vmin, lam), counts[vmin]
        bound *= 2
    raise ValueError(f"no vectors of norm <= {search_limit} found")


def kissing_number(L, max_nodes=MAX_SEARCH_NODES):
    """Number of minimal-norm nonzero vectors."""
    return minimal_norm(L, max_nodes=max_nodes)[1]


# -- constructions ------------------------------------------------------------


def direct_sum(L1, L2):
    """Orthogonal direct sum; requires equal scale factors."""
    if L1.scale != L2.scale:
        raise ValueError(
            "direct sum of lattices with different scale factors is not "
            "representable in one rational frame"
        )
    z1 = (Fraction(0),) * L2.ambient
    z2 = (Fraction(0),) * L1.ambient
    rows = [row + z1 for row in L1.rows] + [z2 + row for row in L2.rows]
    label = None
    if L1.label and L2.label:
        label = f"{L1.label}+{L2.label}"
    return Lattice(rows, scale=L1.scale, label=label)


def scale(L, factor, sqrt2=False):
    """Scaled lattice (factor * sqrt(2 if sqrt2 else 1)) * L; exact Gram."""
    factor = Fraction(factor)
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    rows = tuple(tuple(factor * v for v in row) for row in L.rows)
    s = L.scale * (2 if sqrt2 else 1)
    return Lattice(rows, scale=s, label=L.label)


def build_glue(recipe, label=None):
    """Union of cosets base+g over the glue group, as a lattice.

    Checks that the glue vectors form a group modulo the base
    (GlueNotClosed otherwise) and that their number squared equals
    det(base), the condition for a unimodular result (IndexMismatch).
    """
    base = recipe.base
    glue = recipe.glue_vectors
    if not glue:
        raise GlueNotClosed("glue set is empty (need at least the zero coset)")

    # coset label = fractional part of the basis coordinates; two vectors
    # agree mod base iff their labels agree, so group closure reduces to
    # label arithmetic instead of repeated lattice-membership solves
    labels = []
    for g in glue:
        if len(g) != base.ambient:
            raise DimensionMismatch("glue vector does not fit the base frame")
        u = coords_in_basis(base, g)
        if u is None:
            raise GlueNotClosed(f"glue vector {g} is outside the base span")
        labels.append(tuple(c - c.__floor__() for c in u))
    label_set = set(labels)
    if len(label_set) != len(labels):
        raise GlueNotClosed("two glue vectors name the same coset")
    if (Fraction(0),) * base.dimension not in label_set:
        raise GlueNotClosed("zero coset missing from the glue set")
    for i, gi in enumerate(labels):
        for gj in labels[i:]:
            s = tuple((a + b) % 1 for a, b in zip(gi, gj))
            if s not in label_set:
                raise GlueNotClosed(
                    f"glue sum {glue[i]} + {glue[labels.index(gj)]} falls "
                    "outside the listed cosets"
                )

    m = len(glue)
    base_det = det_lattice(base)
    if m * m != base_det:
        raise IndexMismatch(
            f"{m} glue vectors cannot take determinant {base_det} to 1"
        )

    all_rows = list(base.rows) + [g for g in glue]
    lam = _lcm_denominator([tuple(Fraction(v) for v in r) for r in all_rows])
    int_rows = [[int(v * lam) for v in row] for row in (_frac_rows(all_rows))]
    hnf = _row_hnf(int_rows)
    if len(hnf) != base.dimension:
        raise IndexMismatch("glue vectors changed the lattice rank")
    rows = [[Fraction(v, lam) for v in row] for row in hnf]
    out = Lattice(rows, scale=base.scale, label=label or base.label)
    expected = base_det / (m * m)
    if det_lattice(out) != expected:
        raise IndexMismatch(
            f"glue produced determinant {det_lattice(out)}, expected {expected}"
        )
    return out


# -- standard components -------------------------------------------------------


def integer_lattice(k, label=None):
    """Z^k with the identity basis."""
    if k < 1:
        raise ValueError("dimension must be positive")
    return Lattice(_identity(k), label=label or (f"Z^{k}" if k > 1 else "Z"))


def root_lattice(name):
    """Standard root lattices: A<n>, D<n>, E6, E7, E8 (norm-2 root bases)."""
    kind, num = name[0].upper(), name[1:]
    if not num.isdigit():
        raise ValueError(f"cannot parse root lattice name {name!r}")
    n = int(num)
    if kind == "A" and n >= 1:
        rows = [
            [1 if j == i else -1 if j == i + 1 else 0 for j in range(n + 1)]
            for i in range(n)
        ]
        return Lattice(rows, label=f"A{n}")
    if kind == "D" and n >= 2:
        rows = [
            [1 if j == i else -1 if j == i + 1 else 0 for j in range(n)]
            for i in range(n - 1)
        ]
        rows.append([0] * (n - 2) + [1, 1])
        return Lattice(rows, label=f"D{n}")
    if kind == "E" and n in (6, 7, 8):
        half = Fraction(1, 2)
        a1 = [half, -half, -half, -half, -half, -half, -half, half]
        simple = [a1, [1, 1, 0, 0, 0, 0, 0, 0]]
        for i in range(6):
            row = [0] * 8
            row[i] = -1
            row[i + 1] = 1
            simple.append(row)
        return Lattice(simple[:n], label=f"E{n}")
    raise ValueError(f"unsupported root lattice {name!r}")
