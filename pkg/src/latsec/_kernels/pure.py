"""Reference enumeration kernels in exact rational arithmetic.

Short-vector enumeration runs entirely over Fractions (LDL^T
decomposition of the integer Gram matrix, branch-and-bound over one
coordinate per level), so counts and norms are exact by construction.
The compiled kernel in `_fast` reproduces the same interface with
float pruning plus an exact integer accept test; tests compare the two.

Nearest-point search works on float targets (channel outputs), uses the
same recursion in double precision, and breaks distance ties by
lexicographically smallest integer coordinate vector.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import SearchTooLarge

IS_COMPILED = False


def _ldl(gram):
    """Exact G = L D L^T with unit lower-triangular L, diagonal D > 0."""
    n = len(gram)
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(gram[i][j])
            for k in range(j):
                s -= L[i][k] * L[j][k] * D[k]
            L[i][j] = s / D[j]
        d = Fraction(gram[i][i])
        for k in range(i):
            d -= L[i][k] * L[i][k] * D[k]
        if d <= 0:
            raise ValueError("Gram matrix is not positive definite")
        D[i] = d
        L[i][i] = Fraction(1)
    return L, D


def enumerate_upto(gram_int, bound_int, count_only, max_nodes):
    """All nonzero integer vectors x with x*gram_int*x^T <= bound_int.

    gram_int is an integer symmetric positive-definite matrix; values
    returned are the exact integer form values.  Output is a dict
    {value: count} when count_only, else a list of (coords, value)
    containing both x and -x.  Raises SearchTooLarge past max_nodes.
    """
    n = len(gram_int)
    if bound_int < 0:
        return {} if count_only else []
    L, D = _ldl(gram_int)
    bound = Fraction(bound_int)
    counts = {}
    found = []
    x = [0] * n
    nodes = 0

    def descend(level, rem, shifts):
        # shifts[i] = sum_{j>level} L[j][i] * x[j] for i <= level
        nonlocal nodes
        c = shifts[level]
        d = D[level]
        t = rem / d
        r = math.sqrt(float(t)) if t > 0 else 0.0
        lo = math.floor(-r - float(c)) - 1
        hi = math.ceil(r - float(c)) + 1
        while d * (lo + c) ** 2 > rem:
            lo += 1
            if lo > hi:
                return
        while d * (hi + c) ** 2 > rem:
            hi -= 1
        for xi in range(lo, hi + 1):
            nodes += 1
            if nodes > max_nodes:
                raise SearchTooLarge(
                    f"enumeration exceeded {max_nodes} nodes"
                )
            x[level] = xi
            used = d * (xi + c) ** 2
            if level == 0:
                if all(v == 0 for v in x):
                    continue
                # integral because gram_int is integral
                value_int = _exact_value(gram_int, x)
                if count_only:
                    counts[value_int] = counts.get(value_int, 0) + 1
                else:
                    found.append((tuple(x), value_int))
            else:
                nxt = list(shifts)
                for i in range(level):
                    nxt[i] += L[level][i] * xi
                descend(level - 1, rem - used, nxt)

    descend(n - 1, bound, [Fraction(0)] * n)
    return counts if count_only else found


def _exact_value(gram, x):
    total = 0
    n = len(x)
    for i in range(n):
        xi = x[i]
        if xi == 0:
            continue
        row = gram[i]
        total += xi * sum(row[j] * x[j] for j in range(n) if x[j] != 0)
    return total


def _float_ldl(gram):
    n = len(gram)
    L = [[0.0] * n for _ in range(n)]
    D = [0.0] * n
    for i in range(n):
        for j in range(i):
            s = float(gram[i][j])
            for k in range(j):
                s -= L[i][k] * L[j][k] * D[k]
            L[i][j] = s / D[j]
        d = float(gram[i][i])
        for k in range(i):
            d -= L[i][k] * L[i][k] * D[k]
        if d <= 0:
            raise ValueError("Gram matrix is not positive definite")
        D[i] = d
        L[i][i] = 1.0
    return L, D


def nearest_point(gram, target, max_nodes=10**8):
    """Integer coordinates u minimizing (u-target) gram (u-target)^T.

    gram: positive-definite matrix (floats or exact entries), target: a
    float coordinate vector.  Ties within a 1e-9 relative window are
    broken by lexicographic order of the coordinate tuples.
    """
    n = len(gram)
    if len(target) != n:
        raise ValueError("target length does not match Gram dimension")
    L, D = _float_ldl(gram)
    t = [float(v) for v in target]

    # Gram-Schmidt coefficients of the target; the recursion's partial
    # sums measure true distance only against these, not raw coordinates
    tgs = [0.0] * n
    for level in range(n):
        acc = t[level]
        for j in range(level + 1, n):
            acc += L[j][level] * t[j]
        tgs[level] = acc

    # Babai rounding pass for an initial search radius
    u0 = [0] * n
    shifts = [0.0] * n
    for level in range(n - 1, -1, -1):
        c = shifts[level] - tgs[level]
        u0[level] = math.floor(-c + 0.5)
        for i in range(level):
            shifts[i] += L[level][i] * u0[level]
    best_val = _float_dist(gram, u0, t)
    radius = best_val * (1.0 + 1e-9) + 1e-12

    candidates = [tuple(u0)]
    best = [best_val]
    u = [0] * n
    nodes = 0

    def descend(level, rem, shifts):
        nonlocal nodes
        c = shifts[level] - tgs[level]
        d = D[level]
        r = math.sqrt(rem / d) if rem > 0 else 0.0
        lo = math.floor(-r - c) - 1
        hi = math.ceil(r - c) + 1
        for ui in range(lo, hi + 1):
            nodes += 1
            if nodes > max_nodes:
                raise SearchTooLarge(f"nearest-point search exceeded {max_nodes} nodes")
            used = d * (ui + c) * (ui + c)
            if used > rem * (1.0 + 1e-12) + 1e-12:
                continue
            u[level] = ui
            if level == 0:
                val = _float_dist(gram, u, t)
                window = 1e-9 * max(1.0, best[0])
                if val < best[0] - window:
                    best[0] = val
                    candidates.clear()
                    candidates.append(tuple(u))
                elif val <= best[0] + window:
                    if val < best[0]:
                        best[0] = val
                    candidates.append(tuple(u))
            else:
                nxt = list(shifts)
                for i in range(level):
                    nxt[i] += L[level][i] * ui
                descend(level - 1, rem - used, nxt)

    descend(n - 1, radius, [0.0] * n)
    return min(candidates)


def _float_dist(gram, u, t):
    n = len(u)
    w = [u[i] - t[i] for i in range(n)]
    total = 0.0
    for i in range(n):
        row = gram[i]
        acc = 0.0
        for j in range(n):
            acc += float(row[j]) * w[j]
        total += w[i] * acc
    return total


def nearest_point_batch(gram, targets, max_nodes=10**8):
    """nearest_point applied to each row of targets; returns a list of tuples."""
    return [nearest_point(gram, row, max_nodes=max_nodes) for row in targets]
