# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Same interface as `pure`: branch-and-bound over an LDL^T decomposition.
Pruning runs in double precision with a widened threshold; every
candidate short vector is accepted or rejected by an exact 64-bit
integer evaluation of the quadratic form, so reported counts and norms
are exact whenever the form values fit in int64 (they are tiny here).
"""

from libc.math cimport sqrt, floor, ceil

import numpy as np

from .errors import SearchTooLarge

IS_COMPILED = True


cdef int _float_ldl(double[:, :] G, double[:, :] L, double[:] D, int n) except -1:
    cdef int i, j, k
    cdef double s, d
    for i in range(n):
        for j in range(i):
            s = G[i, j]
            for k in range(j):
                s -= L[i, k] * L[j, k] * D[k]
            L[i, j] = s / D[j]
        d = G[i, i]
        for k in range(i):
            d -= L[i, k] * L[i, k] * D[k]
        if d <= 0:
            raise ValueError("Gram matrix is not positive definite")
        D[i] = d
        L[i, i] = 1.0
    return 0


cdef long long _exact_value(long long[:, :] G, long long[:] x, int n):
    cdef long long total = 0, acc
    cdef int i, j
    for i in range(n):
        if x[i] == 0:
            continue
        acc = 0
        for j in range(n):
            acc += G[i, j] * x[j]
        total += x[i] * acc
    return total


cdef int _descend_enum(int level, double rem,
                       double[:, :] L, double[:] D, double[:, :] shifts,
                       long long[:] x, int n,
                       long long[:, :] Gll, long long bound_int,
                       bint count_only, dict counts, list found,
                       long long[:] nodes, long long max_nodes) except -1:
    cdef double c = shifts[level, level]
    cdef double d = D[level]
    cdef double r = sqrt(rem / d) if rem > 0 else 0.0
    cdef long long lo = <long long>floor(-r - c) - 1
    cdef long long hi = <long long>ceil(r - c) + 1
    cdef long long xi, value
    cdef double used
    cdef int i
    cdef bint zero
    for xi in range(lo, hi + 1):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise SearchTooLarge(f"enumeration exceeded {max_nodes} nodes")
        used = d * (xi + c) * (xi + c)
        if used > rem:
            continue
        x[level] = xi
        if level == 0:
            zero = True
            for i in range(n):
                if x[i] != 0:
                    zero = False
                    break
            if zero:
                continue
            value = _exact_value(Gll, x, n)
            if value > bound_int:
                continue
            if count_only:
                counts[value] = counts.get(value, 0) + 1
            else:
                found.append((tuple([x[i] for i in range(n)]), value))
        else:
            for i in range(level):
                shifts[level - 1, i] = shifts[level, i] + L[level, i] * xi
            _descend_enum(level - 1, rem - used, L, D, shifts, x, n,
                          Gll, bound_int, count_only, counts, found,
                          nodes, max_nodes)
    return 0


def enumerate_upto(gram_int, bound_int, count_only, max_nodes):
    """All nonzero integer x with x*gram_int*x^T <= bound_int (exact values)."""
    cdef int n = len(gram_int)
    if bound_int < 0:
        return {} if count_only else []
    G = np.array(gram_int, dtype=np.int64)
    Gd = G.astype(np.float64)
    cdef double[:, :] Gv = Gd
    L_arr = np.zeros((n, n), dtype=np.float64)
    D_arr = np.zeros(n, dtype=np.float64)
    cdef double[:, :] L = L_arr
    cdef double[:] D = D_arr
    _float_ldl(Gv, L, D, n)
    shifts_arr = np.zeros((n, n), dtype=np.float64)
    x_arr = np.zeros(n, dtype=np.int64)
    nodes_arr = np.zeros(1, dtype=np.int64)
    counts = {}
    found = []
    _descend_enum(n - 1, <double>bound_int + 0.5, L, D, shifts_arr, x_arr, n,
                  G, <long long>bound_int, bool(count_only), counts, found,
                  nodes_arr, <long long>max_nodes)
    return counts if count_only else found


cdef double _float_dist(double[:, :] G, long long[:] u, double[:] t, int n):
    cdef double total = 0.0, acc
    cdef int i, j
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += G[i, j] * (u[j] - t[j])
        total += (u[i] - t[i]) * acc
    return total


cdef int _descend_cvp(int level, double rem,
                      double[:, :] G, double[:, :] L, double[:] D,
                      double[:, :] shifts, double[:] t, double[:] tgs,
                      long long[:] u, int n,
                      list candidates, double[:] best,
                      long long[:] nodes, long long max_nodes) except -1:
    cdef double c = shifts[level, level] - tgs[level]
    cdef double d = D[level]
    cdef double r = sqrt(rem / d) if rem > 0 else 0.0
    cdef long long lo = <long long>floor(-r - c) - 1
    cdef long long hi = <long long>ceil(r - c) + 1
    cdef long long ui
    cdef double used, val, window
    cdef int i
    for ui in range(lo, hi + 1):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise SearchTooLarge(f"nearest-point search exceeded {max_nodes} nodes")
        used = d * (ui + c) * (ui + c)
        if used > rem * (1.0 + 1e-12) + 1e-12:
            continue
        u[level] = ui
        if level == 0:
            val = _float_dist(G, u, t, n)
            window = 1e-9 * (1.0 if best[0] < 1.0 else best[0])
            if val < best[0] - window:
                best[0] = val
                candidates.clear()
                candidates.append(tuple([u[i] for i in range(n)]))
            elif val <= best[0] + window:
                if val < best[0]:
                    best[0] = val
                candidates.append(tuple([u[i] for i in range(n)]))
        else:
            for i in range(level):
                shifts[level - 1, i] = shifts[level, i] + L[level, i] * ui
            _descend_cvp(level - 1, rem - used, G, L, D, shifts, t, tgs, u, n,
                         candidates, best, nodes, max_nodes)
    return 0


def nearest_point(gram, target, max_nodes=10**8):
    """Closest integer-coordinate lattice point to a float target."""
    cdef int n = len(gram)
    if len(target) != n:
        raise ValueError("target length does not match Gram dimension")
    G_arr = np.array(gram, dtype=np.float64)
    t_arr = np.asarray(target, dtype=np.float64).copy()
    cdef double[:, :] G = G_arr
    cdef double[:] t = t_arr
    L_arr = np.zeros((n, n), dtype=np.float64)
    D_arr = np.zeros(n, dtype=np.float64)
    cdef double[:, :] L = L_arr
    cdef double[:] D = D_arr
    _float_ldl(G, L, D, n)

    # Gram-Schmidt coefficients of the target; the recursion's partial
    # sums measure true distance only against these, not raw coordinates
    tgs_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] tgs = tgs_arr
    cdef int level, i
    cdef double acc
    for level in range(n):
        acc = t[level]
        for i in range(level + 1, n):
            acc += L[i, level] * t[i]
        tgs[level] = acc

    # Babai rounding pass for the initial radius
    u0_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] u0 = u0_arr
    babai_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] bsh = babai_arr
    cdef double c
    for level in range(n - 1, -1, -1):
        c = bsh[level] - tgs[level]
        u0[level] = <long long>floor(-c + 0.5)
        for i in range(level):
            bsh[i] += L[level, i] * u0[level]
    best_arr = np.array([_float_dist(G, u0, t, n)], dtype=np.float64)
    cdef double radius = best_arr[0] * (1.0 + 1e-9) + 1e-12

    candidates = [tuple([u0[i] for i in range(n)])]
    shifts_arr = np.zeros((n, n), dtype=np.float64)
    u_arr = np.zeros(n, dtype=np.int64)
    nodes_arr = np.zeros(1, dtype=np.int64)
    _descend_cvp(n - 1, radius, G, L, D, shifts_arr, t, tgs, u_arr, n,
                 candidates, best_arr, nodes_arr, <long long>max_nodes)
    return min(candidates)


def nearest_point_batch(gram, targets, max_nodes=10**8):
    """nearest_point applied to each row of targets; returns a list of tuples."""
    return [nearest_point(gram, row, max_nodes=max_nodes) for row in targets]
