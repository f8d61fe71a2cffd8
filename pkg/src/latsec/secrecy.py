"""Secrecy gains of unimodular lattices.

Exact results come from the decomposition of a unimodular theta series
over the theta3/Delta_8 basis: gains are rational numbers computed in
integer arithmetic.  Floating point appears only in the diagnostic
secrecy-function evaluations (values along tau = iy), which use the
reflection identities theta3(i/y) = sqrt(y) theta3(iy) (and the
theta2/theta4 swap) so that series are only ever summed at y >= 1,
where they converge fast.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

from . import qseries
from .qseries import QSeries, TruncationInsufficient

__all__ = [
    "HeckeDecomposition",
    "SecrecyProfile",
    "NonIntegerSolution",
    "ZeroDenominator",
    "OutOfStatedRange",
    "EmptyDimension",
    "BestPick",
    "hecke_decompose",
    "gain_from_decomposition",
    "gain_closed_form",
    "jacobi_values",
    "secrecy_function",
    "z_of_y",
    "locate_max",
    "classify_best",
]


class NonIntegerSolution(Exception):
    """The coefficients are inconsistent with a unimodular theta series."""


class ZeroDenominator(Exception):
    pass


class OutOfStatedRange(UserWarning):
    """Advisory: the closed form was asked outside dimensions 16..23."""


class EmptyDimension(Exception):
    pass


# series order (in u-units) for all numeric evaluations; at y >= 1 the
# nome satisfies u <= e^(-pi/4) ~ 0.456, so 300 terms reach ~1e-100
_EVAL_ORDER = 300


class HeckeDecomposition:
    """Integer vector (a_0, ..., a_R) with Theta = sum a_r theta3^(n-8r) Delta8^r."""

    __slots__ = ("n", "a")

    def __init__(self, n, a):
        a = tuple(int(v) for v in a)
        if not a or a[0] != 1:
            raise ValueError("decomposition must start with a_0 = 1")
        if len(a) != n // 8 + 1:
            raise ValueError(f"dimension {n} needs {n // 8 + 1} coefficients, got {len(a)}")
        self.n = n
        self.a = a

    def reconstruct(self, q_order):
        """The theta series (as a QSeries) implied by the decomposition."""
        order = 4 * q_order + 4
        total = QSeries.zero(order)
        for r, ar in enumerate(self.a):
            term = qseries.cached_power("theta3", self.n - 8 * r, order).mul(
                qseries.cached_power("delta8", r, order)
            )
            total = total.add(term.scale(ar))
        return total

    def __eq__(self, other):
        if not isinstance(other, HeckeDecomposition):
            return NotImplemented
        return self.n == other.n and self.a == other.a

    def __repr__(self):
        return f"HeckeDecomposition(n={self.n}, a={self.a})"


class SecrecyProfile:
    """Summary record: label, dimension, exact gain, optional extras."""

    __slots__ = ("lattice_label", "n", "gain", "decomposition", "argmax_y")

    def __init__(self, lattice_label, n, gain, decomposition=None, argmax_y=None):
        gain = Fraction(gain)
        if gain <= 0:
            raise ValueError("secrecy gain must be positive")
        if decomposition is not None and gain_from_decomposition(decomposition) != gain:
            raise ValueError("gain does not match the decomposition")
        self.lattice_label = lattice_label
        self.n = n
        self.gain = gain
        self.decomposition = decomposition
        self.argmax_y = argmax_y

    def __repr__(self):
        return f"SecrecyProfile({self.lattice_label!r}, n={self.n}, gain={self.gain})"


def hecke_decompose(n, theta_coeffs):
    """Solve Theta = sum_r a_r theta3^(n-8r) Delta8^r for integer a_r.

    theta_coeffs are the integer q-coefficients A_0.. of the lattice
    theta series; at least n//8 + 1 of them are required.  The system is
    triangular (the r-th basis element starts at q^r), so the solution
    is exact back-substitution.  Raises NonIntegerSolution when the
    provided coefficients cannot be reconstructed, which means they do
    not come from a unimodular lattice of that dimension.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    coeffs = [Fraction(c) for c in theta_coeffs]
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegerSolution("theta coefficients must be integers")
    r_max = n // 8
    if len(coeffs) < r_max + 1:
        raise ValueError(
            f"need at least {r_max + 1} coefficients for dimension {n}, got {len(coeffs)}"
        )
    if coeffs[0] != 1:
        raise NonIntegerSolution("A_0 must be 1 (the zero vector)")
    q_order = len(coeffs) - 1
    order = 4 * q_order + 8
    basis = []
    for r in range(r_max + 1):
        series = qseries.cached_power("theta3", n - 8 * r, order).mul(
            qseries.cached_power("delta8", r, order)
        )
        basis.append(series.q_coefficients(q_order + 1))
    a = []
    for r in range(r_max + 1):
        value = coeffs[r] - sum(a[s] * basis[s][r] for s in range(r))
        # basis[r][r] = 1 (Delta8^r starts with q^r, theta3 power with 1)
        if value.denominator != 1:
            raise NonIntegerSolution(f"coefficient a_{r} = {value} is not an integer")
        a.append(int(value))
    # the solved prefix is forced; any further provided coefficients must agree
    for m in range(r_max + 1, q_order + 1):
        reconstructed = sum(a[s] * basis[s][m] for s in range(r_max + 1))
        if reconstructed != coeffs[m]:
            raise NonIntegerSolution(
                f"A_{m} = {coeffs[m]} inconsistent with the decomposition "
                f"(expected {reconstructed})"
            )
    return HeckeDecomposition(n, a)


def gain_from_decomposition(d):
    """Exact secrecy gain 1 / sum_r a_r / 64^r."""
    denom = sum(Fraction(ar, 64**r) for r, ar in enumerate(d.a))
    if denom == 0:
        raise ZeroDenominator("decomposition sums to zero at tau = i")
    return 1 / denom


def gain_closed_form(n, kissing):
    """Gain of a non-extremal unimodular lattice from (dimension, kissing).

    Exact value 1/(1 - 2n/2^6 + (2n(n-23) + K)/2^12).  Stated for
    16 <= n <= 23; outside that range the same expression is returned
    but flagged with an OutOfStatedRange warning.
    """
    if not 16 <= n <= 23:
        warnings.warn(
            f"closed form evaluated at dimension {n}, outside 16..23",
            OutOfStatedRange,
            stacklevel=2,
        )
    denom = 1 - Fraction(2 * n, 64) + Fraction(2 * n * (n - 23) + kissing, 4096)
    if denom == 0:
        raise ZeroDenominator(f"denominator vanishes for n={n}, K={kissing}")
    return 1 / denom


# -- numeric diagnostics -------------------------------------------------------


def jacobi_values(y):
    """(theta2, theta3, theta4) at tau = iy, via reflection for y < 1."""
    if y <= 0:
        raise ValueError("y must be positive")
    if y >= 1:
        t2 = qseries.cached_power("theta2", 1, _EVAL_ORDER).eval_at_iy(y)
        t3 = qseries.cached_power("theta3", 1, _EVAL_ORDER).eval_at_iy(y)
        t4 = qseries.cached_power("theta4", 1, _EVAL_ORDER).eval_at_iy(y)
        return t2, t3, t4
    r2, r3, r4 = jacobi_values(1.0 / y)
    f = math.sqrt(1.0 / y)
    return f * r4, f * r3, f * r2


def _theta_value(theta_of_lattice, y):
    if isinstance(theta_of_lattice, HeckeDecomposition):
        t2, t3, t4 = jacobi_values(y)
        delta8 = (t2 * t4) ** 4 / 16.0
        return sum(
            ar * t3 ** (theta_of_lattice.n - 8 * r) * delta8**r
            for r, ar in enumerate(theta_of_lattice.a)
        )
    if isinstance(theta_of_lattice, QSeries):
        return theta_of_lattice.eval_at_iy(y, as_theta=True)
    if callable(theta_of_lattice):
        return theta_of_lattice(y)
    raise TypeError(
        "theta must be a HeckeDecomposition, a QSeries, or a callable of y"
    )


def secrecy_function(theta_of_lattice, n, vol, y):
    """Xi(y) = Theta_{vZ^n}(iy) / Theta_Lambda(iy) with v = vol^(1/n)."""
    if y <= 0:
        raise ValueError("y must be positive")
    v2 = float(vol) ** (2.0 / n)
    numerator = jacobi_values(y * v2)[1] ** n
    return numerator / _theta_value(theta_of_lattice, y)


def z_of_y(y):
    """z = theta2^4 theta4^4 / theta3^8 at tau = iy (range (0, 1/4], max at y=1)."""
    t2, t3, t4 = jacobi_values(y)
    return (t2 * t4) ** 4 / t3**8


def locate_max(theta_of_lattice, n, vol=1, y_range=(0.05, 20.0), grid=201,
               refine_tol=1e-9):
    """Grid scan plus golden-section refinement of the secrecy function.

    The grid is log-spaced over y_range with y = 1 added; a flat
    function (all values equal within 1e-12 relative) reports y = 1.
    Returns (argmax_y, max_value).
    """
    lo, hi = float(y_range[0]), float(y_range[1])
    if not lo < 1 < hi:
        raise ValueError("y_range must contain 1")
    points = max(int(grid), 101)
    ys = [lo * (hi / lo) ** (i / (points - 1)) for i in range(points)]
    ys.append(1.0)
    ys.sort()
    values = [secrecy_function(theta_of_lattice, n, vol, y) for y in ys]
    vmax = max(values)
    vmin = min(values)
    if vmax - vmin <= 1e-12 * max(1.0, abs(vmax)):
        return 1.0, secrecy_function(theta_of_lattice, n, vol, 1.0)
    near = [i for i, v in enumerate(values) if vmax - v <= 1e-12 * abs(vmax)]
    idx = next((i for i in near if ys[i] == 1.0), near[0])
    left = ys[max(idx - 1, 0)]
    right = ys[min(idx + 1, len(ys) - 1)]

    def f(log_y):
        return secrecy_function(theta_of_lattice, n, vol, math.exp(log_y))

    a, b = math.log(left), math.log(right)
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > refine_tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    y_star = math.exp((a + b) / 2.0)
    return y_star, secrecy_function(theta_of_lattice, n, vol, y_star)


# -- classification ------------------------------------------------------------


class BestPick:
    """A classification winner: a catalog entry padded with Z^zk."""

    __slots__ = ("entry", "zk")

    def __init__(self, entry, zk):
        self.entry = entry
        self.zk = zk

    @property
    def label(self):
        if self.zk == 0:
            return self.entry.label
        suffix = "Z" if self.zk == 1 else f"Z^{self.zk}"
        return f"{self.entry.label}⊕{suffix}"

    @property
    def gain(self):
        return self.entry.gain

    def __repr__(self):
        return f"BestPick({self.label}, gain={self.gain})"


def classify_best(catalog, dim):
    """Entries of maximal gain at `dim`, allowing direct sums with Z^k.

    Padding a lattice with Z^k keeps its gain, so every catalog entry of
    dimension <= dim competes.  All ties are returned.
    """
    if not 9 <= dim <= 23:
        raise ValueError("classification covers dimensions 9..23")
    candidates = [e for e in catalog if e.dimension <= dim]
    if not candidates:
        raise EmptyDimension(f"catalog has no entries at dimension <= {dim}")
    best_gain = max(Fraction(e.gain) for e in candidates)
    winners = [
        BestPick(e, dim - e.dimension)
        for e in candidates
        if Fraction(e.gain) == best_gain
    ]
    winners.sort(key=lambda w: (w.zk, w.entry.label))
    return winners
