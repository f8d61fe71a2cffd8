"""Exact truncated power series in u = q^(1/4).

All series here are expansions in the nome q = e^(pi*i*tau), stored in
the quarter-power variable u so that theta2 (whose exponents are
quarter-integers in q) and integer-power series share one
representation.  Coefficients are exact rationals; floats never enter a
series.  Numerical evaluation happens only at the boundary, in
:meth:`QSeries.eval_at_iy`, which refuses to answer when its truncation
tail bound is not below tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction


class TruncationInsufficient(Exception):
    """Raised when a series is too short to evaluate at the requested point."""


# Relative tolerance used by eval_at_iy: the tail bound must stay below
# REL_TOL * max(1, |partial sum|).
REL_TOL = 1e-12

# Coefficient-growth exponent assumed for theta-like series (as_theta=True):
# |c_e| <= C * (1+e)**THETA_GROWTH for the unstored tail.  Counting functions
# of the lattices handled here (dimension <= 24) grow like m**(n/2-1) <= m**11
# in the q-exponent m = e/4, so exponent 12 in e leaves slack.
THETA_GROWTH = 12


def _as_fraction(value):
    if isinstance(value, float):
        raise TypeError("float coefficients are not allowed in a QSeries")
    return Fraction(value)


class QSeries:
    """Truncated series sum c_e * u**e with exact rational c_e.

    trunc_order N means: stored coefficients are correct for every
    exponent e < N, and nothing is known from e = N on.  Operations
    combine truncation orders with min(), never extending precision.
    """

    __slots__ = ("coeffs", "trunc_order")

    def __init__(self, coeffs, trunc_order):
        if trunc_order < 0:
            raise ValueError("trunc_order must be non-negative")
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        clean = {}
        for e, c in items:
            if e != int(e):
                raise ValueError(f"exponent {e!r} is not an integer")
            e = int(e)
            if e < 0:
                raise ValueError("negative exponents are not supported")
            if e >= trunc_order:
                continue
            c = _as_fraction(c)
            if c != 0:
                clean[e] = c
        self.coeffs = clean
        self.trunc_order = int(trunc_order)

    @classmethod
    def zero(cls, trunc_order):
        return cls({}, trunc_order)

    @classmethod
    def one(cls, trunc_order):
        return cls({0: 1}, trunc_order)

    @classmethod
    def from_q_coeffs(cls, q_coeffs, trunc_order=None):
        """Series with integer q-powers: q_coeffs[m] becomes the u**(4m) term."""
        coeffs = {4 * m: c for m, c in enumerate(q_coeffs)}
        if trunc_order is None:
            trunc_order = 4 * len(q_coeffs)
        return cls(coeffs, trunc_order)

    # -- accessors ---------------------------------------------------------

    def u_coefficient(self, e):
        if e >= self.trunc_order:
            raise IndexError(f"exponent {e} at or beyond trunc_order {self.trunc_order}")
        return self.coeffs.get(e, Fraction(0))

    def q_coefficient(self, m):
        """Coefficient of q**m (exact; m may be a Fraction with denominator 4)."""
        e = 4 * Fraction(m)
        if e.denominator != 1:
            raise ValueError(f"q-exponent {m} is not a quarter-integer")
        return self.u_coefficient(int(e))

    def q_coefficients(self, count):
        """The first `count` integer-power q-coefficients as a list."""
        return [self.q_coefficient(m) for m in range(count)]

    # -- arithmetic --------------------------------------------------------

    def add(self, other):
        n = min(self.trunc_order, other.trunc_order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return QSeries(out, n)

    def neg(self):
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.trunc_order)

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, factor):
        factor = _as_fraction(factor)
        return QSeries({e: factor * c for e, c in self.coeffs.items()}, self.trunc_order)

    def mul(self, other):
        """Truncated Cauchy product; trunc_order = min of the inputs'."""
        n = min(self.trunc_order, other.trunc_order)
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        # integer-only operands multiply much faster outside Fraction
        all_int = all(c.denominator == 1 for c in a.values()) and all(
            c.denominator == 1 for c in b.values()
        )
        if all_int:
            a = {e: c.numerator for e, c in a.items()}
            b = {e: c.numerator for e, c in b.items()}
        out = {}
        for e1, c1 in a.items():
            if e1 >= n:
                continue
            for e2, c2 in b.items():
                e = e1 + e2
                if e < n:
                    out[e] = out.get(e, 0) + c1 * c2
        return QSeries(out, n)

    def pow(self, exponent):
        """Repeated-squaring power; exponent 0 gives the constant 1."""
        if exponent < 0 or exponent != int(exponent):
            raise ValueError("exponent must be a non-negative integer")
        exponent = int(exponent)
        result = QSeries.one(self.trunc_order)
        base = self
        while exponent:
            if exponent & 1:
                result = result.mul(base)
            exponent >>= 1
            if exponent:
                base = base.mul(base)
        return result

    __add__ = add
    __sub__ = sub
    __mul__ = mul
    __pow__ = pow
    __neg__ = neg

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc_order == other.trunc_order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc_order, tuple(sorted(self.coeffs.items()))))

    # -- evaluation and output ---------------------------------------------

    def eval_at_iy(self, y, as_theta=False):
        """Numerical value at tau = i*y, i.e. u = e^(-pi*y/4).

        The stored terms are summed in double precision and the unstored
        tail is bounded before anything is returned:

        * as_theta=False assumes tail coefficients are bounded by the
          largest stored one, giving the geometric bound C*u^N/(1-u);
        * as_theta=True allows polynomial growth |c_e| <= C*(1+e)**12,
          which covers the theta-like series of every lattice handled
          here, and sums that envelope explicitly.

        Raises TruncationInsufficient when the bound exceeds
        REL_TOL * max(1, |partial sum|).
        """
        if y <= 0:
            raise ValueError("y must be positive")
        u = math.exp(-math.pi * y / 4.0)
        partial = math.fsum(
            float(c) * u**e for e, c in sorted(self.coeffs.items(), reverse=True)
        )
        n = self.trunc_order
        cmax = max((abs(float(c)) for c in self.coeffs.values()), default=1.0)
        cmax = max(cmax, 1.0)
        if not as_theta:
            tail = cmax * u**n / (1.0 - u)
        else:
            cenv = max(
                (abs(float(c)) / (1.0 + e) ** THETA_GROWTH for e, c in self.coeffs.items()),
                default=1.0,
            )
            cenv = max(cenv, 1.0)
            tail = cenv * _polynomial_tail(u, n)
        if tail > REL_TOL * max(1.0, abs(partial)):
            raise TruncationInsufficient(
                f"tail bound {tail:.3g} at y={y} exceeds tolerance for order {n}"
            )
        return partial

    def dump(self):
        """Textual form, one `exponent/4 : numerator/denominator` line per term."""
        lines = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            lines.append(f"{e}/4 : {c.numerator}/{c.denominator}")
        return "\n".join(lines)

    def as_q_string(self, max_q_exp=None):
        """Human-readable q-expansion like `1 + 2q + 2q^4 + 2q^9`."""
        limit = self.trunc_order
        if max_q_exp is not None:
            limit = min(limit, 4 * max_q_exp + 1)
        parts = []
        for e in sorted(self.coeffs):
            if e >= limit:
                break
            c = self.coeffs[e]
            q_exp = Fraction(e, 4)
            if q_exp == 0:
                term = str(c)
            else:
                if q_exp == 1:
                    var = "q"
                elif q_exp.denominator == 1:
                    var = f"q^{q_exp}"
                else:
                    var = f"q^({q_exp})"
                if c == 1:
                    term = var
                elif c == -1:
                    term = f"-{var}"
                else:
                    term = f"{c}{var}"
            parts.append(term)
        if not parts:
            return "0"
        text = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                text += " - " + term[1:]
            else:
                text += " + " + term
        return text

    def __repr__(self):
        return f"QSeries(order={self.trunc_order}, {self.as_q_string(max_q_exp=3)} + ...)"


def _polynomial_tail(u, start):
    """Upper bound for sum_{e>=start} (1+e)**THETA_GROWTH * u**e, 0 < u < 1."""
    total = 0.0
    e = start
    term = (1.0 + e) ** THETA_GROWTH * u**e
    while term > 0.0:
        ratio = ((e + 2.0) / (e + 1.0)) ** THETA_GROWTH * u
        if ratio < 0.9:
            # dominate the remainder by a geometric series
            return total + term / (1.0 - ratio)
        total += term
        e += 1
        term = (1.0 + e) ** THETA_GROWTH * u**e
        if e - start > 2_000_000:
            return math.inf
    return total


def theta2(trunc_order):
    """2*sum q^((m+1/2)^2): exponents (2m+1)^2 in u-units, coefficient 2."""
    coeffs = {}
    m = 0
    while (2 * m + 1) ** 2 < trunc_order:
        coeffs[(2 * m + 1) ** 2] = 2
        m += 1
    return QSeries(coeffs, trunc_order)


def theta3(trunc_order):
    """1 + 2q + 2q^4 + 2q^9 + ...: exponents 4m^2 in u-units."""
    coeffs = {0: 1}
    m = 1
    while 4 * m * m < trunc_order:
        coeffs[4 * m * m] = 2
        m += 1
    return QSeries(coeffs, trunc_order)


def theta4(trunc_order):
    """1 - 2q + 2q^4 - 2q^9 + ...: alternating signs on square q-powers."""
    coeffs = {0: 1}
    m = 1
    while 4 * m * m < trunc_order:
        coeffs[4 * m * m] = 2 * (-1) ** m
        m += 1
    return QSeries(coeffs, trunc_order)


def discriminant_delta8(trunc_order):
    """Delta_8 = (1/16) * theta2^4 * theta4^4 = q - 8q^2 + 28q^3 - ..."""
    if trunc_order < 4:
        raise ValueError("trunc_order must be at least 4 to hold the leading q term")
    t2 = theta2(trunc_order)
    t4 = theta4(trunc_order)
    return t2.pow(4).mul(t4.pow(4)).scale(Fraction(1, 16))


def delta8_product_form(trunc_order):
    """Delta_8 via q * prod (1-q^(2m-1))^8 (1-q^(4m))^8, for cross-checking."""
    if trunc_order < 4:
        raise ValueError("trunc_order must be at least 4")
    result = QSeries({4: 1}, trunc_order)
    m = 1
    while True:
        changed = False
        for q_exp in (2 * m - 1, 4 * m):
            if 4 * q_exp < trunc_order:
                factor = QSeries({0: 1, 4 * q_exp: -1}, trunc_order)
                result = result.mul(factor.pow(8))
                changed = True
        if not changed:
            break
        m += 1
    return result


def mul(a, b):
    return a.mul(b)


def power(a, exponent):
    return a.pow(exponent)


def eval_at_iy(a, y, as_theta=False):
    return a.eval_at_iy(y, as_theta=as_theta)


# cache for the standard series and their powers, keyed by (name, power, order)
_POWER_CACHE = {}
_BASE_BUILDERS = {
    "theta2": theta2,
    "theta3": theta3,
    "theta4": theta4,
    "delta8": discriminant_delta8,
}


def cached_power(name, exponent, trunc_order):
    """Memoized `base**exponent` for base in theta2/theta3/theta4/delta8.

    Powers are built incrementally (base * previous power) so a session
    that needs theta3^1 .. theta3^23 pays one series product per step.
    """
    if name not in _BASE_BUILDERS:
        raise KeyError(f"unknown series name {name!r}")
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    key = (name, exponent, trunc_order)
    cached = _POWER_CACHE.get(key)
    if cached is not None:
        return cached
    if exponent == 0:
        result = QSeries.one(trunc_order)
    elif exponent == 1:
        result = _BASE_BUILDERS[name](trunc_order)
    else:
        result = cached_power(name, exponent - 1, trunc_order).mul(
            cached_power(name, 1, trunc_order)
        )
    _POWER_CACHE[key] = result
    return result
