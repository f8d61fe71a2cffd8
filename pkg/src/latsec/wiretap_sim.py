"""Monte-Carlo simulation of coset coding on the Gaussian wiretap channel.

The transmitter holds a nested pair of lattices: a fine lattice used for
reliability and a coarse sublattice used for confusion.  A message picks
a coset of the coarse lattice inside the fine one, the transmitted point
is a random member of that coset, and the eavesdropper sees the point
through additive white Gaussian noise of standard deviation sigma_e.
Her best strategy is nearest-lattice-point decoding in the fine lattice
followed by reduction to a coset label; this module estimates her
probability of guessing the coset right, and evaluates the standard
theta-series approximation of that probability:

    sum_{t in coarse} exp(-|t|^2 / 2 sigma_e^2)
        * sqrt(det fine) / (sigma_e sqrt(2 pi))^n
        * (1 - U(V_fine) / (2 sigma_e^2 sqrt(det fine)))

where U(V) is the unnormalized second moment of the fine Voronoi cell.
The sum over the coarse lattice is its theta series evaluated at
q = exp(-1/(2 sigma_e^2)), i.e. at tau = i/(2 pi sigma_e^2).

Everything is reproducible bit-exactly from a seeded counter-based
generator: pass numpy.random.Generator(numpy.random.Philox(seed)).
Random draws happen in fixed blocks (messages, then coset offsets, then
noise), so results depend only on (seed, trials).
"""

import math
from fractions import Fraction

import numpy as np

from ._kernels import SearchTooLarge
from ._kernels import nearest_point as _kernel_cvp
from ._kernels import nearest_point_batch as _kernel_cvp_batch
from .codes import construction_a, is_self_dual
from .lattice import (
    MAX_SEARCH_NODES,
    DimensionMismatch,
    NotIntegral,
    _integer_form,
    _solve_matrix,
    contains_vector,
    coords_in_basis,
    det_lattice,
    enumerate_vectors_up_to_norm,
    gram,
    integer_lattice,
    lll_reduce,
    theta_coeffs_enum,
)
from .lattice import scale as scale_lattice

__all__ = [
    "MAX_EXACT_DIMENSION",
    "BadIndex",
    "NotSelfDual",
    "TailTooLarge",
    "NestedPair",
    "ChannelConfig",
    "SimResult",
    "coset_encode",
    "awgn",
    "nearest_point",
    "eve_decision_mc",
    "second_moment_mc",
    "theta_sum",
    "theta_approx_pce",
    "build_nested_from_code",
    "SCHEMES",
]

# exact nearest-point search is exponential in the rank; everything the
# classification needs fits under this guard
MAX_EXACT_DIMENSION = 16

SCHEMES = ("zn", "2lambda")


class BadIndex(Exception):
    """Message index outside 0..num_cosets-1."""


class NotSelfDual(Exception):
    """The coset schemes are defined for self-dual codes only."""


class TailTooLarge(Exception):
    """Truncated theta sum cannot be trusted at the requested accuracy."""


def _float_rows(L):
    return np.array([[float(v) for v in row] for row in L.rows], dtype=float)


def _geometric_factor(L):
    return math.sqrt(float(L.scale))


def _isqrt_fraction(x):
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


class NestedPair:
    """A coarse sublattice inside a fine lattice, with coset representatives.

    fine and coarse must share the ambient frame and scale factor; reps
    are frame-coordinate vectors, one per coset, pairwise distinct
    modulo the coarse lattice.  Construction validates all of this
    exactly, which costs one rational solve per representative.
    """

    __slots__ = ("fine", "coarse", "coset_reps", "_labels", "_label_index")

    def __init__(self, fine, coarse, coset_reps):
        if fine.ambient != coarse.ambient or fine.scale != coarse.scale:
            raise DimensionMismatch("fine and coarse must share frame and scale")
        if fine.dimension != coarse.dimension:
            raise DimensionMismatch("fine and coarse must have equal rank")
        for row in coarse.rows:
            if not contains_vector(fine, row):
                raise ValueError("coarse basis vector outside the fine lattice")

        ratio = det_lattice(coarse) / det_lattice(fine)
        index = _isqrt_fraction(ratio)
        if index is None or index.denominator != 1 or index < 1:
            raise ValueError(f"determinant ratio {ratio} is not a square index")
        index = int(index)

        reps = tuple(tuple(Fraction(v) for v in rep) for rep in coset_reps)
        if len(reps) != index:
            raise ValueError(f"need {index} coset representatives, got {len(reps)}")
        labels = []
        seen = {}
        for pos, rep in enumerate(reps):
            if not contains_vector(fine, rep):
                raise ValueError(f"representative {pos} is not a fine-lattice point")
            u = coords_in_basis(coarse, rep)
            label = tuple(c - math.floor(c) for c in u)
            if label in seen:
                raise ValueError(
                    f"representatives {seen[label]} and {pos} share a coset"
                )
            seen[label] = pos
            labels.append(label)

        self.fine = fine
        self.coarse = coarse
        self.coset_reps = reps
        self._labels = tuple(labels)
        self._label_index = seen

    @property
    def num_cosets(self):
        return len(self.coset_reps)

    @property
    def n(self):
        return self.fine.ambient

    @property
    def rank(self):
        return self.fine.dimension

    def coset_index_of(self, frame_vec):
        """Coset number of a fine-lattice frame vector; ValueError if outside."""
        u = coords_in_basis(self.coarse, frame_vec)
        if u is None:
            raise ValueError("vector is outside the lattice span")
        label = tuple(c - math.floor(c) for c in u)
        try:
            return self._label_index[label]
        except KeyError:
            raise ValueError("vector is not in the fine lattice") from None

    def geometric(self, frame_vec):
        """Frame coordinates -> real vector (applies the sqrt-scale factor)."""
        return _geometric_factor(self.fine) * np.array(
            [float(v) for v in frame_vec], dtype=float
        )


class ChannelConfig:
    """Per-component noise levels; the eavesdropper must be noisier."""

    __slots__ = ("sigma_b", "sigma_e")

    def __init__(self, sigma_b, sigma_e):
        sigma_b = float(sigma_b)
        sigma_e = float(sigma_e)
        if not 0 < sigma_b < sigma_e:
            raise ValueError("need 0 < sigma_b < sigma_e")
        self.sigma_b = sigma_b
        self.sigma_e = sigma_e


class SimResult:
    __slots__ = ("trials", "correct", "p_hat", "ci95_halfwidth")

    def __init__(self, trials, correct, p_hat, ci95_halfwidth):
        if not 0 <= correct <= trials:
            raise ValueError("correct count outside 0..trials")
        if not 0.0 <= p_hat <= 1.0:
            raise ValueError("p_hat outside [0, 1]")
        self.trials = trials
        self.correct = correct
        self.p_hat = p_hat
        self.ci95_halfwidth = ci95_halfwidth

    def __repr__(self):
        return (
            f"SimResult(trials={self.trials}, correct={self.correct}, "
            f"p_hat={self.p_hat:.6g}, ci95_halfwidth={self.ci95_halfwidth:.3g})"
        )


def coset_encode(pair, message_index, randomizer_box, rng):
    """Random member of the message's coset, as a real (geometric) vector.

    The randomizer draws integer coarse-basis coordinates uniformly from
    [-randomizer_box, randomizer_box]^rank; box 0 returns the
    representative itself.
    """
    if not isinstance(message_index, (int, np.integer)):
        raise BadIndex(f"message index must be an integer, got {message_index!r}")
    if not 0 <= message_index < pair.num_cosets:
        raise BadIndex(
            f"message index {message_index} outside 0..{pair.num_cosets - 1}"
        )
    box = int(randomizer_box)
    if box < 0:
        raise ValueError("randomizer box must be non-negative")
    t = rng.integers(-box, box + 1, size=pair.coarse.dimension)
    rep = np.array([float(v) for v in pair.coset_reps[message_index]], dtype=float)
    frame = rep + t @ _float_rows(pair.coarse)
    return _geometric_factor(pair.fine) * frame


def awgn(x, sigma, rng):
    """x plus independent N(0, sigma^2) noise per component."""
    sigma = float(sigma)
    if sigma < 0:
        raise ValueError("noise level must be non-negative")
    x = np.asarray(x, dtype=float)
    return x + rng.normal(0.0, sigma, size=x.shape)


def _nearest_coords(L, y, max_nodes=MAX_SEARCH_NODES):
    # y geometric -> (reduced lattice, exact integer coords in its basis);
    # reduction keeps the rounding start close to the target
    y = np.asarray(y, dtype=float)
    if y.shape != (L.ambient,):
        raise DimensionMismatch(
            f"point has {y.shape} components, lattice frame has {L.ambient}"
        )
    if L.dimension > MAX_EXACT_DIMENSION:
        raise SearchTooLarge(
            f"exact nearest-point search is guarded at rank {MAX_EXACT_DIMENSION}; "
            f"lattice has rank {L.dimension}"
        )
    red = lll_reduce(L)
    solve = np.array(
        [[float(v) for v in row] for row in _solve_matrix(red)], dtype=float
    )
    target = (y / _geometric_factor(red)) @ solve
    _, g_int = _integer_form(red)
    return red, _kernel_cvp(g_int, [float(v) for v in target], max_nodes=max_nodes)


def nearest_point(L, y, search_radius_hint=None, max_nodes=MAX_SEARCH_NODES):
    """Closest lattice point to y, as a real vector.

    Exact search: a rounding pass in a reduced basis yields a certified
    radius which bounded enumeration then exhausts, so the returned
    point is the true minimizer (ties broken by lexicographic reduced
    coordinates).  When search_radius_hint is given the answer must lie
    within that distance of y; SearchTooLarge otherwise.  Rank is
    guarded at MAX_EXACT_DIMENSION.
    """
    red, coords = _nearest_coords(L, y, max_nodes=max_nodes)
    point = _geometric_factor(red) * (np.array(coords, dtype=float) @ _float_rows(red))
    if search_radius_hint is not None:
        hint = float(search_radius_hint)
        if hint <= 0:
            raise ValueError("search radius hint must be positive")
        dist = float(np.linalg.norm(np.asarray(y, dtype=float) - point))
        if dist > hint * (1.0 + 1e-12):
            raise SearchTooLarge(
                f"nearest point is {dist:.6g} away, beyond the hinted {hint:.6g}"
            )
    return point


def _label_arithmetic(pair, fine_rows):
    # integerized coset labelling: fine coords u -> (u @ T) mod D
    t_frac = [coords_in_basis(pair.coarse, row) for row in fine_rows]
    denom = 1
    for row in t_frac:
        for c in row:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    t_num = np.array(
        [[int(c * denom) for c in row] for row in t_frac], dtype=np.int64
    )
    label_to_msg = {}
    for pos, label in enumerate(pair._labels):
        key = tuple(int(c * denom) % denom for c in label)
        label_to_msg[key] = pos
    return t_num, denom, label_to_msg


def eve_decision_mc(
    pair, cfg, trials, rng, randomizer_box=2, max_nodes=MAX_SEARCH_NODES
):
    """Estimate the eavesdropper's correct-coset probability by simulation.

    Each trial encodes a uniform message, adds noise at cfg.sigma_e,
    decodes to the nearest fine-lattice point and reduces it to a coset
    label.  ci95_halfwidth is the normal-approximation 95% halfwidth
    1.96 sqrt(p(1-p)/trials).
    """
    trials = int(trials)
    if trials < 1:
        raise ValueError("need at least one trial")
    if pair.rank > MAX_EXACT_DIMENSION:
        raise SearchTooLarge(
            f"decoding guard: rank {pair.rank} exceeds {MAX_EXACT_DIMENSION}"
        )
    box = int(randomizer_box)
    if box < 0:
        raise ValueError("randomizer box must be non-negative")

    sqrt_s = _geometric_factor(pair.fine)
    reps_f = np.array(
        [[float(v) for v in rep] for rep in pair.coset_reps], dtype=float
    )
    coarse_f = _float_rows(pair.coarse)
    fine_red = lll_reduce(pair.fine)
    solve_geo = (
        np.array([[float(v) for v in row] for row in _solve_matrix(fine_red)])
        / sqrt_s
    )
    _, g_int = _integer_form(fine_red)
    t_num, denom, label_to_msg = _label_arithmetic(pair, fine_red.rows)

    messages = rng.integers(0, pair.num_cosets, size=trials)
    offsets = rng.integers(-box, box + 1, size=(trials, pair.coarse.dimension))
    sent = sqrt_s * (reps_f[messages] + offsets @ coarse_f)
    received = sent + rng.normal(0.0, cfg.sigma_e, size=sent.shape)

    targets = received @ solve_geo
    decoded = _kernel_cvp_batch(
        g_int, [[float(v) for v in row] for row in targets], max_nodes=max_nodes
    )
    labels = (np.array(decoded, dtype=np.int64) @ t_num) % denom
    correct = 0
    for row, msg in zip(labels, messages):
        if label_to_msg[tuple(int(v) for v in row)] == msg:
            correct += 1

    p_hat = correct / trials
    ci95 = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return SimResult(trials, correct, p_hat, ci95)


def second_moment_mc(L, samples, rng, max_nodes=MAX_SEARCH_NODES):
    """Unnormalized second moment of the Voronoi cell, by Monte Carlo.

    Draws points uniformly in the fundamental parallelepiped, reduces
    each into the Voronoi cell by subtracting the nearest lattice point,
    and averages the squared length; the cell-volume factor sqrt(det L)
    makes the result the integral, not the mean.  Returns (estimate,
    standard_error).
    """
    samples = int(samples)
    if samples < 2:
        raise ValueError("need at least two samples for a standard error")
    if L.dimension > MAX_EXACT_DIMENSION:
        raise SearchTooLarge(
            f"reduction guard: rank {L.dimension} exceeds {MAX_EXACT_DIMENSION}"
        )
    L = lll_reduce(L)
    rows_g = _geometric_factor(L) * _float_rows(L)
    solve_geo = (
        np.array([[float(v) for v in row] for row in _solve_matrix(L)])
        / _geometric_factor(L)
    )
    _, g_int = _integer_form(L)

    points = rng.random(size=(samples, L.dimension)) @ rows_g
    targets = points @ solve_geo
    decoded = _kernel_cvp_batch(
        g_int, [[float(v) for v in row] for row in targets], max_nodes=max_nodes
    )
    residual = points - np.array(decoded, dtype=float) @ rows_g
    sq = np.sum(residual * residual, axis=1)
    volume = math.sqrt(float(det_lattice(L)))
    estimate = float(np.mean(sq)) * volume
    stderr = float(np.std(sq, ddof=1)) / math.sqrt(samples) * volume
    return estimate, stderr


def _sum_profile(counts, sigma):
    # shared summation loop so different counting paths add the exact
    # same floats in the same order
    inv = 1.0 / (2.0 * sigma * sigma)
    total = 0.0
    for norm in sorted(counts):
        total += counts[norm] * math.exp(-float(norm) * inv)
    return total


def theta_sum(L, sigma, norm_bound, via="vectors", max_nodes=MAX_SEARCH_NODES):
    """Truncated theta sum sum_{|t|^2 <= bound} exp(-|t|^2 / 2 sigma^2).

    via="vectors" enumerates lattice vectors one by one; via="counts"
    turns integer theta-series coefficients into the same profile.  Both
    paths feed one summation loop, so on an integral lattice with an
    integer bound they return bit-identical floats.
    """
    sigma = float(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if via == "vectors":
        counts = {Fraction(0): 1}
        for _, norm in enumerate_vectors_up_to_norm(L, norm_bound, max_nodes):
            counts[norm] = counts.get(norm, 0) + 1
    elif via == "counts":
        coeffs = theta_coeffs_enum(L, math.floor(norm_bound), max_nodes)
        counts = {m: c for m, c in enumerate(coeffs) if c}
    else:
        raise ValueError(f"via must be 'vectors' or 'counts', got {via!r}")
    return _sum_profile(counts, sigma)


def _theta_bounds(L, sigma, norm_bound):
    # tail: sum over |t|^2 > B of exp(-|t|^2/2s^2) <= exp(-B/4s^2) * Z(1/4s^2)
    # with Z bounded through the orthogonalized (LDL) basis lengths.  Z also
    # dominates the whole sum at 1/2s^2 (each shifted 1-D Gaussian sum is
    # largest at zero shift), giving a free upper bound on the partial sum.
    g = [[float(v) for v in row] for row in gram(L)]
    n = len(g)
    low = [[0.0] * n for _ in range(n)]
    diag = [0.0] * n
    for i in range(n):
        for j in range(i):
            s = g[i][j] - sum(low[i][k] * low[j][k] * diag[k] for k in range(j))
            low[i][j] = s / diag[j]
        d = g[i][i] - sum(low[i][k] ** 2 * diag[k] for k in range(i))
        if d <= 0:
            raise ValueError("Gram matrix is not positive definite")
        diag[i] = d
        low[i][i] = 1.0

    quarter = 1.0 / (4.0 * sigma * sigma)
    product = 1.0
    for d in diag:
        a = d * quarter
        m, acc, term = 1, 1.0, math.exp(-a)
        while term > 1e-300:
            acc += 2.0 * term
            m += 1
            term = math.exp(-a * m * m)
        product *= acc
    return math.exp(-float(norm_bound) * quarter) * product, product


def _theta_tail_bound(L, sigma, norm_bound):
    return _theta_bounds(L, sigma, norm_bound)[0]


def theta_approx_pce(
    pair,
    cfg,
    norm_bound,
    with_second_moment=False,
    rng=None,
    samples=20000,
    max_nodes=MAX_SEARCH_NODES,
):
    """Theta-series approximation of the eavesdropper's success probability.

    Truncates the coarse-lattice theta sum at norm_bound and certifies
    the discarded tail below 1e-12 of the partial sum (TailTooLarge
    otherwise).  with_second_moment switches on the Voronoi-cell
    correction factor, estimated by second_moment_mc on the fine
    lattice; without it the factor is 1.
    """
    sigma = cfg.sigma_e
    tail, whole = _theta_bounds(pair.coarse, sigma, norm_bound)
    if tail > 1e-12 * whole:
        # the partial sum can only be smaller than the product bound, so
        # reject before paying for the enumeration
        raise TailTooLarge(
            f"tail bound {tail:.3g} exceeds 1e-12 of the reachable sum "
            f"(at most {whole:.6g}); raise norm_bound"
        )
    try:
        partial = theta_sum(
            pair.coarse, sigma, norm_bound, via="counts", max_nodes=max_nodes
        )
    except NotIntegral:
        partial = theta_sum(pair.coarse, sigma, norm_bound, max_nodes=max_nodes)
    if tail > 1e-12 * partial:
        raise TailTooLarge(
            f"tail bound {tail:.3g} exceeds 1e-12 of the partial sum "
            f"{partial:.6g}; raise norm_bound"
        )

    det_fine = math.sqrt(float(det_lattice(pair.fine)))
    n = pair.rank
    value = partial * det_fine / (sigma * math.sqrt(2.0 * math.pi)) ** n
    if with_second_moment:
        if rng is None:
            rng = np.random.Generator(np.random.Philox(0))
        second_moment, _ = second_moment_mc(
            pair.fine, samples, rng, max_nodes=max_nodes
        )
        value *= 1.0 - second_moment / (2.0 * sigma * sigma * det_fine)
    return value


def _codeword_bits(word, n):
    return [(word >> j) & 1 for j in range(n)]


def build_nested_from_code(C, scheme):
    """Nested pair for a self-dual code under one of two coset schemes.

    "zn": fine is the mod-2 construction lattice of C, coarse is
    sqrt(2) Z^n, and the 2^k cosets are labelled by the codewords
    (1/sqrt 2) c.  "2lambda": coarse is twice the fine lattice, giving
    2^n cosets labelled (1/sqrt 2) c + sqrt(2) d over codewords c and
    words d of a fixed complement of C (the span of the non-pivot unit
    vectors of C's reduced generator).  The 2lambda scheme enumerates
    all 2^n representatives, so it is only practical for short codes.
    """
    if not is_self_dual(C):
        raise NotSelfDual(f"{C.name or 'code'} is not self-dual")
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")

    fine = construction_a(C)
    words = sorted(C.codewords())
    # the scale normalizer stores these lattices as sqrt(2) * frame, so
    # the geometric point (1/sqrt 2) c has frame coordinates c/2

    if scheme == "zn":
        coarse = scale_lattice(
            integer_lattice(C.n, label=f"sqrt2*Z^{C.n}"), 1, sqrt2=True
        )
        reps = [
            tuple(Fraction(b, 2) for b in _codeword_bits(w, C.n)) for w in words
        ]
        return NestedPair(fine, coarse, reps)

    coarse = scale_lattice(fine, 2).with_label(f"2*{fine.label}")
    complement = [0]
    for j in range(C.n):
        if j not in C.pivots:
            complement += [w | (1 << j) for w in complement]
    reps = []
    for c in words:
        c_bits = _codeword_bits(c, C.n)
        for d in sorted(complement):
            d_bits = _codeword_bits(d, C.n)
            reps.append(
                tuple(
                    Fraction(cb, 2) + db for cb, db in zip(c_bits, d_bits)
                )
            )
    return NestedPair(fine, coarse, reps)
