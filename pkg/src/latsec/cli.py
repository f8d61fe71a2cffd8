"""Command-line front-end: expansions, gains, classification, verification,
plot data, code constructions, and wiretap simulation.

Machine-readable results go to stdout, diagnostics to stderr.  Exit
status: 0 on success, 1 on runtime or verification failure, 2 on usage
errors.  Randomized subcommands require --seed and are bit-reproducible:
the generator is a counter-based Philox stream consumed in a fixed
order.
"""

import argparse
import math
import sys
import warnings

import numpy as np

from . import qseries
from .catalog import (
    InvariantViolation,
    ParseError,
    default_codes_path,
    default_tables_path,
    load_catalog,
)
from .codes import (
    construction_a,
    is_doubly_even,
    is_self_dual,
    kissing_from_code,
    load_codes,
    min_distance,
    weight_distribution,
)
from .codes import InvariantViolation as CodesInvariantViolation
from .codes import ParseError as CodesParseError
from .codes import TooLarge
from .lattice import (
    NoRecipe,
    NotIntegral,
    det_lattice,
    is_even,
    is_integral,
    is_unimodular,
    minimal_norm,
)
from .secrecy import (
    HeckeDecomposition,
    classify_best,
    gain_closed_form,
    gain_from_decomposition,
    hecke_decompose,
    secrecy_function,
)
from .wiretap_sim import (
    ChannelConfig,
    NotSelfDual,
    SearchTooLarge,
    TailTooLarge,
    build_nested_from_code,
    eve_decision_mc,
    theta_approx_pce,
)

__all__ = ["main", "build_parser"]


def _integer_power_label(label):
    # "Z" -> 1, "Z^12" -> 12, anything else -> None
    if label == "Z":
        return 1
    if label.startswith("Z^"):
        try:
            k = int(label[2:])
        except ValueError:
            return None
        return k if k >= 1 else None
    return None


def _decomposition_for_label(label, catalog_path):
    """Theta decomposition of Z^k or of a catalogued unimodular lattice.

    Catalogue rows determine the full decomposition from stored facts:
    an extremal row forces (1, 0, ...); a non-extremal row of the
    16..23 range forces (1, 0, kissing) as the coefficient prefix.
    """
    k = _integer_power_label(label)
    if k is not None:
        return HeckeDecomposition(k, [1] + [0] * (k // 8)), k
    for entry in load_catalog(catalog_path):
        if entry.label != label:
            continue
        n = entry.dimension
        if entry.extremal:
            prefix = [1] + [0] * (n // 8)
        else:
            prefix = [1, 0, entry.kissing]
        return hecke_decompose(n, prefix), n
    raise NoRecipe(f"no theta decomposition known for label {label!r}")


def cmd_theta(args):
    dec, _ = _decomposition_for_label(args.lattice, args.catalog)
    series = dec.reconstruct(args.order)
    print(series.as_q_string(args.order))
    return 0


def cmd_gain(args):
    if args.kissing is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            g = gain_closed_form(args.dim, args.kissing)
    else:
        coeffs = [int(v) for v in args.theta_coeffs.split(",")]
        g = gain_from_decomposition(hecke_decompose(args.dim, coeffs))
    print(f"{g.numerator}/{g.denominator}")
    return 0


def cmd_classify(args):
    entries = load_catalog(args.catalog)
    for pick in classify_best(entries, args.dim):
        g = pick.entry.gain
        print(f"{pick.label} {g.numerator}/{g.denominator}")
    return 0


def cmd_verify_tables(args):
    entries = load_catalog(args.catalog)
    codes = load_codes(args.codes) if args.codes else None
    from .catalog import verify_tables

    lines, failures = verify_tables(entries, codes=codes)
    for line in lines:
        print(line)
    return 1 if failures else 0


def _symmetric_db_grid(range_db, points):
    half = [(2.0 * (i / (points - 1)) - 1.0) * range_db for i in range(points // 2)]
    mirror = [-v for v in reversed(half)]
    if points % 2:
        return half + [0.0] + mirror
    return half + mirror


def cmd_plot_data(args):
    if args.points < 2:
        raise ValueError("need at least two grid points")
    if args.range_db <= 0:
        raise ValueError("the dB range must be positive")
    dec, n = _decomposition_for_label(args.lattice, args.catalog)
    print("y_db,xi")
    for db in _symmetric_db_grid(args.range_db, args.points):
        y = 10.0 ** (db / 10.0)
        xi = secrecy_function(dec, n, 1, y)
        print(f"{db:.12g},{xi:.12g}")
    return 0


def _find_code(name, codes_path):
    for entry in load_codes(codes_path):
        if entry.name == name:
            return entry
    raise CodesParseError(f"code {name!r} is not in the catalogue")


def cmd_simulate(args):
    entry = _find_code(args.code, args.codes)
    pair = build_nested_from_code(entry.code, args.scheme)
    sigmas = [float(v) for v in args.sigma_e.split(",")]
    if any(s <= 0 for s in sigmas):
        raise ValueError("sigma_e values must be positive")
    rng = np.random.Generator(np.random.Philox(args.seed))
    print("scheme,n,sigma_e,trials,seed,p_hat,ci95,theta_approx")
    for sigma in sigmas:
        cfg = ChannelConfig(sigma / 2.0, sigma)
        res = eve_decision_mc(
            pair, cfg, args.trials, rng, randomizer_box=args.box
        )
        approx = theta_approx_pce(pair, cfg, args.norm_bound)
        print(
            f"{args.scheme},{pair.n},{sigma:.12g},{res.trials},{args.seed},"
            f"{res.p_hat:.12g},{res.ci95_halfwidth:.12g},{approx:.12g}"
        )
    return 0


def cmd_construct_a(args):
    entry = _find_code(args.code, args.codes)
    code = entry.code
    lat = construction_a(code)
    norm, kissing = minimal_norm(lat)
    print(f"code: {entry.name}")
    print(f"parameters: [{code.n},{code.k},{min_distance(code)}]")
    print(f"weights: {list(weight_distribution(code))}")
    print(f"self_dual: {is_self_dual(code)}")
    print(f"doubly_even: {is_doubly_even(code)}")
    print(f"lattice: {lat.label}")
    print(f"dimension: {lat.dimension}")
    print(f"determinant: {det_lattice(lat)}")
    print(f"integral: {is_integral(lat)}")
    print(f"unimodular: {is_unimodular(lat)}")
    print(f"even: {is_even(lat)}")
    print(f"min_norm: {norm}")
    print(f"kissing: {kissing}")
    print(f"kissing_from_code: {kissing_from_code(code)}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="latsec",
        description=(
            "Exact theta series, secrecy gains, and wiretap coset-coding "
            "simulation for unimodular lattices"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("theta", help="q-expansion of a lattice theta series")
    p.add_argument("--lattice", required=True, help="Z, Z^k, or a catalogue label")
    p.add_argument("--order", type=int, default=10, help="highest q exponent shown")
    p.add_argument("--catalog", default=str(default_tables_path()))
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("gain", help="exact secrecy gain as a rational p/q")
    p.add_argument("--dim", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kissing", type=int, help="closed-form route (16..23)")
    group.add_argument(
        "--theta-coeffs", help="comma-separated theta prefix, e.g. 1,0,224"
    )
    p.set_defaults(func=cmd_gain)

    p = sub.add_parser("classify", help="best secrecy gain at a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--catalog", default=str(default_tables_path()))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-tables", help="recompute and check the catalogue")
    p.add_argument("--catalog", default=str(default_tables_path()))
    p.add_argument("--codes", default=str(default_codes_path()))
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("plot-data", help="secrecy-function samples as CSV")
    p.add_argument("--lattice", required=True)
    p.add_argument("--range-db", type=float, default=6.0)
    p.add_argument("--points", type=int, default=121)
    p.add_argument("--catalog", default=str(default_tables_path()))
    p.set_defaults(func=cmd_plot_data)

    p = sub.add_parser("simulate", help="eavesdropper correct-decision Monte Carlo")
    p.add_argument("--code", required=True, help="catalogue code name, e.g. [8,4,4]")
    p.add_argument("--scheme", choices=("zn", "2lambda"), required=True)
    p.add_argument("--sigma-e", required=True, help="comma-separated noise levels")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--box", type=int, default=2, help="coset randomizer range")
    p.add_argument(
        "--norm-bound",
        type=int,
        default=40,
        help="theta-sum truncation; raise it if the tail check fails",
    )
    p.add_argument("--codes", default=str(default_codes_path()))
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("construct-a", help="mod-2 construction facts for a code")
    p.add_argument("--code", required=True)
    p.add_argument("--codes", default=str(default_codes_path()))
    p.set_defaults(func=cmd_construct_a)

    return parser


_EXPECTED = (
    ParseError,
    InvariantViolation,
    CodesParseError,
    CodesInvariantViolation,
    TooLarge,
    NoRecipe,
    NotIntegral,
    NotSelfDual,
    TailTooLarge,
    SearchTooLarge,
    ValueError,
    OSError,
)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _EXPECTED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
