"""Catalog of unimodular lattices of dimension up to 23.

The shipped data file is a JSON array of rows ``{dim, label, kissing,
gain, extremal, recipe?}``.  Extremal rows (minimal norm floor(n/8)+1)
carry gains that the theta-series decomposition forces from the prefix
(1, 0[, 0]); non-extremal rows are identified by root system and
kissing number, and their gains follow the dimension-16..23 closed
form.  Both facts are recomputed on load, so a corrupted file cannot
deliver a wrong gain quietly.

A recipe, when present, names root-lattice components and glue vectors
that build the actual lattice; rows without one support only the gain
and classification queries (NoRecipe otherwise).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import reduce
from pathlib import Path

from .codes import is_self_dual, min_distance, weight_distribution
from .lattice import (
    GlueRecipe,
    NoRecipe,
    build_glue,
    direct_sum,
    is_unimodular,
    kissing_number,
    root_lattice,
)
from .secrecy import (
    gain_closed_form,
    gain_from_decomposition,
    hecke_decompose,
)

__all__ = [
    "CatalogEntry",
    "ParseError",
    "InvariantViolation",
    "load_catalog",
    "build_entry",
    "verify_tables",
    "default_tables_path",
    "default_codes_path",
]

_DATA_DIR = Path(__file__).resolve().parent / "data"


class ParseError(Exception):
    """The data file is missing, malformed, or has fields of wrong shape."""


class InvariantViolation(Exception):
    """A row parses but contradicts what can be recomputed from it."""


def default_tables_path():
    return _DATA_DIR / "tables.json"


def default_codes_path():
    return _DATA_DIR / "codes.json"


class CatalogEntry:
    """One catalog row; gain is an exact Fraction."""

    __slots__ = ("dimension", "label", "kissing", "gain", "extremal", "recipe")

    def __init__(self, dimension, label, kissing, gain, extremal, recipe=None):
        if not isinstance(dimension, int) or not 1 <= dimension <= 23:
            raise InvariantViolation(f"{label}: dimension {dimension} out of range")
        if not isinstance(kissing, int) or kissing < 0:
            raise InvariantViolation(f"{label}: kissing {kissing} invalid")
        gain = Fraction(gain)
        if gain <= 0:
            raise InvariantViolation(f"{label}: gain {gain} must be positive")
        self.dimension = dimension
        self.label = label
        self.kissing = kissing
        self.gain = gain
        self.extremal = bool(extremal)
        self.recipe = recipe

    def __repr__(self):
        tag = "extremal" if self.extremal else "non-extremal"
        return (f"CatalogEntry({self.label}, dim={self.dimension}, "
                f"kissing={self.kissing}, gain={self.gain}, {tag})")


def _forced_extremal_facts(dim):
    """(gain, kissing) forced by an extremal minimum at this dimension.

    An extremal unimodular lattice has no vectors of norm < floor(n/8)+1,
    which pins the first floor(n/8)+1 theta coefficients to (1, 0, ...)
    and with them the whole decomposition.
    """
    prefix = [1] + [0] * (dim // 8)
    dec = hecke_decompose(dim, prefix)
    min_norm = dim // 8 + 1
    series = dec.reconstruct(min_norm).q_coefficients(min_norm + 1)
    return gain_from_decomposition(dec), int(series[min_norm])


def _parse_recipe(label, raw):
    if not isinstance(raw, dict):
        raise ParseError(f"{label}: recipe must be an object")
    try:
        base = raw["base"]
        glue = raw["glue"]
    except KeyError as exc:
        raise ParseError(f"{label}: recipe missing field {exc}") from exc
    if not isinstance(base, list) or not all(isinstance(b, str) for b in base):
        raise ParseError(f"{label}: recipe base must be a list of names")
    if not isinstance(glue, list) or not glue:
        raise ParseError(f"{label}: recipe glue must be a non-empty list")
    rows = []
    for row in glue:
        if not isinstance(row, list):
            raise ParseError(f"{label}: glue rows must be lists")
        try:
            rows.append(tuple(Fraction(v) for v in row))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"{label}: bad glue value: {exc}") from exc
    return {"base": tuple(base), "glue": tuple(rows)}


def load_catalog(path=None):
    """Parse and cross-validate the catalog file; list of CatalogEntry.

    Raises ParseError for structural problems and InvariantViolation,
    naming the row, when a stored gain or kissing number disagrees with
    what the dimension and the row's own data force.
    """
    path = Path(path) if path is not None else default_tables_path()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read catalog {path}: {exc}") from exc
    if not isinstance(raw, list):
        raise ParseError("catalog must be a JSON array")

    entries = []
    seen = set()
    for idx, item in enumerate(raw):
        where = f"catalog[{idx}]"
        if not isinstance(item, dict):
            raise ParseError(f"{where}: row must be an object")
        try:
            dim = item["dim"]
            label = item["label"]
            kissing = item["kissing"]
            gain = item["gain"]
            extremal = item["extremal"]
        except KeyError as exc:
            raise ParseError(f"{where}: missing field {exc}") from exc
        if not isinstance(label, str) or not label:
            raise ParseError(f"{where}: label must be a non-empty string")
        try:
            gain = Fraction(gain)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"{where} ({label}): bad gain: {exc}") from exc
        recipe = None
        if "recipe" in item:
            recipe = _parse_recipe(label, item["recipe"])
        entry = CatalogEntry(dim, label, kissing, gain, extremal, recipe)

        if entry.label in seen:
            raise InvariantViolation(f"{where}: duplicate label {label}")
        seen.add(entry.label)

        if entry.extremal:
            forced_gain, forced_kissing = _forced_extremal_facts(entry.dimension)
            if entry.gain != forced_gain:
                raise InvariantViolation(
                    f"{label}: stored gain {entry.gain} but an extremal "
                    f"dimension-{entry.dimension} lattice has gain {forced_gain}"
                )
            if entry.kissing != forced_kissing:
                raise InvariantViolation(
                    f"{label}: stored kissing {entry.kissing} but the forced "
                    f"theta series gives {forced_kissing}"
                )
        else:
            if not 16 <= entry.dimension <= 23:
                raise InvariantViolation(
                    f"{label}: non-extremal rows live in dimensions 16..23, "
                    f"got {entry.dimension}"
                )
            if entry.kissing == 0:
                raise InvariantViolation(
                    f"{label}: a non-extremal row cannot have kissing 0"
                )
            expected = gain_closed_form(entry.dimension, entry.kissing)
            if entry.gain != expected:
                raise InvariantViolation(
                    f"{label}: stored gain {entry.gain} != closed form {expected}"
                )
        entries.append(entry)
    return entries


def build_entry(entry):
    """The lattice a recipe describes: glued root-lattice components.

    Raises NoRecipe for formula-only rows.
    """
    if entry.recipe is None:
        raise NoRecipe(f"{entry.label} is catalogued without a construction")
    comps = [root_lattice(name) for name in entry.recipe["base"]]
    base = reduce(direct_sum, comps)
    return build_glue(GlueRecipe(base, entry.recipe["glue"]), label=entry.label)


def _check_line(kind, name, expected, computed):
    status = "OK" if expected == computed else "FAIL"
    return (f"{kind} {name} expected={expected} computed={computed} "
            f"status={status}"), status == "OK"


def verify_tables(entries, codes=None, build=True):
    """Re-derive every catalog value and report line by line.

    Returns (lines, failures).  Extremal gains are recomputed from the
    forced theta prefix, non-extremal gains from the closed form,
    recipes by building the lattice and counting minimal vectors, and
    code rows (when given) by recomputing distance and distribution.
    """
    lines = []
    failures = 0

    for entry in entries:
        if entry.extremal:
            forced_gain, _ = _forced_extremal_facts(entry.dimension)
            line, ok = _check_line("EXTREMAL", entry.label,
                                   str(entry.gain), str(forced_gain))
        else:
            expected = gain_closed_form(entry.dimension, entry.kissing)
            line, ok = _check_line("CLOSEDFORM", entry.label,
                                   str(entry.gain), str(expected))
        lines.append(line)
        failures += not ok

    if build:
        for entry in entries:
            if entry.recipe is None:
                continue
            expected = f"kissing:{entry.kissing},det:1"
            try:
                built = build_entry(entry)
                computed = (f"kissing:{kissing_number(built)},"
                            f"det:{'1' if is_unimodular(built) else 'not 1'}")
            except Exception as exc:  # report, do not abort the run
                computed = f"error:{type(exc).__name__}"
            line, ok = _check_line("RECIPE", entry.label, expected, computed)
            lines.append(line)
            failures += not ok

    if codes is not None:
        for code_entry in codes:
            code = code_entry.code
            expected = (f"d:{code_entry.d},selfdual:yes,"
                        f"weights:{list(code_entry.expected_weights)}")
            computed = (f"d:{min_distance(code)},"
                        f"selfdual:{'yes' if is_self_dual(code) else 'no'},"
                        f"weights:{list(weight_distribution(code))}")
            line, ok = _check_line("CODE", code_entry.name, expected, computed)
            lines.append(line)
            failures += not ok

    lines.append(f"SUMMARY checks={len(lines)} failures={failures}")
    return lines, failures
