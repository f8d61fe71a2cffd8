"""Exact theta series and secrecy gains of unimodular lattices.

Submodules: `lattice` (exact lattices, enumeration, gluing), `qseries`
(truncated rational q-expansions and the Jacobi theta family), `codes`
(binary self-dual codes and the mod-2 construction), `secrecy` (theta
decompositions, secrecy gains, classification), `catalog` (the shipped
machine-checked tables), `wiretap_sim` (coset-coding Monte Carlo and the
theta approximation), and `cli` (the `latsec` command).

Hot search kernels are compiled when the extension builds and fall back
to pure Python otherwise; `IS_COMPILED` records which one is active.
"""

from ._kernels import IS_COMPILED
from .catalog import (
    CatalogEntry,
    build_entry,
    default_codes_path,
    default_tables_path,
    load_catalog,
    verify_tables,
)
from .codes import (
    BinaryCode,
    construction_a,
    dual_code,
    is_doubly_even,
    is_self_dual,
    kissing_from_code,
    load_codes,
    min_distance,
    weight_distribution,
)
from .lattice import (
    GlueRecipe,
    Lattice,
    build_glue,
    contains_vector,
    coords_in_basis,
    det_lattice,
    direct_sum,
    dual_basis,
    enumerate_vectors_up_to_norm,
    gram,
    integer_lattice,
    is_even,
    is_integral,
    is_unimodular,
    kissing_number,
    lll_reduce,
    minimal_norm,
    root_lattice,
    same_lattice,
    scale,
    theta_coeffs_enum,
)
from .qseries import QSeries, discriminant_delta8, theta2, theta3, theta4
from .secrecy import (
    BestPick,
    HeckeDecomposition,
    SecrecyProfile,
    classify_best,
    gain_closed_form,
    gain_from_decomposition,
    hecke_decompose,
    jacobi_values,
    locate_max,
    secrecy_function,
    z_of_y,
)
from .wiretap_sim import (
    ChannelConfig,
    NestedPair,
    SimResult,
    awgn,
    build_nested_from_code,
    coset_encode,
    eve_decision_mc,
    nearest_point,
    second_moment_mc,
    theta_approx_pce,
    theta_sum,
)

__version__ = "0.1.0"

__all__ = [
    "IS_COMPILED",
    "__version__",
    "CatalogEntry",
    "build_entry",
    "default_codes_path",
    "default_tables_path",
    "load_catalog",
    "verify_tables",
    "BinaryCode",
    "construction_a",
    "dual_code",
    "is_doubly_even",
    "is_self_dual",
    "kissing_from_code",
    "load_codes",
    "min_distance",
    "weight_distribution",
    "GlueRecipe",
    "Lattice",
    "build_glue",
    "contains_vector",
    "coords_in_basis",
    "det_lattice",
    "direct_sum",
    "dual_basis",
    "enumerate_vectors_up_to_norm",
    "gram",
    "integer_lattice",
    "is_even",
    "is_integral",
    "is_unimodular",
    "kissing_number",
    "lll_reduce",
    "minimal_norm",
    "root_lattice",
    "same_lattice",
    "scale",
    "theta_coeffs_enum",
    "QSeries",
    "discriminant_delta8",
    "theta2",
    "theta3",
    "theta4",
    "BestPick",
    "HeckeDecomposition",
    "SecrecyProfile",
    "classify_best",
    "gain_closed_form",
    "gain_from_decomposition",
    "hecke_decompose",
    "jacobi_values",
    "locate_max",
    "secrecy_function",
    "z_of_y",
    "ChannelConfig",
    "NestedPair",
    "SimResult",
    "awgn",
    "build_nested_from_code",
    "coset_encode",
    "eve_decision_mc",
    "nearest_point",
    "second_moment_mc",
    "theta_approx_pce",
    "theta_sum",
]
