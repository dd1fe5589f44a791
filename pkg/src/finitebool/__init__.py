"""Exact, witness-producing combinatorics of finite Boolean algebras and set systems."""

__version__ = "0.1.0"

from .errors import FiniteBoolError, InputError, PreconditionFailed, ResourceError, TruncationError
from .setsys import (
    FiniteAlgebra,
    SetFamily,
    SubsetMask,
    algebra_contains,
    count_intermediate_algebras,
    generate_algebra,
    is_minimal_extension,
    minimal_by_definition,
    refine,
    verify_minimal_chain,
)
from .polynomial import BooleanPolynomial, parse_polynomial
from .independence import (
    PatternFamily,
    check_poly_bound,
    dual_transfer,
    i_threshold,
    is_independent,
    max_independent,
    poly_image,
    sauer_bound,
    sauer_shelah_extract,
    shattered,
    transfer_family,
    transpose,
    vc_dimension,
)
from .measures import (
    Measure,
    determination_defect,
    i1_atom_check,
    measure_of,
    min_pairwise_separation,
    nonatomic_threshold,
    product_measure_on_independent,
    separated_independence_probe,
    type_defect,
)
from .cantor import (
    CantorParams,
    Cylinder,
    CylinderUnion,
    build_A,
    build_separated_family,
    convergence_index,
    diff_measure,
    sigma_n,
    union_measure,
    verify_separation_bound,
)
