"""Marked chain-order polytopes of marked posets, in exact arithmetic."""

from .decomposition import (
    Decomposition,
    U2Chain,
    enumerate_admissible,
    equivalence_classes,
    is_admissible,
    star_signature,
    u2_chains,
)
from .errors import McopError, InputError
from .faces import enumerate_vertices, f_vector, facet_count_formula, facet_difference, test_f_conjecture
from .gt import GTSpec, build_gt_poset, count_signature_classes, weyl_dimension
from .hrep import HRepresentation, LinearInequality, build_chain_order
from .lattice import (
    EhrhartPolynomial,
    check_decomposition_property,
    check_ehrhart_equivalence,
    count_lattice_points,
    ehrhart_polynomial,
    enumerate_lattice_points,
    split_dilated_point,
    verify_minkowski,
    verify_normality,
)
from .poset import MarkedPoset, Poset, check_regular, regularize, star_elements, validate_poset
from .transfer import (
    AffineUnimodularMap,
    abs_transfer,
    chain_order_transfer,
    compose_equivalence,
    move_to_chain,
    move_to_order,
    verify_unimodular_equivalence,
)

__version__ = "0.1.0"

__all__ = [
    "AffineUnimodularMap",
    "Decomposition",
    "EhrhartPolynomial",
    "GTSpec",
    "HRepresentation",
    "InputError",
    "LinearInequality",
    "MarkedPoset",
    "McopError",
    "Poset",
    "U2Chain",
    "abs_transfer",
    "build_chain_order",
    "build_gt_poset",
    "chain_order_transfer",
    "check_decomposition_property",
    "check_ehrhart_equivalence",
    "check_regular",
    "compose_equivalence",
    "count_lattice_points",
    "count_signature_classes",
    "ehrhart_polynomial",
    "enumerate_admissible",
    "enumerate_lattice_points",
    "enumerate_vertices",
    "equivalence_classes",
    "f_vector",
    "facet_count_formula",
    "facet_difference",
    "is_admissible",
    "move_to_chain",
    "move_to_order",
    "regularize",
    "split_dilated_point",
    "star_elements",
    "star_signature",
    "test_f_conjecture",
    "u2_chains",
    "validate_poset",
    "verify_minkowski",
    "verify_normality",
    "verify_unimodular_equivalence",
    "weyl_dimension",
]
