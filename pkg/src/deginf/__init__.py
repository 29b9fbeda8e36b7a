"""Exact computations with degree-like functions, polytope subdegrees and toric surfaces."""

__version__ = "0.1.0"

from .degree import (NEG_INF, GeneratedFiltration, Subdegree, WeightedDegree, check_axioms,
                     homogeneity_probe)
from .exact import RationalMatrix, determinant, matrix_invert, primitive_vector
from .poly import LAURENT, POLYNOMIAL, LaurentPolynomial, Mode, RingDomain, parse_poly
from .polytope import (Facet, OriginMode, RationalPolytope, eval_by_scaling, semigroup_generators,
                       subdegree_from_polytope)
from .structure import (components_at_infinity, divisor_at_infinity, extract_semidegree,
                        minimal_presentation, rees_normalize, scale_to_integer)
from .toric import (Fan2, Polygon2, ampleness_at_infinity, intersection_report, intersection_via_fan,
                    intersection_via_linking, linking_at_infinity_2d, linking_matrix, nef_membership)
from .conjecture import ExperimentConfig, exhaustive_n2_check, linking_determinant_experiment

__all__ = [
    "NEG_INF", "GeneratedFiltration", "Subdegree", "WeightedDegree", "check_axioms", "homogeneity_probe",
    "RationalMatrix", "determinant", "matrix_invert", "primitive_vector",
    "LAURENT", "POLYNOMIAL", "LaurentPolynomial", "Mode", "RingDomain", "parse_poly",
    "Facet", "OriginMode", "RationalPolytope", "eval_by_scaling", "semigroup_generators",
    "subdegree_from_polytope",
    "components_at_infinity", "divisor_at_infinity", "extract_semidegree", "minimal_presentation",
    "rees_normalize", "scale_to_integer",
    "Fan2", "Polygon2", "ampleness_at_infinity", "intersection_report", "intersection_via_fan",
    "intersection_via_linking", "linking_at_infinity_2d", "linking_matrix", "nef_membership",
    "ExperimentConfig", "exhaustive_n2_check", "linking_determinant_experiment",
]
