"""Z2-triple cyclic codes: generators, spanning sets, duals and desk-scale search."""

from .gf2poly import Gf2Poly, parse, reciprocal
from .triplecode import TripleSpec, cardinality, generator_matrix, read_spec, validate
from .linoracle import dual_oracle, weight_distribution
from .dualpair import DualResult, dual_spec, separable_dual

__all__ = [
    "DualResult",
    "Gf2Poly",
    "TripleSpec",
    "cardinality",
    "dual_oracle",
    "dual_spec",
    "generator_matrix",
    "parse",
    "read_spec",
    "reciprocal",
    "separable_dual",
    "validate",
    "weight_distribution",
]
