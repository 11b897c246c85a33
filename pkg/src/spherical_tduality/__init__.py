"""Exact-arithmetic models of odd sphere bundles and spherical T-duality.

The package models bundles by finite graded-commutative algebras over the
rationals, constructs topological T-duals, and verifies by exact linear
algebra that dual pairs have isomorphic twisted cohomologies.
"""

from .algebra import AlgebraMismatch, Element, GradedAlgebra, algebra_check
from .bases import cp, point, product, sphere, torus
from .bundles import SphereBundle, Twist, ValidationError, euler_of_dual
from .complexes import (
    ChainMap,
    Complex,
    InducedMap,
    complex_of,
    induced_map_on_cohomology,
)
from .engine import (
    Correspondence,
    CorrespondenceForm,
    Factorization,
    PairReport,
    TDualPair,
    dualize,
    fourier_mukai,
    fourier_mukai_chain_map,
    fourier_mukai_factorization,
    gauge_shift_pair,
    match_witness,
    verify_pair,
)
from .modelio import ParseError, emit_model, emit_report, parse_model
from .twisted import (
    CupOperator,
    TwistedComplex,
    build_twisted,
    cup_operator,
    gauge_map,
    twisted_dims,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMismatch",
    "ChainMap",
    "Complex",
    "Correspondence",
    "CorrespondenceForm",
    "CupOperator",
    "Element",
    "Factorization",
    "GradedAlgebra",
    "InducedMap",
    "PairReport",
    "ParseError",
    "SphereBundle",
    "TDualPair",
    "Twist",
    "TwistedComplex",
    "ValidationError",
    "algebra_check",
    "build_twisted",
    "complex_of",
    "cp",
    "cup_operator",
    "dualize",
    "emit_model",
    "emit_report",
    "euler_of_dual",
    "fourier_mukai",
    "fourier_mukai_chain_map",
    "fourier_mukai_factorization",
    "gauge_map",
    "gauge_shift_pair",
    "induced_map_on_cohomology",
    "match_witness",
    "parse_model",
    "point",
    "product",
    "sphere",
    "torus",
    "twisted_dims",
    "verify_pair",
]
