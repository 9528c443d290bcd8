"""Exact continued fractions of quadratic surds, their sails, and the
classification of symmetric periods."""

from .arith import (
    QuadraticSurd,
    Rational,
    UnimodularMatrix,
    mobius,
    sqrt_of,
    squarefree_split,
    surd,
)
from .cfrac import (
    Convergent,
    PeriodicCF,
    complete_quotient_cycle,
    convergents,
    expand,
    galois_reverse,
    serret_equivalent,
    serret_matrix,
    value,
)
from .criterion import (
    Classification,
    Witness,
    classify,
    iter_reduced_surds,
    shape_oracle,
    sqrt_shape_check,
    unit_period_check,
    witness,
)
from .geometry import (
    LatticePoint,
    QuadraticForm,
    Sail,
    SproutEdgePair,
    edge_sprout_bijection,
    emit_svg,
    fixed_line_surds,
    integer_angle,
    integer_length,
    korkina_construct,
    lagrange_automorphism,
    sail_from_surd,
    sprout,
)
from .symmetry import (
    Center,
    CenterKind,
    CyclicWord,
    ShapeDecomposition,
    canonical_rotation,
    centers,
    centers_record,
    is_cyclic_palindrome,
    is_regular_palindrome,
    shape_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "Center",
    "CenterKind",
    "Classification",
    "Convergent",
    "CyclicWord",
    "LatticePoint",
    "PeriodicCF",
    "QuadraticForm",
    "QuadraticSurd",
    "Rational",
    "Sail",
    "ShapeDecomposition",
    "SproutEdgePair",
    "UnimodularMatrix",
    "Witness",
    "canonical_rotation",
    "centers",
    "centers_record",
    "classify",
    "complete_quotient_cycle",
    "convergents",
    "edge_sprout_bijection",
    "emit_svg",
    "expand",
    "fixed_line_surds",
    "galois_reverse",
    "integer_angle",
    "integer_length",
    "is_cyclic_palindrome",
    "is_regular_palindrome",
    "iter_reduced_surds",
    "korkina_construct",
    "lagrange_automorphism",
    "mobius",
    "sail_from_surd",
    "serret_equivalent",
    "serret_matrix",
    "shape_decompose",
    "shape_oracle",
    "sprout",
    "sqrt_of",
    "sqrt_shape_check",
    "squarefree_split",
    "surd",
    "unit_period_check",
    "value",
    "witness",
]
