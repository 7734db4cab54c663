"""Exact computations on standard-graded Hilbert schemes of small projective schemes.

Polynomial arithmetic over the rationals, Groebner bases, Borel-fixed ideal
enumeration, Hilbert functions, generic initial ideals and tangent spaces
Hom(I, S/I)_0, plus a small set of built-in verification cases.
"""

from .geometry import (
    TangentReport,
    WeightVector,
    find_specialization_weight,
    gin,
    tangent_dimension,
    verify_specialization,
    weight_initial_ideal,
)
from .groebner import (
    CoordinateChange,
    GradedIdeal,
    GroebnerBasis,
    apply_coordinate_change,
    groebner_basis,
    ideal_equal,
    initial_ideal,
    syzygy_generators,
)
from .hilbert import (
    HilbertData,
    InadmissibleError,
    gotzmann_bound,
    hilbert_function,
    hilbert_polynomial,
    lex_segment,
    regularity,
)
from .monomial import (
    MonomialIdeal,
    borel_leq,
    enumerate_borel_with_hf,
    enumerate_saturated_borel_with_hp,
    is_strongly_stable,
    nonsat_expansions,
    saturate,
)
from .parsing import ParseError, parse_ideal_document
from .ring import GREVLEX, LEX, MonomialOrder, Polynomial, RingContext

__version__ = "0.1.0"
