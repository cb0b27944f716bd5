"""Exact Buchsbaum-Rim invariants, reduction numbers and Sally lengths.

Modules are direct sums M = I_1 + ... + I_r of m-primary monomial ideals in
k[x_1..x_d]/Q, or submodules of R^r given by generator matrices.
"""
__version__ = "0.1.0"

from .brim import (
    CrossCheckError,
    IdealTuple,
    NorthcottReport,
    bf_direct_sum,
    bp_equal_ideal,
    bp_polynomial,
    br_prop23,
    br_thm41,
    colength_FM,
    northcott_report,
)
from .dsl import DSLError, parse_ideal, parse_ideal_tuple, parse_matrix, parse_polynomial, parse_ring
from .multiplicity import (
    BinomialPoly,
    InstabilityError,
    MultiBinomialPoly,
    bhatt_function,
    bhatt_polynomial,
    hs_function,
    hs_polynomial,
    mixed_E,
)
from .reesmod import (
    GeneratorMatrix,
    RingElement,
    band_matrix,
    bf_general,
    certified_colength,
    direct_sum_matrix,
    graded_generators,
    random_minimal_reduction,
    reduction_number,
    sally_length,
    verify_joint_reduction,
    verify_rn1_formula,
    verify_sally_identity,
)
from .staircase import MonomialIdeal, Ring, colength, colength_pivot, ideal, minimalize

__all__ = [
    "__version__",
    "CrossCheckError",
    "IdealTuple",
    "NorthcottReport",
    "bf_direct_sum",
    "bp_equal_ideal",
    "bp_polynomial",
    "br_prop23",
    "br_thm41",
    "colength_FM",
    "northcott_report",
    "DSLError",
    "parse_ideal",
    "parse_ideal_tuple",
    "parse_matrix",
    "parse_polynomial",
    "parse_ring",
    "BinomialPoly",
    "InstabilityError",
    "MultiBinomialPoly",
    "bhatt_function",
    "bhatt_polynomial",
    "hs_function",
    "hs_polynomial",
    "mixed_E",
    "GeneratorMatrix",
    "RingElement",
    "band_matrix",
    "bf_general",
    "certified_colength",
    "direct_sum_matrix",
    "graded_generators",
    "random_minimal_reduction",
    "reduction_number",
    "sally_length",
    "verify_joint_reduction",
    "verify_rn1_formula",
    "verify_sally_identity",
    "MonomialIdeal",
    "Ring",
    "colength",
    "colength_pivot",
    "ideal",
    "minimalize",
]
