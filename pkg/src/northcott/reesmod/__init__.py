"""Rees algebras of submodules of R^r given by generator matrices."""
from .elements import GeneratorMatrix, RingElement, SymElement, sym_mul, sym_unit
from .linalg import SparseEchelon
from .rees import (
    DEFAULT_PRIME,
    PRODUCT_CAP,
    InconsistencyError,
    NotContainedError,
    ProductCapError,
    ReductionSearchError,
    SallyTable,
    band_matrix,
    bf_general,
    check_containment,
    direct_sum_matrix,
    find_minimal_reduction,
    graded_generators,
    module_colength,
    random_minimal_reduction,
    reduction_number,
    sally_length,
    sally_table,
    verify_joint_reduction,
    verify_rn1_formula,
    verify_sally_identity,
)
from .truncation import (
    C_MAX,
    CertifiedSpan,
    TruncatedSpace,
    TruncationError,
    certified_colength,
    certify_span,
    detect_grading,
)

__all__ = [
    "GeneratorMatrix",
    "RingElement",
    "SymElement",
    "sym_mul",
    "sym_unit",
    "SparseEchelon",
    "DEFAULT_PRIME",
    "PRODUCT_CAP",
    "InconsistencyError",
    "NotContainedError",
    "ProductCapError",
    "ReductionSearchError",
    "SallyTable",
    "band_matrix",
    "bf_general",
    "check_containment",
    "direct_sum_matrix",
    "find_minimal_reduction",
    "graded_generators",
    "module_colength",
    "random_minimal_reduction",
    "reduction_number",
    "sally_length",
    "sally_table",
    "verify_joint_reduction",
    "verify_rn1_formula",
    "verify_sally_identity",
    "C_MAX",
    "CertifiedSpan",
    "TruncatedSpace",
    "TruncationError",
    "certified_colength",
    "certify_span",
    "detect_grading",
]
