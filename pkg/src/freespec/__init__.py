"""Numerics for free spectrahedra.

Membership testing for the dimension-free solution sets of linear
matrix inequalities, classification of classical / matrix / free
extreme points by finite linear systems, and constructive decomposition
of points into matrix convex combinations of free extreme points via
maximal 1-dilations.
"""

from .errors import (
    AlreadyMaximal,
    BadNormalization,
    BlockingFailure,
    DescentFailure,
    DimensionMismatch,
    FieldUnsupported,
    FreespecError,
    HierarchyViolation,
    IllFormedCombination,
    Infeasible,
    InfeasibleBeta,
    InvalidTuple,
    IterationCapExceeded,
    LevelTooLarge,
    NotPSD,
    NotStrictContraction,
    OutsideCube,
    OutsideDomain,
    SchemaError,
    SingularT,
    UnboundedAlpha,
    UnboundedDirection,
    UnboundedDomain,
)
from .tolerances import DEFAULT, Tolerances
from .tuples import (
    COMPLEX,
    REAL,
    GammaPoint,
    MatrixConvexCombination,
    MatrixTuple,
    apply_combination,
    canonical_sign,
    direct_sum,
    gamma_embed,
    irreducible,
    is_proper,
    selfadjoint_commutant_basis,
    unitarily_equivalent,
)
from .pencil import (
    LinearPencil,
    MembershipVerdict,
    evaluate_L,
    evaluate_Lambda,
    is_bounded_level1,
    kernel_basis,
    mconv_membership,
    membership,
    polar_dual_check,
    shuffle_indices,
)
from .solver import (
    AffinePencil,
    SolveStatus,
    dilation_feasibility_pencil,
    extreme_point_of_spectrahedron,
    feasibility_margin,
    max_step,
    maximize_alpha,
)
from .extreme import (
    DilationSubspace,
    ExtremeReport,
    classical_extreme_test,
    classify,
    dilation_subspace,
    free_extreme_test,
    matrix_extreme_test,
)
from .dilation import (
    Decomposition,
    DilationCandidate,
    block_diagonalize,
    decompose_to_free_extremes,
    dilate_tuple,
    maximal_one_dilation,
)
from .sampling import (
    boundary_scale,
    random_bounded_pencil,
    random_hermitian,
    random_point,
    random_tuple,
    random_unitary,
    rng_from,
)
from .catalog import (
    NamedSpectrahedron,
    free_cube,
    get_named_point,
    get_named_set,
    halmos_dilation,
    m1g_maximal_dilation,
    matrix_ball,
    mdg_pencil,
    pauli_pair,
    row_to_selfadjoint,
)
from .oracles import (
    SearchReport,
    refute_matrix_extreme,
    search_nontrivial_dilation,
    verify_combination,
)
from .serialize import dump_text, dumps, load_tuple, save_tuple, tuple_from_obj, tuple_to_obj

__version__ = "0.1.0"

__all__ = [
    "AffinePencil",
    "AlreadyMaximal",
    "BadNormalization",
    "BlockingFailure",
    "COMPLEX",
    "DEFAULT",
    "Decomposition",
    "DescentFailure",
    "DilationCandidate",
    "DilationSubspace",
    "DimensionMismatch",
    "ExtremeReport",
    "FieldUnsupported",
    "FreespecError",
    "HierarchyViolation",
    "IllFormedCombination",
    "Infeasible",
    "InfeasibleBeta",
    "InvalidTuple",
    "IterationCapExceeded",
    "LevelTooLarge",
    "LinearPencil",
    "MatrixConvexCombination",
    "MatrixTuple",
    "MembershipVerdict",
    "NamedSpectrahedron",
    "NotPSD",
    "NotStrictContraction",
    "OutsideCube",
    "OutsideDomain",
    "REAL",
    "SchemaError",
    "SearchReport",
    "SingularT",
    "SolveStatus",
    "Tolerances",
    "UnboundedAlpha",
    "UnboundedDirection",
    "UnboundedDomain",
    "apply_combination",
    "block_diagonalize",
    "boundary_scale",
    "canonical_sign",
    "classical_extreme_test",
    "classify",
    "decompose_to_free_extremes",
    "dilate_tuple",
    "dilation_feasibility_pencil",
    "dilation_subspace",
    "direct_sum",
    "dump_text",
    "dumps",
    "evaluate_L",
    "evaluate_Lambda",
    "extreme_point_of_spectrahedron",
    "feasibility_margin",
    "free_cube",
    "free_extreme_test",
    "GammaPoint",
    "gamma_embed",
    "get_named_point",
    "get_named_set",
    "halmos_dilation",
    "irreducible",
    "is_bounded_level1",
    "is_proper",
    "kernel_basis",
    "load_tuple",
    "m1g_maximal_dilation",
    "matrix_ball",
    "matrix_extreme_test",
    "max_step",
    "maximize_alpha",
    "maximal_one_dilation",
    "mconv_membership",
    "mdg_pencil",
    "membership",
    "pauli_pair",
    "polar_dual_check",
    "random_bounded_pencil",
    "random_hermitian",
    "random_point",
    "random_tuple",
    "random_unitary",
    "refute_matrix_extreme",
    "rng_from",
    "row_to_selfadjoint",
    "save_tuple",
    "search_nontrivial_dilation",
    "selfadjoint_commutant_basis",
    "shuffle_indices",
    "tuple_from_obj",
    "tuple_to_obj",
    "unitarily_equivalent",
    "verify_combination",
]
