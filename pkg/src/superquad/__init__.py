"""Exact-arithmetic computer algebra for homogeneous quadratic Lie
superalgebras: graded linear algebra over the rationals, verification
predicates, the degree-delta generalized double extension, its inverse
decomposition along isotropic abelian ideals, and worked constructions."""

from .algebra import (
    LieSuperAlgebra,
    QuadraticLieSuperAlgebra,
    Representation,
    SuperBracket,
    b_flat,
    check_invariance,
    check_jacobi,
    coadjoint,
    delta_coadjoint,
    is_derivation,
    is_metric_skew,
    semidirect_product,
)
from .catalog import (
    HeisenbergExtensionParams,
    OddExtensionParams,
    check_psi_isometry,
    default_heisenberg_params,
    default_odd_dim1_params,
    heisenberg_context,
    heisenberg_extension,
    heisenberg_target,
    odd_extension_context,
    odd_extension_dim1,
    psi_preconditions_hold,
)
from .decompose import (
    DecompositionResult,
    build_xi,
    decompose,
    extract_structure_maps,
    find_central_minimal_ideal,
    orthogonal_complement,
    witt_complement,
)
from .errors import (
    ClaimViolated,
    ConditionViolated,
    DegenerateInput,
    DegeneratePairing,
    InvalidContext,
    InvalidParams,
    LemmaViolation,
    NotAnIdealSplit,
    NotHomogeneous,
    ParseError,
    SuperquadError,
    ValidationError,
    Violation,
)
from .extension import (
    DeltaContext,
    check_lemma_identities,
    contexts_equal,
    derive_chi,
    derive_phi,
    double_extend,
    validate_context,
)
from .spaces import (
    GradedBilinearForm,
    GradedBilinearMap,
    GradedLinearMap,
    SuperSpace,
    apply_p_delta,
    check_form_degree,
    dual_space,
    parity_shift,
    parity_shift_map,
    supercommutator,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
