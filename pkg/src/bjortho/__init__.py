"""Birkhoff-James orthogonality in normed spaces and for operators under semi-norm families."""
from .admissible import AdmissibleSpec, canonical_representative, discretize_symmetrized, projectively_equal
from .numerics import GuardBand, TriState, Verdict
from .operators import (
    LinearOperator,
    Side,
    bhatia_semrl_orthogonal,
    induced_seminorm,
    op_orthogonal_characterization,
    op_orthogonal_definition,
    sain_orthogonal,
    seminorm_cone_membership,
    spectral_operator_norm,
    witness_functional,
)
from .ortho import (
    Domain,
    OrthoSpaceSpec,
    bj_orthogonal,
    cone_membership,
    is_smooth_point,
    james_orthogonal,
    minimize_along_line,
    ortho_space_orthogonal,
    right_additivity_probe,
    supporting_functionals,
)
from .spaces import (
    CoordinateAbs,
    Euclidean,
    Functional,
    LinearImage,
    Lp,
    Polyhedral,
    SemiNormFamily,
    WeightedLp,
    dual_norm,
    eval_functional,
    eval_seminorm,
    validate_norm,
)
from .verify import AgreementReport, CheckConfig, TheoremId, gen_instance, reproduce_counterexamples, run_check

__all__ = [name for name in dir() if not name.startswith("_")]
