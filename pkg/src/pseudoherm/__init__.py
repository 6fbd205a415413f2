"""pseudoherm: metric operators for a non-Hermitian oscillator and
pseudo-supersymmetric Rosen-Morse II states, with a per-equation audit."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: F401
    ClosedFormDomainError,
    ClosedFormSingularError,
    ComplexSusyAError,
    ConditionSingularError,
    DegenerateSuperpotentialError,
    EigensolverFailureError,
    FitFailureError,
    GaugeSingularError,
    IntertwinerSingularError,
    InvalidParameterError,
    NoRealMetricError,
    NumericOverflowError,
    PseudohermError,
    SingularTransformError,
    SpecialFunctionDomainError,
    SpectrumPoleError,
    TruncationUnstableError,
    UndefinedDefectError,
)
from .fock import (  # noqa: F401
    FockDim,
    FockOperator,
    ModelParams,
    SpectrumResult,
    build_hamiltonian,
    build_T,
    canonical_pair,
    eigenvalues,
    hermiticity_defect,
    ladder_ops,
    mat_exp,
    pt_symmetry_defect,
    similarity_transform,
)
from .metric import (  # noqa: F401
    CERT_DIM,
    EIG_DIM,
    FCoefficients,
    LambdaReport,
    MetricParams,
    MetricSolution,
    bogoliubov_defect,
    build_metric_pair,
    eps_paper_eq18,
    hermiticity_condition_residual,
    hermitian_equivalent,
    hermitian_equivalent_at,
    lambda_report,
    metric_params,
    observable_defect,
    pseudo_hermiticity_defect,
    solve_eps,
    solve_metric,
    theta_closed_form_defect,
    xp_transform_defect,
    xp_transform_report,
)
from .gridops import (  # noqa: F401
    GaugeFunctions,
    Grid,
    GridOperator,
    SchrodingerModel,
    applied_operator_defect,
    build_position_hamiltonian,
    chain_consistent_potential,
    cosh_pair,
    custom_gauge,
    gauge_chain_residual,
    gauge_equivalence_defect,
    rho_gauge,
    schrodinger_potential,
    u_eff,
)
from .rosenmorse import (  # noqa: F401
    IntertwinerOp,
    RMEigenstate,
    Superpotential,
    SusyParams,
    adjudicate_wavefunction_shift,
    build_intertwiner,
    density_profile,
    factorization_defect,
    intertwiner_residual,
    jacobi_complex,
    rm_spectrum,
    rm_wavefunction,
    superpotential,
    superpotential_partners,
    susy_params_from_matching,
    susy_params_from_model,
)
from .audit import AuditEntry, AuditReport, EQUATION_IDS, RunConfig, run_audit  # noqa: F401
