"""qresum: q-Borel-Laplace resummation of divergent bilateral q-series.

Numerical q-special functions (theta, q-Pochhammer, q-gamma,
q-exponential), uni/bilateral basic hypergeometric evaluators with
convergence-domain enforcement, the q-Borel / q-Laplace resummation
pipelines with their closed forms and elliptic connection coefficients,
and q -> 1-0 classical-limit scans.
"""

from .errors import (
    BranchCutError,
    DivergenceDomainError,
    DomainOverlapEmptyError,
    MaxTermsExceeded,
    ParameterPoleError,
    PoleError,
    QResumError,
    SpiralProximityError,
    TailNotConvergedError,
    ZeroArgumentError,
)
from .qcore import (
    EvalResult,
    QContext,
    classical_gamma,
    classical_hypergeometric,
    one_minus_qpow,
    q_exponential,
    q_gamma,
    qpoch_finite,
    qpoch_infinite,
    theta,
)
from .scaled import ScaledComplex
from .series_engine import (
    ConvergenceDomain,
    FormalBilateralSeries,
    QSpiral,
    bilateral_domain,
    eval_bilateral_psi,
    eval_unilateral_phi,
)
from .borel_laplace import (
    ConnectionCoefficient,
    LaplaceConfig,
    closedform_psiA,
    closedform_psiB,
    connection_coeff,
    qborel_plus,
    qlaplace_plus,
    resummed_psiA,
    resummed_psiB,
)
from .limits import (
    LimitReport,
    LimitSchedule,
    limit_linear_sum_forms,
    limit_qpoch_ratio,
    limit_theorem_A,
    limit_theorem_B,
    limit_theta_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "QContext",
    "EvalResult",
    "ScaledComplex",
    "qpoch_finite",
    "qpoch_infinite",
    "theta",
    "q_exponential",
    "q_gamma",
    "classical_gamma",
    "classical_hypergeometric",
    "one_minus_qpow",
    "QSpiral",
    "ConvergenceDomain",
    "bilateral_domain",
    "FormalBilateralSeries",
    "eval_unilateral_phi",
    "eval_bilateral_psi",
    "LaplaceConfig",
    "qborel_plus",
    "qlaplace_plus",
    "closedform_psiA",
    "closedform_psiB",
    "resummed_psiA",
    "resummed_psiB",
    "ConnectionCoefficient",
    "connection_coeff",
    "LimitSchedule",
    "LimitReport",
    "limit_theta_ratio",
    "limit_qpoch_ratio",
    "limit_linear_sum_forms",
    "limit_theorem_A",
    "limit_theorem_B",
    "QResumError",
    "MaxTermsExceeded",
    "ZeroArgumentError",
    "PoleError",
    "ParameterPoleError",
    "DivergenceDomainError",
    "DomainOverlapEmptyError",
    "SpiralProximityError",
    "TailNotConvergedError",
    "BranchCutError",
    "__version__",
]
