"""Rank-one Dunkl operator of the cyclic group G(m,1,1), hyper-Bessel
functions, the Riemann-Liouville type transform and the intertwiner ``V_m``.

Operator identities are checked exactly on truncated power series and
numerically by weighted quadrature.
"""
from .errors import (
    ConvergenceError,
    DunklError,
    EvaluationError,
    GammaPoleError,
    ParameterError,
    SeriesDomainError,
    VanishingDenominatorError,
)
from .kernels import BACKEND
from .operators import (
    DiagonalOperator,
    OperatorContext,
    check_intertwining,
    dunkl_apply,
    eigen_series,
    hyper_bessel_op_apply,
    intertwiner_apply,
    omega_apply,
    rl_diagonal,
    rl_diagonal_inverse,
)
from .quadrature import QuadratureConfig, ek_integral, rl_transform_numeric
from .report import VerificationReport
from .series import (
    GroupConfig,
    MultiIndex,
    TruncatedSeries,
    WeightVector,
    antiderivative,
    derivative,
    evaluate,
    project,
)
from .special import (
    EvalResult,
    cos_m_eval,
    dunkl_kernel_eval,
    hyper_bessel_eval,
    recurrence_check,
    sin_ml_eval,
)

__version__ = "0.1.0"
