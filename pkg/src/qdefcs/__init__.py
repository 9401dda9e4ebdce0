"""Geometry and photon statistics of maths-type q-deformed coherent states."""
from .errors import (
    ConfigError,
    DegenerateState,
    InvalidDeformation,
    InvalidGupParams,
    NonConvergent,
    OutOfDisc,
    QDefError,
)
from .gup import (
    GupParameters,
    check_isotropy,
    effective_frequency,
    minimal_uncertainty_exists,
    q_from_alpha_beta,
)
from .observables import (
    ObservableReport,
    Phase,
    SlopeSet,
    conventional_ladder_moments,
    intelligent_check,
    mandel,
    mean_n,
    metric_factor,
    observable_report,
    quadrature,
    quadrature_coefficient_re2,
    small_t_slopes,
    snr,
    var_n,
    variance_ratio,
)
from .qcore import (
    INFINITY,
    DeformationParameter,
    Regime,
    SeriesValue,
    TruncationSpec,
    choose_truncation,
    log_q_factorial,
    q_bracket,
    q_exponential,
    radius_of_convergence,
)
from .states import QCoherentState, annihilator_residual, build_state, photon_distribution

__version__ = "0.1.0"
