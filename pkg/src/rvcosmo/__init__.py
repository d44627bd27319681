"""Regular-variation analysis of matter+Lambda cosmological expansion.

Subpackages by concern:

- ``sampled``: grids and sampled-function carriers, CSV round-trips.
- ``rvcore``: scaling-ratio bounds, RV/ER classification, Karamata fits.
- ``cpt``: the dimensionless age functions F(Omega) and mu(Omega).
- ``friedmann``: background trajectory integration and identity checks.
- ``gammafun``: the threshold functional M(mu), roots, solution pairs.
- ``oscillate``: the two-power cos^2/sin^2 oscillation model.
- ``dualmap``: the involutive dual-universe parameter map.
- ``cli``: the ``rvcosmo`` command-line front end.
"""

from .cpt import Curvature, f_omega, f_omega_inverse, mu_of_omega, q_of, reconstruct_a
from .dualmap import DualPair, dual_params, dual_w
from .errors import RvcosmoError
from .friedmann import (
    CosmologyConfig,
    Trajectory,
    cpt_identity_residual,
    integrate,
    residual_check,
    rhs_reduced,
    time_since_bang,
)
from .gammafun import (
    EosParams,
    GammaResult,
    Regime,
    char_roots,
    fundamental_pair,
    gamma_of_w,
    m_functional,
    mu_lambda,
)
from .oscillate import (
    OscillationModel,
    f_omega_divergent,
    fit_u,
    inflection_count,
    linear_phase_model,
    log_phase_grid,
    log_phase_model,
    synth_a,
    synth_derivatives,
)
from .rvcore import (
    RatioBounds,
    RvClassification,
    RvKind,
    SlowVaryRep,
    classify,
    matuszewska_indices,
    ratio_bounds,
    rv_index,
    strip_visits,
    sv_epsilon_fit,
    sv_reconstruct,
)
from .sampled import GridSeries, SampledFunction, log_grid, sample

__version__ = "0.1.0"

__all__ = [
    "Curvature", "f_omega", "f_omega_inverse", "mu_of_omega", "q_of", "reconstruct_a",
    "DualPair", "dual_params", "dual_w",
    "RvcosmoError",
    "CosmologyConfig", "Trajectory", "cpt_identity_residual", "integrate",
    "residual_check", "rhs_reduced", "time_since_bang",
    "EosParams", "GammaResult", "Regime", "char_roots", "fundamental_pair",
    "gamma_of_w", "m_functional", "mu_lambda",
    "OscillationModel", "f_omega_divergent", "fit_u", "inflection_count",
    "linear_phase_model", "log_phase_grid", "log_phase_model", "synth_a", "synth_derivatives",
    "RatioBounds", "RvClassification", "RvKind", "SlowVaryRep", "classify",
    "matuszewska_indices", "ratio_bounds", "rv_index", "strip_visits",
    "sv_epsilon_fit", "sv_reconstruct",
    "GridSeries", "SampledFunction", "log_grid", "sample",
    "__version__",
]
