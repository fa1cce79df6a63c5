"""OOK/PPM 직접검출 전송률 계산 패키지."""

from .analytic import (
    AnalyticPoint,
    lambert_w0,
    mu_opt_classical,
    pie_Pi,
    ppm_mi_approx,
    ppm_mi_classical_opt,
    ppm_mi_nonclassical_opt,
)
from .info_theory import (
    ModulationPoint,
    RateResult,
    Scheme,
    binary_entropy,
    capacity_pie,
    ook_mutual_info,
    ppm_rate,
)
from .optimize import (
    OptimizeProblem,
    SourceFamily,
    enhancement_ratio,
    maximize_scalar,
    optimize_rate,
    rate_at,
)
from .photon_stats import (
    ChannelParams,
    Explicit,
    FockMixture,
    Poisson,
    g2,
    mean_photon,
    no_count_approx,
    no_count_exact,
)

__all__ = [
    "AnalyticPoint",
    "lambert_w0",
    "mu_opt_classical",
    "pie_Pi",
    "ppm_mi_approx",
    "ppm_mi_classical_opt",
    "ppm_mi_nonclassical_opt",
    "ModulationPoint",
    "RateResult",
    "Scheme",
    "binary_entropy",
    "capacity_pie",
    "ook_mutual_info",
    "ppm_rate",
    "OptimizeProblem",
    "SourceFamily",
    "enhancement_ratio",
    "maximize_scalar",
    "optimize_rate",
    "rate_at",
    "ChannelParams",
    "Explicit",
    "FockMixture",
    "Poisson",
    "g2",
    "mean_photon",
    "no_count_approx",
    "no_count_exact",
]
