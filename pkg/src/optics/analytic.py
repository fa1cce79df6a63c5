"""
PPM 최적 전송률의 해석적 근사 모듈.

2차 전개된 무검출 확률을 PPM 상호정보량에 대입하면 μ에 대한 최적화가
Lambert W 함수로 닫힌 형태를 갖는다. 근사가 유효 영역 밖에서 평가되면
값은 그대로 두고 valid=False 플래그를 붙여 반환한다.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import lambertw

from src.core.errors import RateDomainError
from src.core.logger import rate_logger
from src.optics.photon_stats import (
    APPROX_ETA_MU_LIMIT,
    Approximation,
    max_mean_for_g2,
)

BRANCH_POINT = -math.exp(-1.0)
# Lambert W 잔차 허용오차 (max(1,|x|)에 대한 상대값)
LAMBERT_RESIDUAL_TOL = 1e-12
_HALLEY_MAX_ITER = 8


class Branch(str, Enum):
    """비고전 최적해의 경우 구분"""

    FOCK_ONE = "fock_one"
    MIXED = "mixed"


@dataclass(frozen=True)
class AnalyticPoint:
    """평균 bin당 광자수 n̄, 투과율 η, 광원의 g²."""

    nbar: float
    eta: float
    g2: float = 1.0

    def __post_init__(self) -> None:
        if not self.nbar > 0:
            raise RateDomainError(f"nbar must be > 0, got {self.nbar}")
        if not 0.0 < self.eta <= 1.0:
            raise RateDomainError(f"eta must lie in (0, 1], got {self.eta}")
        if not self.g2 >= 0:
            raise RateDomainError(f"g2 must be >= 0, got {self.g2}")

    @property
    def eta_nbar(self) -> float:
        return self.eta * self.nbar


@dataclass(frozen=True)
class NonclassicalOptimum:
    """Fock 혼합 PPM 최적값과 해당 경우."""

    value: float
    branch: Branch
    valid: bool = True


def _residual_ok(w: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.abs(w * np.exp(w) - x) <= LAMBERT_RESIDUAL_TOL * np.maximum(
        1.0, np.abs(x)
    )


def lambert_w0(x: ArrayLike) -> float | np.ndarray:
    """
    Lambert W 주가지 W₀(x), W·e^W = x.

    scipy 값을 초기값으로 사용하고 잔차가 허용오차를 넘는 점만 Halley
    반복으로 보정한다.
    """
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.isnan(x)) or np.any(x < BRANCH_POINT - 1e-15):
        raise RateDomainError(f"lambert_w0 requires x >= -1/e, got {x}")
    x = np.maximum(x, BRANCH_POINT)

    w = lambertw(x, 0).real
    w = np.where(x == BRANCH_POINT, -1.0, w)

    for _ in range(_HALLEY_MAX_ITER):
        todo = ~_residual_ok(w, x) & (w != -1.0)
        if not np.any(todo):
            break
        wt, xt = w[todo], x[todo]
        ew = np.exp(wt)
        f = wt * ew - xt
        w1 = wt + 1.0
        w[todo] = wt - f / (ew * w1 - (wt + 2.0) * f / (2.0 * w1))

    return float(w[0]) if scalar else w


def ppm_mi_approx(point: AnalyticPoint, mu: float) -> Approximation:
    """I_PPM ≈ ηn̄ (1 − ½ g² ημ) log₂(μ/n̄). ημ ≥ 0.5이면 valid=False."""
    if mu <= point.nbar:
        raise RateDomainError(
            f"mu must exceed nbar ({point.nbar}) so that 1/p > 1, got {mu}"
        )
    eta_mu = point.eta * mu
    value = (
        point.eta_nbar
        * (1.0 - 0.5 * point.g2 * eta_mu)
        * math.log2(mu / point.nbar)
    )
    valid = eta_mu < APPROX_ETA_MU_LIMIT
    if not valid:
        rate_logger.debug("ppm_mi_approx outside validity: eta*mu=%g", eta_mu)
    return Approximation(value=value, valid=valid)


def mu_opt_classical(point: AnalyticPoint) -> Approximation:
    """
    μ^clas = (2/(ηg²)) / W(2e/(g²ηn̄)).
    g² < 1에서 결과가 분산 조건 μ ≤ 1/(1−g²)을 위반하면 valid=False.
    """
    if point.g2 == 0:
        raise RateDomainError(
            "classical optimum undefined, use nonclassical branch"
        )
    w = lambert_w0(2.0 * math.e / (point.g2 * point.eta_nbar))
    mu = 2.0 / (point.eta * point.g2 * w)
    physical = mu <= max_mean_for_g2(point.g2)
    if not physical:
        rate_logger.debug(
            "mu_opt_classical=%g unphysical for g2=%g", mu, point.g2
        )
    return Approximation(value=mu, valid=physical)


def pie_Pi(x: float) -> Approximation:
    """
    Poisson PPM의 근사 PIE
    Π(x) = {[W(2e/x)]⁻¹ − 1} · log₂[(x/2) W(2e/x)].
    W(2e/x) ≤ 1 (x ≥ 2)이면 단조성을 잃으므로 valid=False.
    """
    if not x > 0:
        raise RateDomainError(f"pie_Pi requires x > 0, got {x}")
    w = lambert_w0(2.0 * math.e / x)
    value = (1.0 / w - 1.0) * math.log2(0.5 * x * w)
    valid = w > 1.0
    if not valid:
        rate_logger.debug("pie_Pi outside validity: x=%g, W=%g", x, w)
    return Approximation(value=value, valid=valid)


def pie_asymptotic(x: float) -> float:
    """W(z) ≈ ln z 로 근사한 Π의 x → 0 점근형."""
    if not 0 < x < 2.0:
        raise RateDomainError(f"pie_asymptotic requires 0 < x < 2, got {x}")
    log_arg = math.log(2.0 * math.e / x)
    return (1.0 / log_arg - 1.0) * math.log2(0.5 * x * log_arg)


def ppm_mi_classical_opt(point: AnalyticPoint) -> Approximation:
    """I_PPM^clas = ηn̄ · Π(g²ηn̄), 고전 광원(g² ≥ 1) 전용."""
    if point.g2 < 1.0:
        raise RateDomainError(
            f"classical optimum requires g2 >= 1, got {point.g2}"
        )
    pie = pie_Pi(point.g2 * point.eta_nbar)
    return Approximation(value=point.eta_nbar * pie.value, valid=pie.valid)


def _check_nonclassical(nbar: float, eta: float) -> None:
    if not 0.0 < nbar < 1.0:
        raise RateDomainError(f"nbar must lie in (0, 1), got {nbar}")
    if not 0.0 < eta <= 1.0:
        raise RateDomainError(f"eta must lie in (0, 1], got {eta}")


def fock_one_threshold(nbar: float) -> float:
    """단일광자 Fock 상태가 최적이 되는 투과율 문턱값 2/ln(1/n̄)."""
    return 2.0 / math.log(1.0 / nbar)


def ppm_mi_nonclassical_opt(nbar: float, eta: float) -> NonclassicalOptimum:
    """
    분산 조건을 포화시키는 비고전 광원의 PPM 최적값.
    η ≥ 2/ln(1/n̄): ηn̄ log₂(1/n̄)  (μ = 1)
    그 외:          ηn̄ (1+η/2) Π(ηn̄/(1+η/2))
    """
    _check_nonclassical(nbar, eta)
    if eta >= fock_one_threshold(nbar):
        return NonclassicalOptimum(
            value=eta * nbar * math.log2(1.0 / nbar), branch=Branch.FOCK_ONE
        )
    scale = 1.0 + 0.5 * eta
    pie = pie_Pi(eta * nbar / scale)
    return NonclassicalOptimum(
        value=eta * nbar * scale * pie.value,
        branch=Branch.MIXED,
        valid=pie.valid,
    )


def mu_opt_nonclassical(nbar: float, eta: float) -> float:
    """
    ppm_mi_nonclassical_opt 에 대응하는 최적 μ.
    Mixed 경우는 g² = 1 − 1/μ 를 대입하면 η 가 η/(1+η/2) 로 바뀐 고전 최적식이 된다.
    """
    _check_nonclassical(nbar, eta)
    if eta >= fock_one_threshold(nbar):
        return 1.0
    eta_eff = eta / (1.0 + 0.5 * eta)
    w = lambert_w0(2.0 * math.e / (eta_eff * nbar))
    return 2.0 / (eta_eff * w)


def enhancement_ratio_analytic(nbar: float, eta: float) -> float:
    """비고전 최적값(경우 2개) 대 Poisson 최적값(g² = 1)의 해석적 비율."""
    nonclassical = ppm_mi_nonclassical_opt(nbar, eta)
    classical = ppm_mi_classical_opt(AnalyticPoint(nbar=nbar, eta=eta))
    return nonclassical.value / classical.value


__all__ = [
    "Branch",
    "AnalyticPoint",
    "NonclassicalOptimum",
    "lambert_w0",
    "ppm_mi_approx",
    "mu_opt_classical",
    "pie_Pi",
    "pie_asymptotic",
    "ppm_mi_classical_opt",
    "fock_one_threshold",
    "ppm_mi_nonclassical_opt",
    "mu_opt_nonclassical",
    "enhancement_ratio_analytic",
]
