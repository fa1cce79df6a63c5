"""
정확한 무검출 확률을 사용한 상호정보량의 μ 최적화 모듈.

평균 전력 제약 n̄ = pμ 로 p 를 소거하고 μ 하나에 대해 최대화한다.
로그 간격 사전 탐색으로 최댓값 구간을 찾은 뒤 golden-section 으로 정밀화.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize_scalar

from src.core.errors import OptimizationError, RateDomainError
from src.core.logger import rate_logger
from src.core.settings import settings
from src.optics.analytic import AnalyticPoint, mu_opt_classical
from src.optics.info_theory import (
    RateResult,
    Scheme,
    ook_click_probs,
    ook_mutual_info,
    ppm_rate,
)
from src.optics.photon_stats import (
    ChannelParams,
    fock_mixture_no_count,
    poisson_no_count,
)

MIN_MU = 1e-6
SINGLE_PHOTON_TOL = 1e-6


class SourceFamily(str, Enum):
    """최적화 대상 광원 계열"""

    POISSON = "poisson"
    FOCK = "fock"


def default_mu_bounds(nbar: float, eta: float) -> tuple[float, float]:
    """기본 μ 탐색 구간 [max(2n̄, 1e−6), max(50, 100·μ^clas)]."""
    lo = max(2.0 * nbar, MIN_MU)
    hi = 50.0
    if eta > 0:
        mu_clas = mu_opt_classical(AnalyticPoint(nbar=nbar, eta=eta)).value
        hi = max(hi, 100.0 * mu_clas)
    return lo, max(hi, 10.0 * lo)


@dataclass(frozen=True)
class OptimizeProblem:
    """단일 (방식, 광원 계열, n̄, 채널) 최적화 문제."""

    scheme: Scheme
    source_family: SourceFamily
    nbar: float
    channel: ChannelParams
    mu_bounds: tuple[float, float] | None = None
    tol: float = field(default_factory=lambda: settings.optimize_tol)

    def __post_init__(self) -> None:
        if not self.nbar > 0:
            raise RateDomainError(f"nbar must be > 0, got {self.nbar}")
        if self.mu_bounds is None:
            object.__setattr__(
                self,
                "mu_bounds",
                default_mu_bounds(self.nbar, self.channel.eta),
            )
        lo, hi = self.mu_bounds
        if not self.nbar < lo < hi:
            raise RateDomainError(
                f"mu_bounds must satisfy nbar < low < high, got {self.mu_bounds}"
            )
        if not self.tol > 0:
            raise RateDomainError(f"tol must be > 0, got {self.tol}")

    @property
    def eta_nbar(self) -> float:
        return self.channel.eta * self.nbar


class Enhancement(NamedTuple):
    """Fock 혼합 대 Poisson 최적 상호정보량 비율과 Fock 최적 μ."""

    ratio: float
    fock_mu_opt: float

    @property
    def single_photon_optimal(self) -> bool:
        return abs(self.fock_mu_opt - 1.0) <= SINGLE_PHOTON_TOL


def source_no_count(
    family: SourceFamily, mu: ArrayLike, eta: float
) -> np.ndarray:
    """계열별 닫힌 형태의 무검출 확률 ε(μ)."""
    if family == SourceFamily.POISSON:
        return poisson_no_count(mu, eta)
    return fock_mixture_no_count(mu, eta)


def rate_at(problem: OptimizeProblem, mu: ArrayLike) -> float | np.ndarray:
    """
    μ 에서의 bin당 상호정보량 (p = n̄/μ).
    PPM: p(1−ε)log₂(1/p), OOK: 암계수를 포함한 이진 비대칭 채널.
    """
    mu_arr = np.asarray(mu, dtype=float)
    lo, hi = problem.mu_bounds
    slack = 1e-12 * hi
    if np.any(mu_arr < lo - slack) or np.any(mu_arr > hi + slack):
        raise RateDomainError(
            f"mu outside bounds [{lo}, {hi}]: {mu}"
        )
    channel = problem.channel
    eps = source_no_count(problem.source_family, mu_arr, channel.eta)
    p = problem.nbar / mu_arr
    if problem.scheme == Scheme.PPM:
        return ppm_rate(p, eps)
    q1, q0 = ook_click_probs(eps, channel.dark_prob)
    return ook_mutual_info(p, q1, q0)


def _default_grid(lo: float, hi: float, points: int) -> np.ndarray:
    if lo > 0:
        return np.geomspace(lo, hi, points)
    return np.linspace(lo, hi, points)


def maximize_scalar(
    f: Callable[[ArrayLike], float | np.ndarray],
    lo: float,
    hi: float,
    tol: float,
    grid: np.ndarray | None = None,
) -> tuple[float, float]:
    """
    [lo, hi] 에서 f 의 최댓값 (x_opt, f_opt).

    f 는 numpy 배열을 받아 같은 모양의 값을 돌려줘야 한다. 사전 탐색
    (기본 로그 간격 ≥ 64점) 후 최댓점 주변 구간을 golden-section 으로
    상대 x 허용오차 tol 까지 정밀화한다. 최댓점이 끝점이면 끝점을 반환.
    """
    if not lo < hi:
        raise RateDomainError(f"maximize_scalar requires lo < hi, got [{lo}, {hi}]")
    if grid is None:
        grid = _default_grid(lo, hi, settings.prescan_points)

    values = np.asarray(f(grid), dtype=float)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise OptimizationError(
            f"objective is not finite at x={grid[bad[0]]!r}"
        )

    # argmax 는 첫 번째 최댓점을 반환 (동률이면 작은 x)
    i = int(np.argmax(values))
    x_grid, f_grid = float(grid[i]), float(values[i])
    if i == 0 or i == len(grid) - 1 or values[i + 1] == f_grid:
        return x_grid, f_grid

    a, b, c = float(grid[i - 1]), x_grid, float(grid[i + 1])
    res = minimize_scalar(
        lambda x: -float(f(x)),
        bracket=(a, b, c),
        method="golden",
        options={"xtol": tol},
    )
    x_opt, f_opt = float(res.x), -float(res.fun)

    # 단봉성 검사: 정밀화 결과는 사전 탐색 셀 안에 있어야 한다
    if not a <= x_opt <= c or f_opt < f_grid - 1e-12 * max(1.0, abs(f_grid)):
        raise OptimizationError(
            f"refined maximum x={x_opt!r} (f={f_opt!r}) disagrees with "
            f"pre-scan cell [{a!r}, {c!r}] (f={f_grid!r})"
        )
    if f_opt < f_grid or (f_opt == f_grid and x_grid < x_opt):
        return x_grid, f_grid
    return x_opt, f_opt


def prescan_grid(problem: OptimizeProblem) -> np.ndarray:
    """
    사전 탐색 격자. Fock 혼합은 정수 μ 마다 꺾이므로 fock_dense_limit 까지
    단위 구간당 fock_points_per_unit 점과 정수점을 추가한다.
    """
    lo, hi = problem.mu_bounds
    grid = _default_grid(lo, hi, settings.prescan_points)
    if problem.source_family == SourceFamily.FOCK:
        dense_hi = min(hi, settings.fock_dense_limit)
        if dense_hi > lo:
            n_dense = math.ceil(settings.fock_points_per_unit * (dense_hi - lo)) + 1
            integers = np.arange(math.ceil(lo), math.floor(dense_hi) + 1)
            grid = np.concatenate(
                [grid, np.linspace(lo, dense_hi, n_dense), integers]
            )
    return np.unique(grid)


def optimize_rate(problem: OptimizeProblem) -> RateResult:
    """μ 에 대해 최적화된 RateResult."""
    lo, hi = problem.mu_bounds
    mu_opt, mi = maximize_scalar(
        lambda mu: rate_at(problem, mu),
        lo,
        hi,
        problem.tol,
        grid=prescan_grid(problem),
    )
    eta_nbar = problem.eta_nbar
    pie = mi / eta_nbar if eta_nbar > 0 else 0.0
    rate_logger.debug(
        "optimize_rate %s/%s nbar=%g eta=%g dark=%g -> mi=%g mu=%g",
        problem.scheme.value,
        problem.source_family.value,
        problem.nbar,
        problem.channel.eta,
        problem.channel.dark_prob,
        mi,
        mu_opt,
    )
    return RateResult(
        mi_per_bin=mi,
        pie=pie,
        opt_mu=mu_opt,
        opt_inv_p=mu_opt / problem.nbar,
    )


def enhancement_ratio(scheme: Scheme, nbar: float, eta: float) -> Enhancement:
    """같은 방식·n̄·η (암계수 없음)에서 Fock 혼합 대 Poisson 최적값의 비율."""
    channel = ChannelParams(eta=eta)
    fock = optimize_rate(
        OptimizeProblem(scheme, SourceFamily.FOCK, nbar, channel)
    )
    poisson = optimize_rate(
        OptimizeProblem(scheme, SourceFamily.POISSON, nbar, channel)
    )
    if poisson.mi_per_bin <= 0:
        raise RateDomainError("degenerate baseline")
    return Enhancement(
        ratio=fock.mi_per_bin / poisson.mi_per_bin,
        fock_mu_opt=fock.opt_mu,
    )


__all__ = [
    "SourceFamily",
    "OptimizeProblem",
    "Enhancement",
    "default_mu_bounds",
    "source_no_count",
    "rate_at",
    "maximize_scalar",
    "prescan_grid",
    "optimize_rate",
    "enhancement_ratio",
]
