"""
비영(non-zero) 펄스의 광자수 분포 모듈.
모멘트, g², 채널 손실 후 무검출(no-count) 확률의 정확식/2차 근사식을 제공.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats

from src.core.errors import RateDomainError
from src.core.logger import rate_logger

# Explicit 분포 정규화 허용오차 (합에 대한 절대오차)
NORMALIZATION_TOL = 1e-12
# 2차 전개 유효성 판정 기준 (ημ)
APPROX_ETA_MU_LIMIT = 0.5
# Poisson -> Explicit 변환 시 버리는 꼬리 확률 상한
POISSON_TAIL_MASS = 1e-16


@dataclass(frozen=True)
class Approximation:
    """근사식 값과 유효성 플래그."""

    value: float
    valid: bool
    clamped: bool = False


@dataclass(frozen=True)
class Poisson:
    """평균 μ의 Poisson(결맞음) 펄스."""

    mean: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean) or self.mean < 0:
            raise RateDomainError(f"Poisson mean must be >= 0, got {self.mean}")


@dataclass(frozen=True)
class FockMixture:
    """⌊μ⌋ 및 ⌊μ⌋+1 광자 Fock 상태의 2성분 혼합."""

    mean: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean) or self.mean < 0:
            raise RateDomainError(
                f"FockMixture mean must be >= 0, got {self.mean}"
            )

    @property
    def floor(self) -> int:
        return math.floor(self.mean)

    @property
    def upper_weight(self) -> float:
        """⌊μ⌋+1 광자 성분의 가중치 μ−⌊μ⌋."""
        return self.mean - self.floor


@dataclass(frozen=True)
class Explicit:
    """광자수 n으로 인덱싱된 유한 확률 목록. 목록 밖의 n은 확률 0."""

    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        if not probs:
            raise RateDomainError("Explicit distribution must not be empty")
        if any(not math.isfinite(p) or p < 0 for p in probs):
            raise RateDomainError(
                f"Explicit probabilities must be >= 0, got {probs}"
            )
        total = math.fsum(probs)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise RateDomainError(
                f"Explicit probabilities must sum to 1, got {total!r}"
            )


PhotonSource = Poisson | FockMixture | Explicit


@dataclass(frozen=True)
class ChannelParams:
    """채널 투과율 η 와 bin당 암계수(dark count) 확률."""

    eta: float
    dark_prob: float = 0.0

    def __post_init__(self) -> None:
        _check_eta(self.eta)
        if not 0.0 <= self.dark_prob < 1.0:
            raise RateDomainError(
                f"dark_prob must lie in [0, 1), got {self.dark_prob}"
            )


def _check_eta(eta: float) -> None:
    if not 0.0 <= eta <= 1.0:
        raise RateDomainError(f"eta must lie in [0, 1], got {eta}")


def mean_photon(source: PhotonSource) -> float:
    """평균 광자수 μ = Σ n·p_n."""
    match source:
        case Poisson(mean=mu) | FockMixture(mean=mu):
            return float(mu)
        case Explicit(probabilities=probs):
            return math.fsum(n * p for n, p in enumerate(probs))
    raise TypeError(f"Unsupported photon source: {source!r}")


def factorial_moment(source: PhotonSource) -> float:
    """정규순서 2차 모멘트 ⟨n(n−1)⟩ = ⟨:n̂²:⟩."""
    match source:
        case Poisson(mean=mu):
            return mu * mu
        case FockMixture():
            k, f = source.floor, source.upper_weight
            return k * (k - 1 + 2 * f)
        case Explicit(probabilities=probs):
            return math.fsum(n * (n - 1) * p for n, p in enumerate(probs))
    raise TypeError(f"Unsupported photon source: {source!r}")


def variance(source: PhotonSource) -> float:
    """광자수 분산 ⟨n²⟩ − ⟨n⟩²."""
    mu = mean_photon(source)
    return factorial_moment(source) + mu - mu * mu


def g2(source: PhotonSource) -> float:
    """영 지연 정규화 2차 세기 상관함수 ⟨:n̂²:⟩/⟨n̂⟩²."""
    mu = mean_photon(source)
    if mu <= 0:
        raise RateDomainError("g2 undefined for vacuum")
    return factorial_moment(source) / (mu * mu)


def poisson_no_count(mu: ArrayLike, eta: float) -> np.ndarray:
    """Poisson 펄스의 무검출 확률 e^(−ημ). μ 배열 입력 지원."""
    _check_eta(eta)
    return np.exp(-eta * np.asarray(mu, dtype=float))


def fock_mixture_no_count(mu: ArrayLike, eta: float) -> np.ndarray:
    """Fock 혼합의 무검출 확률 [1−η(μ−⌊μ⌋)](1−η)^⌊μ⌋. μ 배열 입력 지원."""
    _check_eta(eta)
    mu = np.asarray(mu, dtype=float)
    k = np.floor(mu)
    return (1.0 - eta * (mu - k)) * np.power(1.0 - eta, k)


def no_count_exact(source: PhotonSource, eta: float) -> float:
    """ε = ⟨:e^(−ηn̂):⟩ = Σ p_n (1−η)^n."""
    _check_eta(eta)
    match source:
        case Poisson(mean=mu):
            return float(poisson_no_count(mu, eta))
        case FockMixture(mean=mu):
            return float(fock_mixture_no_count(mu, eta))
        case Explicit(probabilities=probs):
            # Horner 평가, 0^0 = 1
            return float(np.polynomial.polynomial.polyval(1.0 - eta, probs))
    raise TypeError(f"Unsupported photon source: {source!r}")


def no_count_approx(mu: float, g2: float, eta: float) -> Approximation:
    """
    ε ≈ 1 − ημ + ½ g² η² μ² (2차 전개).
    [0,1]로 클램프하며, 클램프되었거나 ημ ≥ 0.5이면 valid=False.
    """
    if mu < 0 or g2 < 0:
        raise RateDomainError(f"mu and g2 must be >= 0, got mu={mu}, g2={g2}")
    _check_eta(eta)
    x = eta * mu
    raw = 1.0 - x + 0.5 * g2 * x * x
    value = min(max(raw, 0.0), 1.0)
    clamped = value != raw
    valid = not clamped and x < APPROX_ETA_MU_LIMIT
    if not valid:
        rate_logger.debug(
            "no_count_approx outside validity: eta*mu=%g raw=%g", x, raw
        )
    return Approximation(value=value, valid=valid, clamped=clamped)


def max_mean_for_g2(g2: float) -> float:
    """분산 비음수 조건 μ ≤ 1/(1−g²). g² ≥ 1이면 상한 없음(inf)."""
    if g2 < 0:
        raise RateDomainError(f"g2 must be >= 0, got {g2}")
    if g2 >= 1:
        return math.inf
    return 1.0 / (1.0 - g2)


def min_variance(mu: float) -> float:
    """평균 μ에서 달성 가능한 최소 분산 (μ−⌊μ⌋)(1−μ+⌊μ⌋)."""
    if mu < 0:
        raise RateDomainError(f"mu must be >= 0, got {mu}")
    frac = mu - math.floor(mu)
    return frac * (1.0 - frac)


def to_explicit(source: PhotonSource) -> Explicit:
    """임의의 소스를 동등한 Explicit 분포로 변환 (Poisson은 꼬리 절단 후 재정규화)."""
    match source:
        case Explicit():
            return source
        case FockMixture():
            k, f = source.floor, source.upper_weight
            probs = [0.0] * (k + 2)
            probs[k] = 1.0 - f
            probs[k + 1] = f
            return Explicit(tuple(probs))
        case Poisson(mean=mu):
            if mu == 0:
                return Explicit((1.0,))
            n_max = int(stats.poisson.isf(POISSON_TAIL_MASS, mu)) + 1
            pmf = stats.poisson.pmf(np.arange(n_max + 1), mu)
            return Explicit(tuple(pmf / pmf.sum()))
    raise TypeError(f"Unsupported photon source: {source!r}")


__all__ = [
    "Approximation",
    "Poisson",
    "FockMixture",
    "Explicit",
    "PhotonSource",
    "ChannelParams",
    "mean_photon",
    "factorial_moment",
    "variance",
    "g2",
    "poisson_no_count",
    "fock_mixture_no_count",
    "no_count_exact",
    "no_count_approx",
    "max_mean_for_g2",
    "min_variance",
    "to_explicit",
]
