"""
Shannon 상호정보량 모듈.
OOK = 이진 비대칭 채널, PPM = 1/p-진 소거(erasure) 채널.
로그는 모두 밑 2 (bits). 스칼라와 numpy 배열 입력을 모두 받는다.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import entr

from src.core.errors import RateDomainError

LN2 = math.log(2.0)


class Scheme(str, Enum):
    """변조 방식"""

    OOK = "ook"
    PPM = "ppm"


@dataclass(frozen=True)
class ModulationPoint:
    """변조 방식과 펄스 확률 p (PPM에서는 시퀀스 길이 1/p)."""

    scheme: Scheme
    pulse_prob: float

    def __post_init__(self) -> None:
        if not 0.0 < self.pulse_prob < 1.0:
            raise RateDomainError(
                f"pulse_prob must lie in (0, 1), got {self.pulse_prob}"
            )
        if self.scheme == Scheme.PPM and self.inv_p < 2.0:
            raise RateDomainError(
                f"PPM needs at least two positions, got 1/p={self.inv_p}"
            )

    @property
    def inv_p(self) -> float:
        return 1.0 / self.pulse_prob


@dataclass(frozen=True)
class RateResult:
    """최적화된 전송률: bin당 상호정보량, 검출 광자당 PIE, 최적 μ 및 1/p."""

    mi_per_bin: float
    pie: float
    opt_mu: float
    opt_inv_p: float


def _as_result(value: np.ndarray) -> float | np.ndarray:
    return float(value) if np.ndim(value) == 0 else value


def _check_probability(name: str, q: np.ndarray) -> None:
    if np.any(~np.isfinite(q)) or np.any((q < 0.0) | (q > 1.0)):
        raise RateDomainError(f"{name} must lie in [0, 1], got {q}")


def _check_pulse_prob(p: np.ndarray) -> None:
    if np.any(~np.isfinite(p)) or np.any((p <= 0.0) | (p >= 1.0)):
        raise RateDomainError(f"p must lie in (0, 1), got {p}")


def binary_entropy(q: ArrayLike) -> float | np.ndarray:
    """H₂(q) = −q log₂q − (1−q) log₂(1−q), 0·log0 := 0."""
    q = np.asarray(q, dtype=float)
    _check_probability("q", q)
    return _as_result((entr(q) + entr(1.0 - q)) / LN2)


def ook_click_probs(
    epsilon: ArrayLike, dark_prob: float = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    """
    암계수를 독립 클릭 과정으로 합성한 (q₁, q₀).
    q₁ = 1 − ε(1−p_d), q₀ = p_d.
    """
    eps = np.asarray(epsilon, dtype=float)
    return 1.0 - eps * (1.0 - dark_prob), np.full_like(eps, dark_prob)


def ook_mutual_info(
    p: ArrayLike, click_given_pulse: ArrayLike, click_given_empty: ArrayLike
) -> float | np.ndarray:
    """이진 비대칭 채널의 I = H₂(q̄) − p·H₂(q₁) − (1−p)·H₂(q₀)."""
    p = np.asarray(p, dtype=float)
    q1 = np.asarray(click_given_pulse, dtype=float)
    q0 = np.asarray(click_given_empty, dtype=float)
    _check_pulse_prob(p)
    _check_probability("click_given_pulse", q1)
    _check_probability("click_given_empty", q0)

    q_bar = p * q1 + (1.0 - p) * q0
    mi = (
        entr(q_bar)
        + entr(1.0 - q_bar)
        - p * (entr(q1) + entr(1.0 - q1))
        - (1.0 - p) * (entr(q0) + entr(1.0 - q0))
    ) / LN2
    # 반올림 오차로 인한 미세 음수 제거
    return _as_result(np.maximum(mi, 0.0))


def ppm_rate(p: ArrayLike, epsilon: ArrayLike) -> float | np.ndarray:
    """bin당으로 정규화한 PPM 상호정보량 p(1−ε)log₂(1/p)."""
    p = np.asarray(p, dtype=float)
    eps = np.asarray(epsilon, dtype=float)
    _check_pulse_prob(p)
    _check_probability("epsilon", eps)
    return _as_result(-p * (1.0 - eps) * np.log2(p))


def capacity_pie(eta_nbar: ArrayLike) -> float | np.ndarray:
    """단일모드 보손 채널 용량 한계의 PIE: log₂(1/x) + (1+1/x)log₂(1+x)."""
    x = np.asarray(eta_nbar, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x <= 0.0):
        raise RateDomainError(f"eta_nbar must be > 0, got {x}")
    return _as_result(-np.log2(x) + (1.0 + 1.0 / x) * np.log1p(x) / LN2)


__all__ = [
    "Scheme",
    "ModulationPoint",
    "RateResult",
    "binary_entropy",
    "ook_click_probs",
    "ook_mutual_info",
    "ppm_rate",
    "capacity_pie",
]
