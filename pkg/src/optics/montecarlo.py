"""
무검출 확률의 독립 Monte-Carlo 검증 모듈.

광자수 샘플링(역변환), 광자별 Bernoulli(η) 생존, 독립 암계수 클릭을
모사한다. 난수 생성기는 카운터 기반 Philox (numpy.random.Philox).
시행은 shard 로 나눌 수 있고 shard 시드는 seed XOR shard_index 이다.
shard 수를 바꾸면 난수열이 바뀌므로 하위 자릿수는 통계 오차 범위 안에서 달라질 수 있다.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from src.core.errors import RateDomainError
from src.core.logger import log_execution_time, mc_logger
from src.core.settings import settings
from src.optics.photon_stats import (
    ChannelParams,
    FockMixture,
    Poisson,
    PhotonSource,
    no_count_exact,
    to_explicit,
)

# 한 번에 생성하는 최대 샘플 수 (메모리 제한)
CHUNK_SIZE = 1_000_000
SIGMA_LIMIT = 4.0
_SEED_MAX = 2**64


@dataclass(frozen=True)
class McConfig:
    """Monte-Carlo 실행 설정."""

    source: PhotonSource
    channel: ChannelParams
    trials: int = field(default_factory=lambda: settings.trials)
    seed: int = field(default_factory=lambda: settings.seed)

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise RateDomainError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < _SEED_MAX:
            raise RateDomainError(
                f"seed must be a 64-bit unsigned integer, got {self.seed}"
            )


@dataclass(frozen=True)
class NoCountEstimate:
    """경험적 무클릭 비율과 이항 표준오차."""

    eps_hat: float
    std_err: float


@dataclass(frozen=True)
class ValidationCase:
    name: str
    source: PhotonSource
    channel: ChannelParams


@dataclass(frozen=True)
class ValidationResult:
    case: ValidationCase
    eps_hat: float
    eps: float
    std_err: float

    @property
    def sigma(self) -> float:
        """σ 단위 거리. 표준오차가 0이면 일치 시 0, 불일치 시 inf."""
        diff = abs(self.eps_hat - self.eps)
        if self.std_err == 0:
            return 0.0 if diff <= 1e-12 else math.inf
        return diff / self.std_err

    @property
    def passed(self) -> bool:
        return self.sigma <= SIGMA_LIMIT


def make_rng(seed: int) -> np.random.Generator:
    """Philox 기반 Generator."""
    return np.random.Generator(np.random.Philox(seed))


def sample_photon_numbers(
    source: PhotonSource, rng: np.random.Generator, size: int
) -> np.ndarray:
    """CDF 역변환으로 광자수를 샘플링."""
    cdf = np.cumsum(to_explicit(source).probabilities)
    u = rng.random(size)
    n = np.searchsorted(cdf, u, side="right")
    return np.minimum(n, len(cdf) - 1)


def sample_clicks(
    source: PhotonSource,
    channel: ChannelParams,
    rng: np.random.Generator,
    size: int,
) -> np.ndarray:
    """size 개 펄스의 클릭 여부 (생존 광자 ≥ 1 또는 암계수)."""
    photons = sample_photon_numbers(source, rng, size)
    survivors = rng.binomial(photons, channel.eta)
    dark = rng.random(size) < channel.dark_prob
    return (survivors > 0) | dark


def sample_click(
    source: PhotonSource, channel: ChannelParams, rng: np.random.Generator
) -> tuple[bool, np.random.Generator]:
    """단일 펄스 클릭 샘플. 전진한 생성기를 함께 반환."""
    clicked = bool(sample_clicks(source, channel, rng, 1)[0])
    return clicked, rng


def no_click_probability(source: PhotonSource, channel: ChannelParams) -> float:
    """암계수를 포함한 해석적 무클릭 확률 ε(1−p_d)."""
    return no_count_exact(source, channel.eta) * (1.0 - channel.dark_prob)


def _count_no_clicks(
    source: PhotonSource, channel: ChannelParams, trials: int, seed: int
) -> int:
    rng = make_rng(seed)
    no_clicks = 0
    remaining = trials
    while remaining > 0:
        size = min(remaining, CHUNK_SIZE)
        no_clicks += int(
            np.count_nonzero(~sample_clicks(source, channel, rng, size))
        )
        remaining -= size
    return no_clicks


def estimate_no_count(
    config: McConfig, shards: int = 1, workers: int = 1
) -> NoCountEstimate:
    """
    무클릭 비율 ε̂ 와 표준오차 √(ε̂(1−ε̂)/trials).
    shard 별 시드는 seed XOR shard_index, 결과는 개수 합산으로 병합.
    """
    if shards < 1:
        raise RateDomainError(f"shards must be >= 1, got {shards}")
    shards = min(shards, config.trials)
    base, extra = divmod(config.trials, shards)
    sizes = [base + (1 if i < extra else 0) for i in range(shards)]
    seeds = [config.seed ^ i for i in range(shards)]
    args = (
        [config.source] * shards,
        [config.channel] * shards,
        sizes,
        seeds,
    )

    if workers > 1 and shards > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_no_clicks, *args))
    else:
        counts = list(map(_count_no_clicks, *args))

    eps_hat = sum(counts) / config.trials
    std_err = math.sqrt(eps_hat * (1.0 - eps_hat) / config.trials)
    return NoCountEstimate(eps_hat=eps_hat, std_err=std_err)


def default_cases() -> list[ValidationCase]:
    """
    Poisson·Fock 혼합 × η ∈ {0.25, 0.5, 1} × 암계수 유무, 12개 케이스.
    Fock 혼합은 평균 0.7 (진공 성분 포함)이라 η=1 에서도 ε=0.3 이다.
    """
    cases = []
    for source in (Poisson(0.4218), FockMixture(0.7)):
        for eta in (0.25, 0.5, 1.0):
            for dark in (0.0, 0.01):
                label = type(source).__name__
                cases.append(
                    ValidationCase(
                        name=f"{label}({source.mean}) eta={eta} dark={dark}",
                        source=source,
                        channel=ChannelParams(eta=eta, dark_prob=dark),
                    )
                )
    return cases


@log_execution_time(mc_logger)
def run_validation(
    cases: list[ValidationCase] | None = None,
    trials: int | None = None,
    seed: int | None = None,
    shards: int = 1,
    workers: int = 1,
) -> list[ValidationResult]:
    """각 케이스의 ε̂ 를 해석값과 비교."""
    cases = default_cases() if cases is None else cases
    results = []
    for case in cases:
        config = McConfig(
            source=case.source,
            channel=case.channel,
            trials=settings.trials if trials is None else trials,
            seed=settings.seed if seed is None else seed,
        )
        estimate = estimate_no_count(config, shards=shards, workers=workers)
        result = ValidationResult(
            case=case,
            eps_hat=estimate.eps_hat,
            eps=no_click_probability(case.source, case.channel),
            std_err=estimate.std_err,
        )
        mc_logger.info(
            "%s: eps_hat=%.6f eps=%.6f sigma=%.2f",
            case.name,
            result.eps_hat,
            result.eps,
            result.sigma,
        )
        results.append(result)
    return results


__all__ = [
    "McConfig",
    "NoCountEstimate",
    "ValidationCase",
    "ValidationResult",
    "make_rng",
    "sample_photon_numbers",
    "sample_clicks",
    "sample_click",
    "no_click_probability",
    "estimate_no_count",
    "default_cases",
    "run_validation",
]
