"""수치 최적화 및 향상 비율 테스트 모듈."""

import math

import numpy as np
import pytest

from src.core.errors import OptimizationError, RateDomainError
from src.optics.analytic import (
    AnalyticPoint,
    ppm_mi_classical_opt,
    ppm_mi_nonclassical_opt,
)
from src.optics.info_theory import Scheme
from src.optics.optimize import (
    OptimizeProblem,
    SourceFamily,
    default_mu_bounds,
    enhancement_ratio,
    maximize_scalar,
    optimize_rate,
    prescan_grid,
    rate_at,
)
from src.optics.photon_stats import ChannelParams

from .conftest import MU_CLAS_REF


def _problem(scheme, family, nbar, eta, dark_prob=0.0, **kwargs):
    return OptimizeProblem(
        scheme=scheme,
        source_family=family,
        nbar=nbar,
        channel=ChannelParams(eta=eta, dark_prob=dark_prob),
        **kwargs,
    )


class TestOptimizeProblem:
    """최적화 문제 검증 테스트"""

    def test_default_bounds(self):
        """기본 구간 [max(2n̄, 1e−6), max(50, 100·μ^clas)]"""
        lo, hi = default_mu_bounds(0.01, 1.0)
        assert lo == pytest.approx(0.02)
        assert hi == 50.0

        lo, hi = default_mu_bounds(0.001, 0.001)
        assert hi > 1000.0

    def test_bounds_applied(self):
        """mu_bounds 미지정 시 기본 구간 사용"""
        problem = _problem(Scheme.PPM, SourceFamily.POISSON, 0.01, 1.0)
        assert problem.mu_bounds == default_mu_bounds(0.01, 1.0)

    def test_invalid_bounds(self):
        """n̄ < low < high 가 아니면 RateDomainError"""
        with pytest.raises(RateDomainError):
            _problem(
                Scheme.PPM, SourceFamily.POISSON, 0.1, 1.0, mu_bounds=(0.05, 10.0)
            )

    def test_nonpositive_nbar(self):
        """n̄ ≤ 0 은 RateDomainError"""
        with pytest.raises(RateDomainError):
            _problem(Scheme.PPM, SourceFamily.POISSON, 0.0, 1.0)

    def test_rate_at_out_of_bounds(self):
        """구간 밖 μ 는 RateDomainError"""
        problem = _problem(Scheme.PPM, SourceFamily.POISSON, 0.01, 1.0)
        with pytest.raises(RateDomainError):
            rate_at(problem, 0.001)


class TestRateAt:
    """단일 μ 상호정보량 테스트"""

    def test_ppm_poisson(self):
        """PPM Poisson: p(1−e^(−ημ))log₂(1/p), p = n̄/μ"""
        problem = _problem(Scheme.PPM, SourceFamily.POISSON, 0.01, 1.0)
        mu = MU_CLAS_REF
        p = 0.01 / mu
        assert rate_at(problem, mu) == pytest.approx(
            p * (1 - math.exp(-mu)) * math.log2(1 / p)
        )

    def test_ppm_single_photon(self):
        """단일광자, η = 1: n̄ log₂(1/n̄)"""
        problem = _problem(Scheme.PPM, SourceFamily.FOCK, 0.01, 1.0)
        assert rate_at(problem, 1.0) == pytest.approx(0.01 * math.log2(100))

    def test_vectorized(self):
        """배열 μ 입력은 원소별 평가와 같다"""
        problem = _problem(Scheme.OOK, SourceFamily.FOCK, 0.05, 0.6, 0.001)
        mus = np.array([0.2, 1.0, 2.5, 7.0])
        values = rate_at(problem, mus)
        assert values == pytest.approx([rate_at(problem, m) for m in mus])


class TestMaximizeScalar:
    """1차원 최대화 테스트"""

    def test_interior_maximum(self):
        """내부 최댓점을 허용오차 안에서 찾는다"""
        x, fx = maximize_scalar(lambda t: -((np.log(t) - 1.0) ** 2), 0.1, 100.0, 1e-10)
        assert x == pytest.approx(math.e, rel=1e-6)
        assert fx == pytest.approx(0.0, abs=1e-12)

    def test_edge_maximum(self):
        """단조 증가 함수는 상단 끝점 반환"""
        x, fx = maximize_scalar(lambda t: np.asarray(t) * 2.0, 1.0, 5.0, 1e-9)
        assert x == 5.0
        assert fx == 10.0

    def test_flat_maximum_picks_smaller(self):
        """동률 최댓값은 작은 x 를 반환"""
        grid = np.array([1.0, 2.0, 3.0, 4.0])
        x, _ = maximize_scalar(
            lambda t: np.minimum(np.asarray(t), 2.0), 1.0, 4.0, 1e-9, grid=grid
        )
        assert x == 2.0

    def test_nonfinite_objective(self):
        """유한하지 않은 값은 OptimizationError"""
        with pytest.raises(OptimizationError, match="not finite"):
            maximize_scalar(
                lambda t: np.where(np.asarray(t) > 2.0, np.nan, 1.0), 1.0, 4.0, 1e-9
            )

    def test_empty_interval(self):
        """lo ≥ hi 는 RateDomainError"""
        with pytest.raises(RateDomainError):
            maximize_scalar(lambda t: t, 2.0, 1.0, 1e-9)


class TestOptimizeRate:
    """μ 최적화 결과 테스트"""

    def test_poisson_near_analytic(self):
        """n̄ = 0.01, η = 1 Poisson PPM 최적값은 해석식과 5% 이내"""
        result = optimize_rate(_problem(Scheme.PPM, SourceFamily.POISSON, 0.01, 1.0))
        analytic = ppm_mi_classical_opt(AnalyticPoint(nbar=0.01, eta=1.0)).value
        assert result.mi_per_bin == pytest.approx(analytic, rel=0.05)
        assert result.mi_per_bin >= analytic
        assert result.opt_inv_p == pytest.approx(result.opt_mu / 0.01)
        assert result.pie == pytest.approx(result.mi_per_bin / 0.01)

    def test_refinement_is_stationary(self):
        """정밀화된 최적점 주변에서 값이 더 크지 않다"""
        problem = _problem(Scheme.OOK, SourceFamily.POISSON, 0.02, 0.7)
        result = optimize_rate(problem)
        for factor in (0.999, 1.001):
            assert rate_at(problem, factor * result.opt_mu) <= result.mi_per_bin

    def test_single_photon_optimal(self):
        """n̄ = 0.01, η = 0.5 Fock PPM 최적은 μ = 1"""
        result = optimize_rate(_problem(Scheme.PPM, SourceFamily.FOCK, 0.01, 0.5))
        assert result.opt_mu == pytest.approx(1.0, abs=1e-6)
        assert result.opt_inv_p == pytest.approx(100.0, rel=1e-6)
        assert result.mi_per_bin == pytest.approx(0.5 * 0.01 * math.log2(100))

    def test_fock_matches_closed_form(self):
        """n̄ = 0.01, η = 0.8 Fock PPM 은 단일광자 닫힌 형태와 일치"""
        result = optimize_rate(_problem(Scheme.PPM, SourceFamily.FOCK, 0.01, 0.8))
        assert result.mi_per_bin == pytest.approx(
            ppm_mi_nonclassical_opt(0.01, 0.8).value, rel=0.025
        )

    def test_ook_beats_ppm(self):
        """같은 조건에서 OOK 최적값 ≥ PPM 최적값"""
        for nbar in (0.001, 0.01, 0.1):
            ook = optimize_rate(_problem(Scheme.OOK, SourceFamily.POISSON, nbar, 1.0))
            ppm = optimize_rate(_problem(Scheme.PPM, SourceFamily.POISSON, nbar, 1.0))
            assert ook.pie >= ppm.pie - 1e-9

    @pytest.mark.parametrize("scheme", [Scheme.PPM, Scheme.OOK])
    def test_poisson_pie_depends_on_eta_nbar_only(self, scheme):
        """암계수가 없으면 Poisson PIE 는 ηn̄ 에만 의존 (최적 μ 는 1/η 배)"""
        # Arrange
        lossy = _problem(scheme, SourceFamily.POISSON, 0.02, 0.5)
        lossless = _problem(scheme, SourceFamily.POISSON, 0.01, 1.0)

        # Act
        lossy_result = optimize_rate(lossy)
        lossless_result = optimize_rate(lossless)

        # Assert
        assert lossy_result.pie == pytest.approx(lossless_result.pie, rel=1e-8)
        assert lossy_result.opt_mu == pytest.approx(
            2 * lossless_result.opt_mu, rel=1e-6
        )

    def test_dark_counts_lower_rate(self):
        """암계수가 있으면 OOK 최적값이 낮아진다"""
        clean = optimize_rate(_problem(Scheme.OOK, SourceFamily.POISSON, 0.01, 1.0))
        dark = optimize_rate(
            _problem(Scheme.OOK, SourceFamily.POISSON, 0.01, 1.0, dark_prob=0.0025)
        )
        assert 0.0 < dark.mi_per_bin < clean.mi_per_bin

    def test_zero_transmission(self):
        """η = 0 이면 정보 없음, PIE 는 0"""
        result = optimize_rate(_problem(Scheme.PPM, SourceFamily.POISSON, 0.01, 0.0))
        assert result.mi_per_bin == 0.0
        assert result.pie == 0.0

    def test_fock_prescan_includes_integers(self):
        """Fock 사전 탐색 격자는 정수 μ 를 포함"""
        grid = prescan_grid(_problem(Scheme.PPM, SourceFamily.FOCK, 0.01, 0.5))
        for k in (1.0, 2.0, 10.0, 50.0):
            assert k in grid
        assert len(grid) >= 64


class TestEnhancementRatio:
    """Fock 혼합 대 Poisson 향상 비율 테스트"""

    @pytest.mark.parametrize("scheme", [Scheme.PPM, Scheme.OOK])
    def test_at_least_one(self, scheme):
        """비율은 항상 1 이상"""
        for nbar in (0.005, 0.05, 0.2):
            for eta in (0.1, 0.5, 1.0):
                assert enhancement_ratio(scheme, nbar, eta).ratio >= 1.0 - 1e-9

    def test_single_photon_flag(self):
        """낮은 n̄·높은 η 에서 단일광자 최적 플래그"""
        enhancement = enhancement_ratio(Scheme.PPM, 0.01, 1.0)
        assert enhancement.single_photon_optimal
        assert enhancement.ratio == pytest.approx(1.49, abs=0.02)

    def test_near_analytic_ratio(self):
        """수치 비율이 해석적 비율과 5% 이내"""
        from src.optics.analytic import enhancement_ratio_analytic

        enhancement = enhancement_ratio(Scheme.PPM, 0.01, 1.0)
        assert enhancement.ratio == pytest.approx(
            enhancement_ratio_analytic(0.01, 1.0), rel=0.05
        )

    def test_ook_ratio_not_below_ppm(self):
        """η = 0.8, n̄ = 0.05 에서 OOK 비율 ≥ PPM 비율 − 1e−3"""
        ppm = enhancement_ratio(Scheme.PPM, 0.05, 0.8)
        ook = enhancement_ratio(Scheme.OOK, 0.05, 0.8)
        assert ook.ratio >= ppm.ratio - 1e-3

    def test_degenerate_baseline(self):
        """η = 0 이면 기준값이 0 이므로 RateDomainError"""
        with pytest.raises(RateDomainError, match="degenerate baseline"):
            enhancement_ratio(Scheme.PPM, 0.01, 0.0)
