"""테스트 공통 fixtures."""

import pytest

from src.optics.photon_stats import Explicit, FockMixture, Poisson

# n̄ = 0.01, η = 1, g² = 1 에서의 μ^clas
MU_CLAS_REF = 0.4218


@pytest.fixture
def sources() -> list:
    """무검출 확률 성질 검사용 대표 광원"""
    return [
        Poisson(0.3),
        Poisson(2.0),
        FockMixture(0.25),
        FockMixture(1.5),
        FockMixture(3.0),
        Explicit((0.5, 0.0, 0.5)),
        Explicit((0.1, 0.2, 0.3, 0.4)),
    ]
