"""
예외 계층 모듈.
CLI는 ConfigError를 사용법 오류(종료 코드 2)로, 나머지 RateError를 계산 오류(1)로 매핑.
"""


class RateError(Exception):
    """전송률 계산 관련 오류의 기본 클래스."""


class RateDomainError(RateError, ValueError):
    """입력이 함수의 정의역을 벗어난 경우."""


class OptimizationError(RateError, RuntimeError):
    """수치 최적화 실패 (비유한 목적함수, 단봉성 검사 실패)."""


class ConfigError(RateError, ValueError):
    """잘못된 sweep/grid 설정."""


__all__ = ["RateError", "RateDomainError", "OptimizationError", "ConfigError"]
