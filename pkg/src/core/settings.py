"""
애플리케이션 설정 모듈.
pydantic-settings를 사용하여 환경변수(OOK_ 접두사)에서 기본값을 로드.
CLI 플래그가 항상 우선한다.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """애플리케이션 설정."""

    model_config = SettingsConfigDict(
        env_prefix="OOK_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Monte-Carlo
    seed: int = Field(default=0xC0FFEE, ge=0, description="기본 난수 시드")
    trials: int = Field(
        default=1_000_000, ge=1, description="검증 케이스당 시행 횟수"
    )

    # 최적화
    optimize_tol: float = Field(
        default=1e-9, gt=0, description="μ 상대 허용오차"
    )
    prescan_points: int = Field(
        default=64, ge=64, description="로그 간격 사전 탐색 최소 점 수"
    )
    fock_points_per_unit: int = Field(
        default=8, ge=8, description="Fock 혼합의 단위 μ당 사전 탐색 점 수"
    )
    fock_dense_limit: float = Field(
        default=100.0,
        gt=1.0,
        description="단위 μ당 밀도를 적용하는 μ 상한",
    )

    # sweep
    workers: int = Field(default=1, ge=1, description="sweep 프로세스 수")

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="INFO", description="로그 레벨"
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper_log_level(cls, value: object) -> object:
        return value.upper() if isinstance(value, str) else value


@lru_cache
def get_settings() -> Settings:
    """설정 싱글톤 반환."""
    return Settings()


# 편의를 위한 전역 인스턴스
settings = get_settings()

__all__ = ["Settings", "get_settings", "settings"]
