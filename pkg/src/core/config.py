"""
Sweep 설정 스키마 모듈.
그림 재현용 격자(ηn̄, η, n̄)와 출력 경로를 정의하고 dict/JSON/파일에서 로드.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from src.core.errors import ConfigError
from src.core.logger import sweep_logger


class Spacing(str, Enum):
    """격자 간격 타입"""

    LOG = "log"
    LINEAR = "linear"


class DarkRule(str, Enum):
    """암계수 규칙 (quarter = bin당 0.25ηn̄)"""

    NONE = "none"
    QUARTER = "quarter"

    def dark_prob(self, eta_nbar: float) -> float:
        if self == DarkRule.QUARTER:
            return 0.25 * eta_nbar
        return 0.0


@dataclass
class GridSpec:
    """단일 변수 격자"""

    start: float
    stop: float
    points: int
    spacing: Spacing = Spacing.LOG

    def __post_init__(self) -> None:
        if not 0 < self.start < self.stop:
            raise ConfigError(
                f"grid endpoints must be positive and ordered, "
                f"got [{self.start}, {self.stop}]"
            )
        if self.points < 2:
            raise ConfigError(f"grid needs >= 2 points, got {self.points}")

    def values(self) -> np.ndarray:
        if self.spacing == Spacing.LINEAR:
            return np.linspace(self.start, self.stop, self.points)
        return np.geomspace(self.start, self.stop, self.points)

    @classmethod
    def from_dict(cls, name: str, data: dict[str, Any]) -> "GridSpec":
        """딕셔너리에서 격자 로드"""
        spacing_str = str(data.get("spacing", "log")).lower()
        try:
            spacing = Spacing(spacing_str)
        except ValueError:
            sweep_logger.warning(
                "Unknown spacing '%s' for %s, falling back to 'log'",
                spacing_str,
                name,
            )
            spacing = Spacing.LOG
        try:
            return cls(
                start=float(data["start"]),
                stop=float(data["stop"]),
                points=int(data["points"]),
                spacing=spacing,
            )
        except KeyError as e:
            raise ConfigError(f"grid '{name}' is missing {e}") from e


def default_eta_nbar_grid() -> GridSpec:
    return GridSpec(start=1e-4, stop=1e-1, points=61)


def default_eta_grid() -> GridSpec:
    return GridSpec(start=0.01, stop=1.0, points=50)


def default_nbar_grid() -> GridSpec:
    return GridSpec(start=1e-3, stop=0.2, points=50)


@dataclass
class SweepSpec:
    """그림 재현 sweep 전체 설정"""

    eta_nbar: GridSpec = field(default_factory=default_eta_nbar_grid)
    eta: GridSpec = field(default_factory=default_eta_grid)
    nbar: GridSpec = field(default_factory=default_nbar_grid)
    dark: DarkRule = DarkRule.QUARTER
    out: Path | None = None
    plot: Path | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SweepSpec":
        """딕셔너리에서 설정 로드"""
        sweep = data.get("sweep", {})
        spec = cls()
        for name in ("eta_nbar", "eta", "nbar"):
            if name in sweep:
                setattr(spec, name, GridSpec.from_dict(name, sweep[name]))
                sweep_logger.debug("Loaded grid %s: %s", name, getattr(spec, name))
        if "dark" in sweep:
            try:
                spec.dark = DarkRule(str(sweep["dark"]).lower())
            except ValueError as e:
                raise ConfigError(f"unknown dark rule {sweep['dark']!r}") from e
        if out := sweep.get("out"):
            spec.out = Path(out)
        if plot := sweep.get("plot"):
            spec.plot = Path(plot)
        return spec

    @classmethod
    def from_json(cls, json_str: str) -> "SweepSpec":
        """JSON 문자열에서 설정 로드"""
        try:
            data = json.loads(json_str)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid sweep JSON: {e}") from e
        return cls.from_dict(data)

    @classmethod
    def from_file(cls, file_path: str | Path) -> "SweepSpec":
        """JSON 파일에서 설정 로드"""
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {file_path}")

        spec = cls.from_json(path.read_text(encoding="utf-8"))
        sweep_logger.info("Loaded sweep config from file: %s", file_path)
        return spec


__all__ = [
    "Spacing",
    "DarkRule",
    "GridSpec",
    "SweepSpec",
]
