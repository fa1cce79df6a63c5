"""
Sweep 행(row) 레코드, 병렬 평가, CSV 출력.
행은 프로세스 풀에서 계산하되 출력은 격자 순서대로 단일 스레드로 기록.
"""

import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO, TypeVar

from src.core.config import DarkRule
from src.core.logger import sweep_logger
from src.optics.analytic import AnalyticPoint, mu_opt_classical, pie_Pi
from src.optics.info_theory import Scheme, capacity_pie
from src.optics.optimize import (
    OptimizeProblem,
    SourceFamily,
    enhancement_ratio,
    optimize_rate,
)
from src.optics.photon_stats import APPROX_ETA_MU_LIMIT, ChannelParams

T = TypeVar("T")
R = TypeVar("R")


def format_value(value: object) -> str:
    """CSV 셀 포맷: float 은 최단 왕복 표현, bool 은 true/false."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


class CsvRow:
    """dataclass 행의 CSV 직렬화 믹스인"""

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def cells(self) -> list[str]:
        return [format_value(v) for v in astuple(self)]


@dataclass(frozen=True)
class PieCurveRow(CsvRow):
    eta_nbar: float
    pie_analytic_Pi: float
    pie_ppm_poisson: float
    pie_ook_poisson: float
    pie_ook_dark: float
    capacity_pie: float
    inv_p_analytic: float
    inv_p_ppm: float
    inv_p_ook: float
    analytic_valid: bool


@dataclass(frozen=True)
class RatioMapRow(CsvRow):
    eta: float
    nbar: float
    ratio_ppm: float
    ratio_ook: float
    fock_mu_opt_ppm: float
    fock_mu_opt_ook: float
    single_photon_optimal_ppm: bool
    single_photon_optimal_ook: bool


@dataclass(frozen=True)
class OptimizeRow(CsvRow):
    scheme: Scheme
    family: SourceFamily
    nbar: float
    eta: float
    dark_prob: float
    mi_per_bin: float
    pie: float
    opt_mu: float
    opt_inv_p: float
    capacity_pie: float


def pie_curve_row(
    eta_nbar: float, dark: DarkRule = DarkRule.QUARTER
) -> PieCurveRow:
    """
    ηn̄ 한 점의 PIE 곡선 행.
    Poisson 결과는 ηn̄ 에만 의존하므로 η = 1, n̄ = ηn̄ 으로 계산한다.
    """
    eta_nbar = float(eta_nbar)
    channel = ChannelParams(eta=1.0)
    dark_channel = ChannelParams(eta=1.0, dark_prob=dark.dark_prob(eta_nbar))

    pie = pie_Pi(eta_nbar)
    mu_clas = mu_opt_classical(AnalyticPoint(nbar=eta_nbar, eta=1.0))
    ppm = optimize_rate(
        OptimizeProblem(Scheme.PPM, SourceFamily.POISSON, eta_nbar, channel)
    )
    ook = optimize_rate(
        OptimizeProblem(Scheme.OOK, SourceFamily.POISSON, eta_nbar, channel)
    )
    ook_dark = optimize_rate(
        OptimizeProblem(Scheme.OOK, SourceFamily.POISSON, eta_nbar, dark_channel)
    )
    return PieCurveRow(
        eta_nbar=eta_nbar,
        pie_analytic_Pi=pie.value,
        pie_ppm_poisson=ppm.pie,
        pie_ook_poisson=ook.pie,
        pie_ook_dark=ook_dark.pie,
        capacity_pie=capacity_pie(eta_nbar),
        inv_p_analytic=mu_clas.value / eta_nbar,
        inv_p_ppm=ppm.opt_inv_p,
        inv_p_ook=ook.opt_inv_p,
        analytic_valid=(
            pie.valid
            and mu_clas.valid
            and mu_clas.value < APPROX_ETA_MU_LIMIT
        ),
    )


def ratio_map_row(point: tuple[float, float]) -> RatioMapRow:
    """(η, n̄) 한 점의 비고전 향상 비율 행."""
    eta, nbar = float(point[0]), float(point[1])
    ppm = enhancement_ratio(Scheme.PPM, nbar, eta)
    ook = enhancement_ratio(Scheme.OOK, nbar, eta)
    return RatioMapRow(
        eta=eta,
        nbar=nbar,
        ratio_ppm=ppm.ratio,
        ratio_ook=ook.ratio,
        fock_mu_opt_ppm=ppm.fock_mu_opt,
        fock_mu_opt_ook=ook.fock_mu_opt,
        single_photon_optimal_ppm=ppm.single_photon_optimal,
        single_photon_optimal_ook=ook.single_photon_optimal,
    )


def run_rows(
    func: Callable[[T], R], items: Sequence[T], workers: int = 1
) -> list[R]:
    """items 를 순서대로 평가. workers > 1 이면 프로세스 풀 사용."""
    sweep_logger.info(
        "Evaluating %d row(s) with %d worker(s)", len(items), workers
    )
    if workers > 1 and len(items) > 1:
        chunksize = max(1, len(items) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items, chunksize=chunksize))
    return [func(item) for item in items]


def write_rows(
    rows: Iterable[CsvRow],
    row_type: type[CsvRow],
    out: Path | None = None,
    stream: TextIO | None = None,
) -> None:
    """헤더 + 행을 CSV(UTF-8, LF)로 기록. out 이 없으면 stream(기본 stdout)."""
    if out is None:
        _write(csv.writer(stream or sys.stdout, lineterminator="\n"), rows, row_type)
        return
    with open(out, "w", encoding="utf-8", newline="") as f:
        _write(csv.writer(f, lineterminator="\n"), rows, row_type)
    sweep_logger.info("Wrote %s", out)


def _write(writer, rows: Iterable[CsvRow], row_type: type[CsvRow]) -> None:
    writer.writerow(row_type.header())
    for row in rows:
        writer.writerow(row.cells())


__all__ = [
    "format_value",
    "CsvRow",
    "PieCurveRow",
    "RatioMapRow",
    "OptimizeRow",
    "pie_curve_row",
    "ratio_map_row",
    "run_rows",
    "write_rows",
]
