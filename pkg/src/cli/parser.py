"""CLI 인자 파서."""

import argparse
from pathlib import Path

from src.core.config import DarkRule
from src.core.settings import settings
from src.optics.info_theory import Scheme
from src.optics.optimize import SourceFamily


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return number


def _seed(value: str) -> int:
    number = int(value, 0)
    if not 0 <= number < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {value}")
    return number


def _add_grid(
    parser: argparse.ArgumentParser, flag: str, label: str
) -> None:
    parser.add_argument(f"--{flag}-min", type=float, help=f"{label} 격자 시작")
    parser.add_argument(f"--{flag}-max", type=float, help=f"{label} 격자 끝")
    parser.add_argument(
        f"--{flag}-points", type=_positive_int, help=f"{label} 격자 점 수"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ook-rates",
        description="OOK/PPM 직접검출 전송률 계산 및 그림 데이터 재현",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    parser.add_argument(
        "--workers",
        type=_positive_int,
        default=settings.workers,
        help="sweep 병렬 프로세스 수",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pie = sub.add_parser("pie-curve", help="ηn̄ 에 대한 PIE 곡선 CSV")
    _add_grid(pie, "eta-nbar", "ηn̄")
    pie.add_argument("--config", type=Path, help="JSON sweep 설정 파일")
    pie.add_argument("--out", type=Path, help="CSV 출력 경로 (기본 stdout)")
    pie.add_argument("--plot", type=Path, help="SVG 그래프 출력 경로")
    pie.add_argument(
        "--dark",
        type=DarkRule,
        choices=list(DarkRule),
        metavar="{none,quarter}",
        help="pie_ook_dark 열의 암계수 규칙 (기본 quarter)",
    )

    ratio = sub.add_parser("ratio-map", help="(η, n̄) 비고전 향상 비율 CSV")
    _add_grid(ratio, "eta", "η")
    _add_grid(ratio, "nbar", "n̄")
    ratio.add_argument("--config", type=Path, help="JSON sweep 설정 파일")
    ratio.add_argument("--out", type=Path, help="CSV 출력 경로 (기본 stdout)")

    opt = sub.add_parser("optimize", help="단일 점 최적화")
    opt.add_argument(
        "--scheme",
        type=Scheme,
        choices=list(Scheme),
        default=Scheme.PPM,
        metavar="{ook,ppm}",
    )
    opt.add_argument(
        "--family",
        type=SourceFamily,
        choices=list(SourceFamily),
        default=SourceFamily.POISSON,
        metavar="{poisson,fock}",
    )
    opt.add_argument("--nbar", type=float, required=True)
    opt.add_argument("--eta", type=float, required=True)
    opt.add_argument(
        "--dark",
        type=DarkRule,
        choices=list(DarkRule),
        default=DarkRule.NONE,
        metavar="{none,quarter}",
    )
    opt.add_argument("--format", choices=("csv", "text"), default="text")

    val = sub.add_parser("validate", help="Monte-Carlo 검증")
    val.add_argument("--seed", type=_seed, default=settings.seed)
    val.add_argument("--trials", type=_positive_int, default=settings.trials)
    val.add_argument("--shards", type=_positive_int, default=1)
    val.add_argument("--format", choices=("csv", "text"), default="text")

    return parser


__all__ = ["build_parser"]
