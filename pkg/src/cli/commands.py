"""
CLI 서브커맨드 구현.
종료 코드: 0 성공, 1 계산/입출력 오류, 2 사용법 오류.
"""

import csv
import dataclasses
import functools
import logging
import sys
from typing import Sequence, TextIO

from src.cli.parser import build_parser
from src.cli.plot import plot_pie_curve
from src.cli.sweep import (
    OptimizeRow,
    PieCurveRow,
    RatioMapRow,
    format_value,
    pie_curve_row,
    ratio_map_row,
    run_rows,
    write_rows,
)
from src.core.config import GridSpec, SweepSpec
from src.core.errors import ConfigError, RateDomainError, RateError
from src.core.logger import log_execution_time, set_level, sweep_logger
from src.core.settings import settings
from src.optics.info_theory import capacity_pie
from src.optics.montecarlo import run_validation
from src.optics.optimize import OptimizeProblem, optimize_rate
from src.optics.photon_stats import ChannelParams

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@log_execution_time(sweep_logger)
def cmd_pie_curve(
    spec: SweepSpec, workers: int = 1, stream: TextIO | None = None
) -> list[PieCurveRow]:
    """ηn̄ 격자의 PIE 곡선(해석식, PPM, OOK, 암계수 OOK, 용량 한계)."""
    row_func = functools.partial(pie_curve_row, dark=spec.dark)
    rows = run_rows(row_func, spec.eta_nbar.values().tolist(), workers)
    write_rows(rows, PieCurveRow, out=spec.out, stream=stream)
    if spec.plot is not None:
        plot_pie_curve(rows, spec.plot)
    return rows


@log_execution_time(sweep_logger)
def cmd_ratio_map(
    spec: SweepSpec, workers: int = 1, stream: TextIO | None = None
) -> list[RatioMapRow]:
    """(η, n̄) 격자의 Fock 혼합 대 Poisson 향상 비율."""
    points = [
        (eta, nbar)
        for eta in spec.eta.values().tolist()
        for nbar in spec.nbar.values().tolist()
    ]
    rows = run_rows(ratio_map_row, points, workers)
    write_rows(rows, RatioMapRow, out=spec.out, stream=stream)
    return rows


def cmd_optimize(
    problem: OptimizeProblem, fmt: str = "text", stream: TextIO | None = None
) -> OptimizeRow:
    """단일 점 최적화 결과를 text 또는 CSV 한 행으로 출력."""
    stream = stream or sys.stdout
    result = optimize_rate(problem)
    row = OptimizeRow(
        scheme=problem.scheme,
        family=problem.source_family,
        nbar=problem.nbar,
        eta=problem.channel.eta,
        dark_prob=problem.channel.dark_prob,
        mi_per_bin=result.mi_per_bin,
        pie=result.pie,
        opt_mu=result.opt_mu,
        opt_inv_p=result.opt_inv_p,
        capacity_pie=(
            capacity_pie(problem.eta_nbar) if problem.eta_nbar > 0 else float("inf")
        ),
    )
    if fmt == "csv":
        write_rows([row], OptimizeRow, stream=stream)
    else:
        width = max(len(name) for name in OptimizeRow.header())
        for name, cell in zip(OptimizeRow.header(), row.cells()):
            print(f"{name:<{width}} : {cell}", file=stream)
    return row


def cmd_validate(
    trials: int | None = None,
    seed: int | None = None,
    shards: int = 1,
    workers: int = 1,
    fmt: str = "text",
    stream: TextIO | None = None,
) -> int:
    """Monte-Carlo 검증 스위트. 모든 케이스 통과 시 0."""
    stream = stream or sys.stdout
    results = run_validation(
        trials=trials, seed=seed, shards=shards, workers=workers
    )
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["case", "eps_hat", "eps", "std_err", "sigma", "passed"])
        for r in results:
            cells = [r.eps_hat, r.eps, r.std_err, r.sigma, r.passed]
            writer.writerow([r.case.name] + [format_value(c) for c in cells])
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{status} {r.case.name:<36} eps_hat={r.eps_hat:.6f} "
                f"eps={r.eps:.6f} sigma={r.sigma:.2f}",
                file=stream,
            )
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} passed", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def _override_grid(
    grid: GridSpec,
    start: float | None,
    stop: float | None,
    points: int | None,
) -> GridSpec:
    changes = {
        key: value
        for key, value in (("start", start), ("stop", stop), ("points", points))
        if value is not None
    }
    return dataclasses.replace(grid, **changes) if changes else grid


def _sweep_spec(args) -> SweepSpec:
    spec = SweepSpec.from_file(args.config) if args.config else SweepSpec()
    if args.command == "pie-curve":
        spec.eta_nbar = _override_grid(
            spec.eta_nbar, args.eta_nbar_min, args.eta_nbar_max, args.eta_nbar_points
        )
        spec.plot = args.plot or spec.plot
        spec.dark = args.dark or spec.dark
    else:
        spec.eta = _override_grid(
            spec.eta, args.eta_min, args.eta_max, args.eta_points
        )
        spec.nbar = _override_grid(
            spec.nbar, args.nbar_min, args.nbar_max, args.nbar_points
        )
    spec.out = args.out or spec.out
    return spec


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        set_level(logging.DEBUG)
    elif args.quiet:
        set_level(logging.WARNING)
    else:
        set_level(settings.log_level)

    try:
        match args.command:
            case "pie-curve":
                cmd_pie_curve(_sweep_spec(args), workers=args.workers)
            case "ratio-map":
                cmd_ratio_map(_sweep_spec(args), workers=args.workers)
            case "optimize":
                try:
                    nbar_eta = args.nbar * args.eta
                    problem = OptimizeProblem(
                        scheme=args.scheme,
                        source_family=args.family,
                        nbar=args.nbar,
                        channel=ChannelParams(
                            eta=args.eta, dark_prob=args.dark.dark_prob(nbar_eta)
                        ),
                    )
                except RateDomainError as e:
                    parser.error(str(e))
                cmd_optimize(problem, fmt=args.format)
            case "validate":
                return cmd_validate(
                    trials=args.trials,
                    seed=args.seed,
                    shards=args.shards,
                    workers=args.workers,
                    fmt=args.format,
                )
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RateError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


__all__ = [
    "cmd_pie_curve",
    "cmd_ratio_map",
    "cmd_optimize",
    "cmd_validate",
    "main",
]
