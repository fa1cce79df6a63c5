"""PIE 곡선의 SVG 선 그래프 (log-x)."""

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from src.cli.sweep import PieCurveRow  # noqa: E402
from src.core.logger import sweep_logger  # noqa: E402


def plot_pie_curve(rows: Sequence[PieCurveRow], path: Path) -> None:
    """왼쪽 축: PIE 곡선과 용량 한계, 오른쪽 축: 최적 1/p."""
    x = [r.eta_nbar for r in rows]
    capacity = [r.capacity_pie for r in rows]

    fig, ax = plt.subplots(figsize=(7.0, 4.8))
    ax.fill_between(x, capacity, max(capacity) * 1.1, color="0.85", lw=0)
    ax.plot(x, [r.pie_analytic_Pi for r in rows], "r-", label="Π (analytic)")
    ax.plot(x, [r.pie_ppm_poisson for r in rows], "k-", label="PPM")
    ax.plot(x, [r.pie_ook_poisson for r in rows], "b-", label="OOK")
    ax.plot(x, [r.pie_ook_dark for r in rows], "b:", label="OOK, dark counts")
    ax.set_xscale("log")
    ax.set_xlabel("ηn̄")
    ax.set_ylabel("PIE [bits/photon]")
    ax.legend(loc="upper right")

    ax2 = ax.twinx()
    ax2.plot(x, [r.inv_p_analytic for r in rows], "r--")
    ax2.plot(x, [r.inv_p_ppm for r in rows], "k--")
    ax2.plot(x, [r.inv_p_ook for r in rows], "b--")
    ax2.set_yscale("log")
    ax2.set_ylabel("optimal 1/p")

    fig.tight_layout()
    with plt.rc_context({"svg.hashsalt": "pie-curve"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    sweep_logger.info("Wrote plot %s", path)


__all__ = ["plot_pie_curve"]
