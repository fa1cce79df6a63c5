"""MCP server exposing single-point rate queries as tools."""

import asyncio

from mcp.server.fastmcp import FastMCP

from src.core.logger import get_logger, log_execution_time
from src.optics.analytic import (
    AnalyticPoint,
    mu_opt_nonclassical,
    pie_Pi,
    ppm_mi_classical_opt,
    ppm_mi_nonclassical_opt,
)
from src.optics.info_theory import Scheme, capacity_pie
from src.optics.optimize import OptimizeProblem, SourceFamily, optimize_rate
from src.optics.photon_stats import ChannelParams

server_logger = get_logger("rate_server")

mcp = FastMCP("ook-rates")


@mcp.tool()
@log_execution_time(server_logger)
async def optimize_point(
    scheme: str, family: str, nbar: float, eta: float, dark_prob: float = 0.0
) -> dict[str, float]:
    """Maximize mutual information over the pulse mean photon number."""
    problem = OptimizeProblem(
        scheme=Scheme(scheme.lower()),
        source_family=SourceFamily(family.lower()),
        nbar=nbar,
        channel=ChannelParams(eta=eta, dark_prob=dark_prob),
    )
    result = await asyncio.to_thread(optimize_rate, problem)
    return {
        "mi_per_bin": result.mi_per_bin,
        "pie": result.pie,
        "opt_mu": result.opt_mu,
        "opt_inv_p": result.opt_inv_p,
    }


@mcp.tool()
def pie_analytic(eta_nbar: float, g2: float = 1.0) -> dict[str, float | bool]:
    """Approximate PPM photon information efficiency for a classical source."""
    if g2 == 1.0:
        pie = pie_Pi(eta_nbar)
        return {"pie": pie.value, "valid": pie.valid}
    opt = ppm_mi_classical_opt(AnalyticPoint(nbar=eta_nbar, eta=1.0, g2=g2))
    return {"pie": opt.value / eta_nbar, "valid": opt.valid}


@mcp.tool()
def capacity_limit(eta_nbar: float) -> float:
    """Single-mode bosonic channel capacity in bits per detected photon."""
    return capacity_pie(eta_nbar)


@mcp.tool()
def nonclassical_optimum(nbar: float, eta: float) -> dict[str, float | str]:
    """Closed-form PPM optimum over adjacent Fock-state mixtures."""
    opt = ppm_mi_nonclassical_opt(nbar, eta)
    return {
        "mi_per_bin": opt.value,
        "branch": opt.branch.value,
        "opt_mu": mu_opt_nonclassical(nbar, eta),
    }


if __name__ == "__main__":
    mcp.run("sse")
