"""Figure-data bundles: one CSV per curve, plus an optional PNG render of each.

The CSVs are the deterministic artifact (fixed seeds, fixed headers); the PNG
is a convenience render of the same data.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import bounds, exact, montecarlo, series
from .csvio import write_csv
from .model import Params

__all__ = [
    "figure_inclusion",
    "figure_tail_bounds",
    "figure_second_moment",
    "figure_concentration",
    "FIGURES",
]

_CDF_GRID = np.round(np.linspace(0.0, 2.0, 201), 4)


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_inclusion(out_dir, *, p: float = 0.5, n_max: int = 40, render: bool = True) -> list[Path]:
    """Non-inclusion probability of every position for one (p, N)."""
    out_dir = Path(out_dir)
    params = Params(p, n_max)
    rows = [(n, 1.0 - exact.inclusion_prob(n, params)) for n in range(2 * n_max + 1)]
    paths = [write_csv(out_dir / "inclusion.csv", ("n", "prob_missing"), rows)]
    if render:
        plt = _pyplot()
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.plot([r[0] for r in rows], [r[1] for r in rows], ".-", ms=4)
        ax.set_xlabel("n")
        ax.set_ylabel("P(n missing)")
        ax.set_title(f"Non-inclusion probability, p={p}, N={n_max}")
        fig.tight_layout()
        fig.savefig(out_dir / "figure1.png", dpi=150)
        plt.close(fig)
        paths.append(out_dir / "figure1.png")
    return paths


def figure_tail_bounds(
    out_dir,
    *,
    p: float = 0.5,
    n_max: int = 200,
    trials: int = 1_000_000,
    seed: int = 42,
    render: bool = True,
) -> list[Path]:
    """Empirical tail of the left-fringe count against both analytic bounds."""
    out_dir = Path(out_dir)
    summary = montecarlo.run(montecarlo.McConfig(Params(p, n_max), trials=trials, seed=seed))
    ns = range(0, 61, 2)
    mc_rows, ub_rows, lb_rows = [], [], []
    for n in ns:
        estimate, se = montecarlo.tail_estimate(summary, n)
        mc_rows.append((n, estimate, se))
        ub_rows.append((n, bounds.tail_upper_chernoff(p, n), bounds.tail_upper_improved(p, n)))
        lb_rows.append(
            (n, bounds.tail_lower(p, n), bounds.tail_lower(p, n, stated_exponent=True))
        )
    paths = [
        write_csv(out_dir / "mc.csv", ("n", "estimate", "std_error"), mc_rows),
        write_csv(out_dir / "ub.csv", ("n", "chernoff", "improved"), ub_rows),
        write_csv(out_dir / "lb.csv", ("n", "lower", "lower_stated"), lb_rows),
    ]
    if render:
        plt = _pyplot()
        fig, ax = plt.subplots(figsize=(7, 4.5))
        mask = [r[1] > 0 for r in mc_rows]
        ax.semilogy(
            [r[0] for r, keep in zip(mc_rows, mask) if keep],
            [r[1] for r, keep in zip(mc_rows, mask) if keep],
            "o",
            ms=4,
            label=f"MC ({trials:.0e} trials)",
        )
        ax.semilogy([r[0] for r in ub_rows], [r[2] for r in ub_rows], "-", label="upper bound")
        ax.semilogy([r[0] for r in lb_rows], [r[1] for r in lb_rows], "--", label="lower bound")
        ax.set_xlabel("n")
        ax.set_ylabel("P(missing >= n on the left)")
        ax.set_title(f"Tail bounds, p={p}, N={n_max}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(out_dir / "figure2.png", dpi=150)
        plt.close(fig)
        paths.append(out_dir / "figure2.png")
    return paths


def figure_second_moment(
    out_dir,
    *,
    p_grid=(0.5, 0.4, 0.3, 0.2, 0.1),
    n_max: int = 400,
    trials: int = 100_000,
    seed: int = 42,
    render: bool = True,
) -> list[Path]:
    """Second moment across p: series value, MC estimate, leading-order curve,
    and the expected |MC - series| discrepancy (random plus systematic error).
    """
    out_dir = Path(out_dir)
    series_rows, mc_rows, approx_rows, err_rows = [], [], [], []
    for p in p_grid:
        result = series.second_moment_limit(p, 1e-10)
        series_rows.append((p, result.value, result.truncation_l, result.remainder_bound))
        summary = montecarlo.run(montecarlo.McConfig(Params(p, n_max), trials=trials, seed=seed))
        random_error = montecarlo.mc_error_estimate(summary)
        systematic = series.tail_remainder_bound(p, n_max)
        mc_rows.append((p, summary.moment2("y"), random_error))
        approx_rows.append((p, series.leading_order_approx(p)))
        err_rows.append((p, math.hypot(random_error, systematic)))
    paths = [
        write_csv(out_dir / "series.csv", ("p", "value", "truncation_l", "remainder_bound"), series_rows),
        write_csv(out_dir / "mc.csv", ("p", "second_moment", "random_error"), mc_rows),
        write_csv(out_dir / "approx.csv", ("p", "value"), approx_rows),
        write_csv(out_dir / "expected_error.csv", ("p", "expected_error"), err_rows),
    ]
    if render:
        plt = _pyplot()
        fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
        ps = [r[0] for r in series_rows]
        left.loglog(ps, [r[1] for r in series_rows], "s-", label="series")
        left.loglog(ps, [r[1] for r in approx_rows], ":", label="leading order")
        left.errorbar(
            ps,
            [r[1] for r in mc_rows],
            yerr=[r[2] for r in mc_rows],
            fmt="o",
            ms=4,
            label=f"MC (N={n_max})",
        )
        left.set_xlabel("p")
        left.set_ylabel("second moment of the left-fringe count")
        left.legend()
        discrepancy = [abs(m[1] - s[1]) for m, s in zip(mc_rows, series_rows)]
        right.loglog(ps, discrepancy, "o-", label="|MC - series|")
        right.loglog(ps, [r[1] for r in err_rows], "--", label="expected error")
        right.set_xlabel("p")
        right.legend()
        fig.tight_layout()
        fig.savefig(out_dir / "figure3.png", dpi=150)
        plt.close(fig)
        paths.append(out_dir / "figure3.png")
    return paths


def figure_concentration(
    out_dir,
    *,
    p_grid=(0.05, 0.08, 0.16, 0.24, 0.32),
    n_max: int = 800,
    trials: int = 100_000,
    seed: int = 42,
    render: bool = True,
) -> list[Path]:
    """Empirical CDF of the left-fringe count normalized by its sample mean."""
    out_dir = Path(out_dir)
    paths = []
    curves = {}
    for p in p_grid:
        summary = montecarlo.run(montecarlo.McConfig(Params(p, n_max), trials=trials, seed=seed))
        rows = montecarlo.normalized_cdf(summary, _CDF_GRID)
        curves[p] = rows
        paths.append(write_csv(out_dir / f"cdf_p{p}.csv", ("x", "cdf"), rows))
    if render:
        plt = _pyplot()
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for p, rows in curves.items():
            ax.plot([r[0] for r in rows], [r[1] for r in rows], label=f"p={p}")
        ax.set_xlabel("count / sample mean")
        ax.set_ylabel("empirical CDF")
        ax.set_title(f"Concentration of the left-fringe count, N={n_max}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(out_dir / "figure4.png", dpi=150)
        plt.close(fig)
        paths.append(out_dir / "figure4.png")
    return paths


FIGURES = {
    1: figure_inclusion,
    2: figure_tail_bounds,
    3: figure_second_moment,
    4: figure_concentration,
}
