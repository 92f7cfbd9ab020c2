"""Command-line surface.

Exit codes: 0 success, 1 domain or computation error, 2 usage error,
3 verification budget exceeded.  All tabular output follows the package CSV
convention (header row, 17-significant-digit floats).
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click

from . import bounds, exact, figures, montecarlo, orbits, series, verify
from .chains import chain_prob_table, spectral_constants
from .csvio import write_csv, write_rows
from .errors import DomainError, ResourceLimitError
from .model import Params


def _domain_guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DomainError, ResourceLimitError, OverflowError) as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(1)

    return wrapper


def _stdout_csv(header, rows):
    write_rows(sys.stdout, header, rows)


@click.group()
def cli():
    """Missing-summand statistics of random sumsets: exact formulas, series,
    bounds, Monte Carlo, and figure data."""


# ----------------------------------------------------------------- exact ----


@cli.group("exact")
def exact_group():
    """Closed-form probabilities, moments, chain tables and orbit inventories."""


@exact_group.command("inclusion")
@click.option("--p", type=float, required=True, help="Inclusion probability, strictly in (0, 1).")
@click.option("--N", "n_max", type=int, required=True, help="Interval endpoint N.")
@_domain_guarded
def exact_inclusion(p, n_max):
    """Non-inclusion probability of every position 0..2N (one row per position)."""
    params = Params(p, n_max)
    rows = [(n, 1.0 - exact.inclusion_prob(n, params)) for n in range(2 * n_max + 1)]
    _stdout_csv(("n", "prob_missing"), rows)


@exact_group.command("pairprob")
@click.option("--p", type=float, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--N", "n_max", type=int, default=None, help="Endpoint; defaults to m.")
@_domain_guarded
def exact_pairprob(p, m, n, n_max):
    """Exact probability that both m and n are missing from the sumset."""
    params = Params(p, m if n_max is None else n_max)
    _stdout_csv(("m", "n", "prob"), [(m, n, orbits.pair_missing_prob(m, n, params))])


@exact_group.command("moments")
@click.option("--p", type=float, required=True)
@click.option("--N", "n_max", type=int, required=True)
@_domain_guarded
def exact_moments(p, n_max):
    """First moments of the missing counts at finite N and in the large-N limit."""
    params = Params(p, n_max)
    rows = [
        ("expected_missing_left", exact.expected_missing_left(params)),
        ("expected_missing_total", exact.expected_missing_total(params)),
        ("expected_missing_left_limit", exact.expected_missing_left_limit(p)),
        ("expected_missing_total_limit", exact.expected_missing_total_limit(p)),
        ("fringe_truncation_bound", exact.fringe_truncation_bound(params)),
        ("convolution_discrepancy_bound", exact.convolution_discrepancy_bound(params)),
    ]
    _stdout_csv(("quantity", "value"), rows)


@exact_group.command("chain")
@click.option("--p", type=float, required=True)
@click.option("--K", "size", type=int, required=True, help="Largest chain length tabulated.")
@_domain_guarded
def exact_chain(p, size):
    """Chain-satisfaction probability table a_0..a_K plus the spectral constants."""
    table = chain_prob_table(p, size)
    s = spectral_constants(p)
    click.echo(
        f"# lambda1={s.lambda1!r} lambda2={s.lambda2!r} alpha={s.alpha!r} alpha_prime={s.alpha_prime!r}"
    )
    _stdout_csv(("k", "a_k"), [(k, table[k]) for k in range(size + 1)])


@exact_group.command("orbits")
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@_domain_guarded
def exact_orbits(m, n):
    """Reflection-orbit inventory of the pair (m, n) for diagram tooling."""
    _stdout_csv(("m", "n", "r", "entries", "looped"), orbits.orbit_csv_rows(m, n))


@exact_group.command("tailbounds")
@click.option("--p", type=float, required=True)
@click.option("--n-low", type=int, default=0, show_default=True)
@click.option("--n-high", type=int, default=60, show_default=True)
@_domain_guarded
def exact_tailbounds(p, n_low, n_high):
    """Analytic tail bounds on P(left-fringe count >= n) for even n in a range."""
    rows = [
        (
            n,
            bounds.tail_upper_chernoff(p, n),
            bounds.tail_upper_improved(p, n),
            bounds.tail_lower(p, n),
            bounds.tail_lower(p, n, stated_exponent=True),
        )
        for n in range(n_low + n_low % 2, n_high + 1, 2)
    ]
    _stdout_csv(("n", "chernoff", "improved", "lower", "lower_stated"), rows)


# ---------------------------------------------------------------- series ----


@cli.group("series")
def series_group():
    """Second-moment series, partial sums, and asymptotics."""


@series_group.command("second-moment")
@click.option("--p", type=float, required=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@_domain_guarded
def series_second_moment(p, tol):
    """Large-N limit of the left-fringe second moment with truncation metadata."""
    result = series.second_moment_limit(p, tol)
    _stdout_csv(
        ("value", "truncation_l", "remainder_bound"),
        [(result.value, result.truncation_l, result.remainder_bound)],
    )


@series_group.command("partial")
@click.option("--p", type=float, required=True)
@click.option("--L", "trunc_l", type=int, required=True)
@_domain_guarded
def series_partial(p, trunc_l):
    """Normalized partial sum f(p, L) (tends to 2 as p -> 0, L -> infinity)."""
    _stdout_csv(("p", "L", "value"), [(p, trunc_l, series.second_moment_partial(p, trunc_l))])


@series_group.command("leading")
@click.option("--p", type=float, required=True)
@_domain_guarded
def series_leading(p):
    """Leading-order approximation 4/p^4 - 2/p^2 + 1/p + 1."""
    _stdout_csv(("p", "value"), [(p, series.leading_order_approx(p))])


@series_group.command("variance")
@click.option("--p", type=float, required=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@_domain_guarded
def series_variance(p, tol):
    """Limit variance of the left-fringe count and its ratio to the squared mean."""
    variance, ratio = series.variance_limit(p, tol)
    _stdout_csv(("p", "variance", "ratio"), [(p, variance, ratio)])


# -------------------------------------------------------------------- mc ----


@cli.group("mc")
def mc_group():
    """Seeded Monte Carlo runs (deterministic for a fixed seed)."""


def _write_summary(summary, out_dir: Path) -> None:
    config = summary.config
    out_dir.mkdir(parents=True, exist_ok=True)
    for variable in ("y", "z", "w", "y_tilde", "z_tilde", "w_tilde"):
        hist = summary.histogram(variable)
        write_csv(
            out_dir / f"hist_{variable}.csv",
            ("value", "count"),
            [(v, int(c)) for v, c in enumerate(hist)],
        )
    header = (
        f"p={config.params.p!r}\nN={config.params.n_max}\ntrials={config.trials}\n"
        f"seed={config.seed}\nshards={config.shards}\n"
    )
    (out_dir / "summary.txt").write_text(header, encoding="utf-8")


@mc_group.command("run")
@click.option("--p", type=float, required=True)
@click.option("--N", "n_max", type=int, required=True)
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--shards", type=int, default=1, show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@_domain_guarded
def mc_run(p, n_max, trials, seed, shards, out_dir):
    """Simulate and write histograms, tail estimates, and a summary header."""
    summary = montecarlo.run(
        montecarlo.McConfig(Params(p, n_max), trials=trials, seed=seed, shards=shards)
    )
    _write_summary(summary, out_dir)
    tail_rows = []
    for n in range(n_max + 2):
        estimate, se = montecarlo.tail_estimate(summary, n)
        tail_rows.append((n, estimate, se))
    write_csv(out_dir / "tails.csv", ("n", "estimate", "std_error"), tail_rows)
    click.echo(f"wrote {out_dir}")


@mc_group.command("cdf")
@click.option("--p", type=float, required=True)
@click.option("--N", "n_max", type=int, required=True)
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--shards", type=int, default=1, show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@_domain_guarded
def mc_cdf(p, n_max, trials, seed, shards, out_dir):
    """Simulate and write the sample-mean-normalized CDF of the left-fringe count."""
    summary = montecarlo.run(
        montecarlo.McConfig(Params(p, n_max), trials=trials, seed=seed, shards=shards)
    )
    _write_summary(summary, out_dir)
    rows = montecarlo.normalized_cdf(summary, figures._CDF_GRID)
    write_csv(out_dir / "cdf.csv", ("x", "cdf"), rows)
    click.echo(f"wrote {out_dir}")


# ---------------------------------------------------------------- verify ----


@cli.command("verify")
@click.option(
    "--suite",
    type=click.Choice(sorted(verify.SUITES)),
    default="all",
    show_default=True,
)
@click.option(
    "--budget",
    type=int,
    default=verify.DEFAULT_BUDGET,
    show_default=True,
    help="Cap on per-check enumeration size / Monte Carlo trials; checks over budget are skipped.",
)
def cli_verify(suite, budget):
    """Run the acceptance checks and print one line per criterion."""
    results = verify.run_suite(suite, budget)
    for result in results:
        click.echo(result.line())
    failed = sum(1 for r in results if r.passed is False)
    skipped = sum(1 for r in results if r.passed is None)
    click.echo(f"{len(results) - failed - skipped} passed, {failed} failed, {skipped} skipped")
    if failed:
        sys.exit(1)
    if skipped:
        sys.exit(3)


# --------------------------------------------------------------- figures ----


@cli.command("figures")
@click.option("--which", type=click.Choice(["1", "2", "3", "4"]), required=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@click.option("--trials", type=int, default=None, help="Override the per-figure default trial count.")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--plot/--no-plot", "render", default=True, show_default=True)
@_domain_guarded
def cli_figures(which, out_dir, trials, seed, render):
    """Write one figure's CSV bundle (and its PNG render unless --no-plot)."""
    out_dir.mkdir(parents=True, exist_ok=True)
    builder = figures.FIGURES[int(which)]
    kwargs = {"render": render}
    if which != "1":
        kwargs["seed"] = seed
        if trials is not None:
            kwargs["trials"] = trials
    try:
        paths = builder(out_dir, **kwargs)
    except OSError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(1)
    for path in paths:
        click.echo(f"wrote {path}")


def main():
    cli(prog_name="sumset-gaps")


if __name__ == "__main__":
    main()
