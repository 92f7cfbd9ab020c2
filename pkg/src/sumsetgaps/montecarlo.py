"""Seeded, shardable Monte Carlo engine for missing-summand statistics.

Randomness is counter-based: one Philox stream keyed by the seed, with each
trial owning a fixed window of whole 256-bit counter blocks (the per-element
64-bit draws, padded to a multiple of four).  Trial t's bits therefore never
depend on how trials are grouped, so results are bit-identical for any shard
count or chunk size, and shards can run in any order — aggregation is plain
integer histogram addition.

Each element joins the sample when its 64-bit draw falls below
round(p * 2^64); the fixed-point threshold injects at most 2^-64 bias per
element, far below anything resolvable at these trial counts.  Sumsets for a
whole batch are computed at once via FFT self-convolution of the membership
rows; the convolution counts are integers, so thresholding at 0.5 reproduces
the exact per-sample bitset computation (property-tested against it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Philox

from .errors import DomainError, ResourceLimitError
from .model import Params

__all__ = [
    "McConfig",
    "McSummary",
    "run",
    "tail_estimate",
    "normalized_cdf",
    "convolution_check",
    "mc_error_estimate",
]

_VARIABLES = ("y", "z", "w", "y_tilde", "z_tilde", "w_tilde")


@dataclass(frozen=True)
class McConfig:
    """One simulation: parameters, trial count, seed, and shard partition.

    ``max_cells`` caps trials * (n_max + 1) so a typo cannot silently demand
    terabytes of random words.
    """

    params: Params
    trials: int
    seed: int
    shards: int = 1
    max_cells: int = 2**32

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not 1 <= self.shards <= self.trials:
            raise DomainError(f"shards must lie in [1, trials], got {self.shards}")
        cells = self.trials * (self.params.n_max + 1)
        if cells > self.max_cells:
            raise ResourceLimitError(
                f"trials * (n_max + 1) = {cells} exceeds the configured budget {self.max_cells}"
            )


@dataclass(frozen=True)
class McSummary:
    """Aggregated histograms (count per value) for all six tracked statistics."""

    config: McConfig
    hist_y: np.ndarray
    hist_z: np.ndarray
    hist_w: np.ndarray
    hist_y_tilde: np.ndarray
    hist_z_tilde: np.ndarray
    hist_w_tilde: np.ndarray

    def histogram(self, variable: str) -> np.ndarray:
        if variable not in _VARIABLES:
            raise DomainError(f"unknown variable {variable!r}; expected one of {_VARIABLES}")
        return getattr(self, f"hist_{variable}")

    def mean(self, variable: str) -> float:
        hist = self.histogram(variable)
        return float(np.dot(np.arange(hist.size), hist)) / self.config.trials

    def moment2(self, variable: str) -> float:
        hist = self.histogram(variable)
        return float(np.dot(np.arange(hist.size, dtype=float) ** 2, hist)) / self.config.trials

    def variance(self, variable: str) -> float:
        mean = self.mean(variable)
        return self.moment2(variable) - mean * mean

    def se_mean(self, variable: str) -> float:
        """Plain sample standard error of the mean (diagnostic alongside the
        simplistic second-moment error model in mc_error_estimate)."""
        return math.sqrt(max(self.variance(variable), 0.0) / self.config.trials)


def batch_sumset_members(subset: np.ndarray) -> np.ndarray:
    """Sumset membership rows for a batch of membership rows.

    FFT self-convolution counts the representations of each value; counts are
    integers bounded by N+1 while the float64 FFT error stays below ~1e-6 at
    these sizes, so comparing against 0.5 is exact.
    """
    n_values = 2 * (subset.shape[1] - 1) + 1
    nfft = 1
    while nfft < n_values:
        nfft *= 2
    spectrum = np.fft.rfft(subset.astype(np.float64), n=nfft, axis=1)
    counts = np.fft.irfft(spectrum * spectrum, n=nfft, axis=1)[:, :n_values]
    return counts > 0.5


def _bernoulli_threshold(p: float) -> np.uint64:
    return np.uint64(min(max(int(round(p * 2.0**64)), 1), 2**64 - 1))


def run(config: McConfig) -> McSummary:
    """Simulate all trials and aggregate histograms; deterministic in the seed alone."""
    n = config.params.n_max
    words_per_trial = n + 1
    padded = -(-words_per_trial // 4) * 4  # whole Philox blocks per trial
    threshold = _bernoulli_threshold(config.params.p)
    key = config.seed & (2**64 - 1)

    y_tilde_size = n // 2 + 2
    z_tilde_size = 2 * n - (3 * n) // 2 + 1
    hists = {
        "y": np.zeros(n + 2, dtype=np.int64),
        "z": np.zeros(n + 1, dtype=np.int64),
        "w": np.zeros(2 * n + 2, dtype=np.int64),
        "y_tilde": np.zeros(y_tilde_size, dtype=np.int64),
        "z_tilde": np.zeros(z_tilde_size, dtype=np.int64),
        "w_tilde": np.zeros(y_tilde_size + z_tilde_size - 1, dtype=np.int64),
    }
    chunk_cap = max(256, (1 << 22) // padded)

    for shard in range(config.shards):
        lo = config.trials * shard // config.shards
        hi = config.trials * (shard + 1) // config.shards
        for start in range(lo, hi, chunk_cap):
            stop = min(hi, start + chunk_cap)
            _accumulate_chunk(
                hists, key, start, stop, padded, words_per_trial, threshold, n
            )

    return McSummary(
        config=config,
        hist_y=hists["y"],
        hist_z=hists["z"],
        hist_w=hists["w"],
        hist_y_tilde=hists["y_tilde"],
        hist_z_tilde=hists["z_tilde"],
        hist_w_tilde=hists["w_tilde"],
    )


def _accumulate_chunk(hists, key, start, stop, padded, words_per_trial, threshold, n):
    generator = Philox(key=key)
    generator.advance(start * padded // 4)
    words = generator.random_raw((stop - start) * padded).reshape(stop - start, padded)
    subset = words[:, :words_per_trial] < threshold
    member = batch_sumset_members(subset)

    y = (n + 1) - np.count_nonzero(member[:, : n + 1], axis=1)
    z = n - np.count_nonzero(member[:, n + 1 : 2 * n + 1], axis=1)
    y_tilde = (n // 2 + 1) - np.count_nonzero(member[:, : n // 2 + 1], axis=1)
    z_tilde = (2 * n - (3 * n) // 2) - np.count_nonzero(member[:, (3 * n) // 2 + 1 : 2 * n + 1], axis=1)

    hists["y"] += np.bincount(y, minlength=hists["y"].size)
    hists["z"] += np.bincount(z, minlength=hists["z"].size)
    hists["w"] += np.bincount(y + z, minlength=hists["w"].size)
    hists["y_tilde"] += np.bincount(y_tilde, minlength=hists["y_tilde"].size)
    hists["z_tilde"] += np.bincount(z_tilde, minlength=hists["z_tilde"].size)
    hists["w_tilde"] += np.bincount(y_tilde + z_tilde, minlength=hists["w_tilde"].size)


def tail_estimate(summary: McSummary, n: int) -> tuple[float, float]:
    """Empirical P(Y >= n) with its binomial standard error sqrt(p(1-p)/M)."""
    hist = summary.hist_y
    trials = summary.config.trials
    if n <= 0:
        estimate = 1.0
    elif n >= hist.size:
        estimate = 0.0
    else:
        estimate = float(hist[n:].sum()) / trials
    return estimate, math.sqrt(max(estimate * (1.0 - estimate), 0.0) / trials)


def normalized_cdf(summary: McSummary, grid) -> list[tuple[float, float]]:
    """Empirical CDF of Y evaluated at multiples of the *sample* mean:
    [(x, P(Y <= x * mean)) for x in grid].
    """
    mean = summary.mean("y")
    if mean <= 0.0:
        raise DomainError("sample mean of y is zero; normalized CDF undefined")
    cumulative = np.cumsum(summary.hist_y) / summary.config.trials
    out = []
    for x in grid:
        idx = math.floor(x * mean)
        if idx < 0:
            out.append((float(x), 0.0))
        else:
            out.append((float(x), float(cumulative[min(idx, cumulative.size - 1)])))
    return out


def convolution_check(summary: McSummary, *, use_tilde: bool = False) -> float:
    """max_m |P(total = m) - (P_left * P_right)(m)| on empirical histograms.

    With ``use_tilde`` the check runs on the truncated-window counts, whose
    left and right parts are exactly independent, so the value is pure MC
    noise — the baseline for judging the plain variant.
    """
    if use_tilde:
        h_left, h_right, h_total = summary.hist_y_tilde, summary.hist_z_tilde, summary.hist_w_tilde
    else:
        h_left, h_right, h_total = summary.hist_y, summary.hist_z, summary.hist_w
    trials = summary.config.trials
    conv = np.convolve(h_left / trials, h_right / trials)
    return float(np.max(np.abs(conv - h_total / trials)))


def mc_error_estimate(summary: McSummary) -> float:
    """Simplistic random-error model for the second moment: 2 E[Y^2] / sqrt(M)."""
    return 2.0 * summary.moment2("y") / math.sqrt(summary.config.trials)
