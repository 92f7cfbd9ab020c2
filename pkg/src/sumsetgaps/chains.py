"""Chain-satisfaction probabilities and the spectral constants behind their decay.

A chain (x_1, ..., x_k) is *satisfied* when no two adjacent entries are both
included in the random subset.  For a chain of k distinct fresh elements the
satisfaction probability a_k depends only on k and p; equivalently, a_k is the
probability that a length-k Bernoulli(p) bit string contains no two adjacent
ones.  The sequence obeys

    a_0 = a_1 = 1,   a_k = (1-p) * a_{k-1} + p*(1-p) * a_{k-2}   (k >= 2),

whose characteristic roots lambda_1, lambda_2 give a two-term closed form and
the exponential decay rate lambda_1 that every tail bound in this package
leans on.  a_0 := 1 (an empty chain is vacuously satisfied); with that seed
the recurrence already reproduces a_2 = 1 - p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "ChainProbTable",
    "SpectralConstants",
    "chain_prob_table",
    "chain_prob_closed",
    "chain_values",
    "spectral_constants",
]


def _check_p(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly in (0, 1), got {p!r}")
    return float(p)


@dataclass(frozen=True)
class ChainProbTable:
    """Satisfaction probabilities a_0 ... a_K for one value of p."""

    p: float
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, k: int) -> float:
        return float(self.values[k])


@dataclass(frozen=True)
class SpectralConstants:
    """Roots and coefficients of the chain recurrence, plus the decay rates.

    lambda1/lambda2 solve x^2 = (1-p)x + p(1-p); c1, c2 are the closed-form
    coefficients fixed by a_0 = a_1 = 1.  ``alpha`` = log(1/sqrt(1-p^2)) is
    the crude per-step decay rate of single-element non-inclusion, and
    ``alpha_prime`` = log(1/lambda1) the sharper one; alpha < alpha_prime.
    """

    lambda1: float
    lambda2: float
    c1: float
    c2: float
    alpha: float
    alpha_prime: float


def chain_prob_table(p: float, size: int) -> ChainProbTable:
    """Tabulate a_0 ... a_size by the recurrence (the numerically canonical route:
    every term is a positive combination of previous ones, so no cancellation).
    """
    p = _check_p(p)
    if size < 0:
        raise DomainError(f"table size must be >= 0, got {size}")
    values = np.empty(size + 1)
    values[0] = 1.0
    if size >= 1:
        values[1] = 1.0
    q = 1.0 - p
    for k in range(2, size + 1):
        values[k] = q * (values[k - 1] + p * values[k - 2])
    return ChainProbTable(p=p, values=values)


def spectral_constants(p: float) -> SpectralConstants:
    p = _check_p(p)
    root = math.sqrt((1.0 - p) * (1.0 + 3.0 * p))
    lam1 = (1.0 - p + root) / 2.0
    lam2 = (1.0 - p - root) / 2.0
    c1 = (1.0 - lam2) / (lam1 - lam2)
    c2 = -(1.0 - lam1) / (lam1 - lam2)
    alpha = -0.5 * math.log1p(-p * p)
    alpha_prime = -math.log(lam1)
    return SpectralConstants(
        lambda1=lam1, lambda2=lam2, c1=c1, c2=c2, alpha=alpha, alpha_prime=alpha_prime
    )


@lru_cache(maxsize=64)
def _cached_table(p: float, size: int) -> ChainProbTable:
    return chain_prob_table(p, size)


def chain_values(p: float, needed: int) -> np.ndarray:
    """Memoized read-only a-table covering indices 0..needed (sized up to a power of two
    so nearby queries share one table).
    """
    size = max(16, 1 << int(needed).bit_length())
    return _cached_table(float(p), size).values


def chain_prob_closed(p: float, k: int) -> float:
    """Closed form c1*lambda1^k + c2*lambda2^k; cross-check and asymptotic tool,
    not the canonical evaluator (lambda2 < 0 makes it a signed sum).
    """
    if k < 0:
        raise DomainError(f"chain length must be >= 0, got {k}")
    s = spectral_constants(p)
    return s.c1 * s.lambda1**k + s.c2 * s.lambda2**k
