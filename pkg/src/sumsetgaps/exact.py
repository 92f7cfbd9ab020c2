"""Closed forms for single-position inclusion probabilities and first moments.

The probability that position n is covered by A+A depends only on the
distance to the nearer end of {0, ..., 2N} and the parity of n:

    P(n in A+A) = 1 - (1-p^2)^((j+1)/2)          j odd
    P(n in A+A) = 1 - (1-p)(1-p^2)^(j/2)         j even

with j = min(n, 2N - n).  Summing the complements gives exact expected
missing counts for the left fringe (E[Y]) and the whole range (E[W]), each
with an N-independent limit plus an exponentially small parity-dependent
correction.  The fringe-truncation and convolution-discrepancy bounds
quantify how fast the two fringes decouple as N grows.
"""

from __future__ import annotations

import math

from .errors import DomainError
from .model import Params

__all__ = [
    "inclusion_prob",
    "expected_missing_left",
    "expected_missing_left_limit",
    "expected_missing_total",
    "expected_missing_total_limit",
    "fringe_truncation_bound",
    "convolution_discrepancy_bound",
]

# Below this exponent, integer powers go through repeated squaring; above it,
# exp/log is both faster and no worse than the accumulated squaring error.
_IPOW_THRESHOLD = 4096


def _ipow(base: float, k: int) -> float:
    """base**k for integer k >= 0 via binary exponentiation."""
    if k > _IPOW_THRESHOLD:
        return math.exp(k * math.log(base)) if base > 0.0 else 0.0
    result = 1.0
    acc = base
    while k:
        if k & 1:
            result *= acc
        acc *= acc
        k >>= 1
    return result


def inclusion_prob(n: int, params: Params) -> float:
    """Exact P(n in A+A) for 0 <= n <= 2*n_max."""
    big_n = params.n_max
    if not 0 <= n <= 2 * big_n:
        raise DomainError(f"position {n} outside [0, {2 * big_n}]")
    p = params.p
    j = n if n <= big_n else 2 * big_n - n
    u = 1.0 - p * p
    if j % 2 == 1:
        return 1.0 - _ipow(u, (j + 1) // 2)
    return 1.0 - (1.0 - p) * _ipow(u, j // 2)


def expected_missing_left_limit(p: float) -> float:
    """Large-N limit of E[Y]: 2/p^2 - 1/p - 1."""
    return 2.0 / (p * p) - 1.0 / p - 1.0


def expected_missing_left(params: Params) -> float:
    """Exact E[Y] at finite N, split by the parity of N."""
    p, big_n = params.p, params.n_max
    u = 1.0 - p * p
    if big_n % 2 == 0:
        corr = _ipow(u, big_n // 2) * (2.0 - p) * u / (p * p)
    else:
        corr = _ipow(u, (big_n + 1) // 2) * (2.0 - p - p * p) / (p * p)
    return expected_missing_left_limit(p) - corr


def expected_missing_total_limit(p: float) -> float:
    """Large-N limit of E[W]: 4/p^2 - 2/p - 2."""
    return 4.0 / (p * p) - 2.0 / p - 2.0


def expected_missing_total(params: Params) -> float:
    """Exact E[W] at finite N.

    Derived from E[W] = 2*E[Y] - (1 - P(N in A+A)): the even-N coefficient is
    (4 - 2p - 3p^2 + p^3)/p^2, which matches the enumeration oracle and the
    direct sum of non-inclusion probabilities at every N.
    """
    p, big_n = params.p, params.n_max
    u = 1.0 - p * p
    if big_n % 2 == 0:
        corr = _ipow(u, big_n // 2) * (4.0 - 2.0 * p - 3.0 * p * p + p**3) / (p * p)
    else:
        corr = _ipow(u, (big_n + 1) // 2) * (4.0 - 2.0 * p - p * p) / (p * p)
    return expected_missing_total_limit(p) - corr


def fringe_truncation_bound(params: Params) -> float:
    """Upper bound (2/p^2)(1-p^2)^(N/4) on E[Y - Y~] and E[Z - Z~].

    Because those differences are nonnegative-integer valued, the same number
    bounds the disagreement probabilities P(Y != Y~), P(Z != Z~) by Markov.
    """
    p = params.p
    return 2.0 / (p * p) * (1.0 - p * p) ** (params.n_max / 4.0)


def convolution_discrepancy_bound(params: Params) -> float:
    """Uniform bound (8/p^2)(1-p^2)^(N/4) on |P(W=m) - (P_Y * P_Z)(m)|.

    As N grows the total-count distribution approaches the convolution of the
    two fringe distributions at this exponential rate.
    """
    return 4.0 * fringe_truncation_bound(params)
