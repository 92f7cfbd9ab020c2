"""Moment and tail bounds for the left-fringe missing count.

Two bound families, both exponential: a crude one with rate
alpha = log(1/sqrt(1-p^2)) obtained from single-position non-inclusion, and
an improved one with rate alpha' = log(1/lambda_1) obtained from the
pair-missing decay.  alpha < alpha', so the improved bounds win for large
arguments.  A matching exponential lower bound shows the tail really is
exponential.
"""

from __future__ import annotations

import math
import sys

from .chains import spectral_constants
from .errors import DomainError
from .exact import expected_missing_left_limit

__all__ = [
    "kth_moment_upper",
    "kth_moment_upper_improved",
    "tail_upper_chernoff",
    "tail_upper_improved",
    "tail_lower",
]

_LOG_MAX_DOUBLE = math.log(sys.float_info.max)


def _scaled_factorial_over_power(k: int, rate: float, scale: float) -> float:
    # scale * k! / rate^k, falling back to log space once k! leaves float range
    if k <= 170:
        return scale * math.factorial(k) / rate**k
    log_value = math.log(scale) + math.lgamma(k + 1) - k * math.log(rate)
    if log_value > _LOG_MAX_DOUBLE:
        raise OverflowError(f"moment bound for k={k} is not representable as a double")
    return math.exp(log_value)


def kth_moment_upper(p: float, k: int) -> float:
    """Crude k-th moment bound 2 k! / alpha^k (valid for every k >= 0)."""
    if k < 0:
        raise DomainError(f"moment order must be >= 0, got {k}")
    alpha = spectral_constants(p).alpha
    return _scaled_factorial_over_power(k, alpha, 2.0)


def kth_moment_upper_improved(p: float, k: int) -> float:
    """Sharper k-th moment bound (2/p^2 - 1/p - 1) + 2 k! / (lambda_1 alpha'^k).

    Beats the crude bound once k is large because alpha' > alpha.
    """
    if k < 1:
        raise DomainError(f"improved moment bound requires k >= 1, got {k}")
    s = spectral_constants(p)
    return expected_missing_left_limit(p) + _scaled_factorial_over_power(
        k, s.alpha_prime, 2.0 / s.lambda1
    )


def tail_upper_chernoff(p: float, n: int, *, clamped: bool = True) -> float:
    """Tail bound 2 alpha n e^(-alpha n + 1) on P(Y >= n); trivial (=1) for n <= 1/alpha."""
    if n < 0:
        raise DomainError(f"tail threshold must be >= 0, got {n}")
    alpha = spectral_constants(p).alpha
    if n <= 1.0 / alpha:
        return 1.0
    raw = 2.0 * alpha * n * math.exp(-alpha * n + 1.0)
    return min(1.0, raw) if clamped else raw


def tail_upper_improved(p: float, n: int, *, clamped: bool = True) -> float:
    """Tail bound (2/p^2-1/p-1) e^(-(n-1)(alpha'-1/n)) + 2 n alpha' e^(-n alpha'+1)/lambda_1.

    Nontrivial for n > 1/alpha'; decays at the sharper rate alpha'.
    """
    if n < 0:
        raise DomainError(f"tail threshold must be >= 0, got {n}")
    s = spectral_constants(p)
    if n <= 1.0 / s.alpha_prime:
        return 1.0
    t = s.alpha_prime - 1.0 / n
    raw = expected_missing_left_limit(p) * math.exp(-(n - 1) * t) + (
        2.0 * n * s.alpha_prime * math.exp(-n * s.alpha_prime + 1.0) / s.lambda1
    )
    return min(1.0, raw) if clamped else raw


def tail_lower(p: float, n: int, *, stated_exponent: bool = False) -> float:
    """Exponential lower bound on P(Y >= n) for even n.

    When {0, ..., n/2} misses A entirely, all of {0, ..., n} misses A+A; that
    event has n/2 + 1 independent factors, so the rigorous bound is
    (1-p)^(n/2+1).  ``stated_exponent=True`` returns the (1-p)^(n/2) variant
    (one factor dropped), kept for figure comparison.
    """
    if n < 0 or n % 2 != 0:
        raise DomainError(f"tail lower bound requires even n >= 0, got {n}")
    exponent = n // 2 if stated_exponent else n // 2 + 1
    return (1.0 - p) ** exponent
