"""Infinite-series machinery for the second moment of the left-fringe count.

In the large-N limit the second moment of the left-fringe missing count has
an exact single-series form,

    E[Y^2]_inf = -(2/p^2 - 1/p - 1)
                 + 2 * sum_{l>=1} (a_{2l} + (1-p) a_{l-1} + (1-p) a_l a_{2l}
                                   + (1-p)^2 a_l a_{l-1})
                                  / ((1 - a_{2l+2})(1 - a_{2l})),

obtained by grouping pairs (m, n) into wedges of constant twist degree l and
collapsing each wedge with a floor-geometric closed form.  Every summand is
positive and decays like lambda_1^l, so truncation carries a rigorous
geometric tail bound.  Dividing the series by 1/p^4 and truncating at L gives
f(p, L), whose p -> 0 limit telescopes to sum 4/(4l^2-1) = 2; hence the
leading order E[Y^2]_inf ~ 4/p^4 and the variance-to-mean-squared ratio
vanishing as p -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chains import chain_values, spectral_constants
from .errors import DomainError, ResourceLimitError
from .exact import expected_missing_left_limit

__all__ = [
    "SeriesResult",
    "floor_geometric_sum",
    "wedge_constants",
    "wedge_boundary",
    "second_moment_limit",
    "second_moment_partial",
    "leading_order_approx",
    "tail_remainder_bound",
    "n_for_tolerance",
    "variance_limit",
    "total_second_moment_limit",
]

_MAX_TERMS = 5_000_000


@dataclass(frozen=True)
class SeriesResult:
    """A truncated positive series: the true value lies in [value, value + remainder_bound]."""

    value: float
    truncation_l: int
    remainder_bound: float


def floor_geometric_sum(alpha: float, beta: float, k: int, l: int) -> float:
    """Closed form of sum_{n>=0} alpha^n * beta^floor(((l-1)n + k)/l).

    Requires |alpha| < 1, |beta| < 1 and integers 0 <= k < l.  The exponent
    increases by one per step except every l-th step, which yields one plain
    geometric prefix of length k+1 followed by a cyclic pattern.
    """
    if not (abs(alpha) < 1.0 and abs(beta) < 1.0):
        raise DomainError(f"need |alpha| < 1 and |beta| < 1, got ({alpha}, {beta})")
    if not 0 <= k < l:
        raise DomainError(f"need 0 <= k < l, got (k, l) = ({k}, {l})")
    correction = alpha ** (k + 1) * beta**k * (1.0 - beta) / (1.0 - alpha**l * beta ** (l - 1))
    return (1.0 + correction) / (1.0 - alpha * beta)


def wedge_constants(p: float, l: int) -> tuple[float, float]:
    """Geometric bases (U_l, V_l) of the constant-twist wedge.

    U_l = a_{2l}^l / a_{2l+2}^(l-1) and V_l = a_{2l+2}^l / a_{2l}^(l+1):
    for odd m, n in the wedge, the pair-missing probability is exactly
    U_l^((m+1)/2) * V_l^((n+1)/2).  Evaluated through logs so the large
    cancelling powers stay representable.
    """
    if l < 1:
        raise DomainError(f"wedge index must be >= 1, got {l}")
    a = chain_values(p, 2 * l + 2)
    if a[2 * l + 2] <= 0.0:
        raise DomainError(f"chain probabilities underflow at l={l}; wedge bases unrepresentable")
    log_short, log_long = math.log(a[2 * l]), math.log(a[2 * l + 2])
    u = math.exp(l * log_short - (l - 1) * log_long)
    v = math.exp(l * log_long - (l + 1) * log_short)
    return u, v


def wedge_boundary(m: int, l_prime: int) -> int:
    """Least n with twist degree >= l_prime for this m: floor((m+1)(l'-1)/l')."""
    if m < 0 or l_prime < 1:
        raise DomainError(f"need m >= 0 and l_prime >= 1, got ({m}, {l_prime})")
    return (m + 1) * (l_prime - 1) // l_prime


class _SeriesTerms:
    """Incremental summand generator sharing one pair of recurrence tables.

    Keeps 1 - a_k in its own all-positive recurrence
    (b_k = p^2 + (1-p) b_{k-1} + p(1-p) b_{k-2}) so small-p denominators are
    formed without cancellation.
    """

    def __init__(self, p: float):
        if not 0.0 < p < 1.0:
            raise DomainError(f"p must lie strictly in (0, 1), got {p!r}")
        self.p = p
        self._a = [1.0, 1.0]
        self._b = [0.0, 0.0]

    def _ensure(self, k: int) -> None:
        p = self.p
        a, b = self._a, self._b
        while len(a) <= k:
            a.append((1.0 - p) * (a[-1] + p * a[-2]))
            b.append(p * p + (1.0 - p) * b[-1] + p * (1.0 - p) * b[-2])

    def term(self, l: int) -> float:
        self._ensure(2 * l + 2)
        p, a, b = self.p, self._a, self._b
        numer = (
            a[2 * l]
            + (1.0 - p) * a[l - 1]
            + (1.0 - p) * a[l] * a[2 * l]
            + (1.0 - p) ** 2 * a[l] * a[l - 1]
        )
        return numer / (b[2 * l + 2] * b[2 * l])

    def tail_bound(self, l: int) -> float:
        """Geometric majorant of sum_{j>l} term(j): each numerator is < 4*lambda_1^(j-2)
        and the denominators only grow with j.
        """
        self._ensure(2 * l + 4)
        lam1 = spectral_constants(self.p).lambda1
        return 8.0 * lam1 ** (l - 1) / (self._b[2 * l + 4] * self._b[2 * l + 2] * (1.0 - lam1))


def second_moment_limit(p: float, tol: float) -> SeriesResult:
    """Large-N limit of E[Y^2], truncated once the tail bound (for the doubled
    series, i.e. the error of ``value``) drops below ``tol``.
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    gen = _SeriesTerms(p)
    terms = []
    l = 0
    while True:
        l += 1
        if l > _MAX_TERMS:
            raise ResourceLimitError(
                f"series for p={p} did not reach tol={tol} within {_MAX_TERMS} terms"
            )
        terms.append(gen.term(l))
        tail = gen.tail_bound(l)
        if tail < tol:
            break
    value = 2.0 * math.fsum(terms) - expected_missing_left_limit(p)
    return SeriesResult(value=value, truncation_l=l, remainder_bound=tail)


def second_moment_partial(p: float, trunc_l: int) -> float:
    """f(p, L): p^4 times the L-th partial sum of the series (nondecreasing in L)."""
    if trunc_l < 1:
        raise DomainError(f"partial-sum length must be >= 1, got {trunc_l}")
    if trunc_l > _MAX_TERMS:
        raise ResourceLimitError(f"partial-sum length {trunc_l} exceeds cap {_MAX_TERMS}")
    gen = _SeriesTerms(p)
    return p**4 * math.fsum(gen.term(l) for l in range(1, trunc_l + 1))


def leading_order_approx(p: float) -> float:
    """Small-p approximation 4/p^4 - 2/p^2 + 1/p + 1 of the second-moment limit.

    Only the 4/p^4 term is asymptotically pinned; the lower-order terms are a
    reasonable but uncertified refinement.
    """
    return 4.0 / p**4 - 2.0 / p**2 + 1.0 / p + 1.0


def tail_remainder_bound(p: float, n_max: int) -> float:
    """Bound on the second moment lost to pairs with max(m, n) > n_max:
    sum_{n>N} (2n+1) q^(n+1) with q = sqrt(1-p^2), in closed form.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    q = math.sqrt(1.0 - p * p)
    return q ** (n_max + 2) * (2.0 * (n_max + 1) * (1.0 - q) + 1.0 + q) / (1.0 - q) ** 2


def n_for_tolerance(p: float, eps: float) -> int:
    """Rough endpoint needed for the finite-N second moment to sit within eps
    of its limit: ceil(8|log p|/p^2 + 2|log(eps/8)|/p^2).
    """
    if eps <= 0.0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly in (0, 1), got {p!r}")
    return math.ceil((8.0 * abs(math.log(p)) + 2.0 * abs(math.log(eps / 8.0))) / (p * p))


def variance_limit(p: float, tol: float) -> tuple[float, float]:
    """Limit variance of the left-fringe count and its ratio to the squared mean.

    The ratio tends to 0 as p -> 0: the count concentrates around its mean.
    """
    mean = expected_missing_left_limit(p)
    variance = second_moment_limit(p, tol).value - mean * mean
    return variance, variance / (mean * mean)


def total_second_moment_limit(p: float, tol: float) -> float:
    """Large-N limit of E[W^2] = 2 E[Y^2] + 2 E[Y]^2 (the fringes decouple);
    p^4 times this tends to 16 as p -> 0.
    """
    mean = expected_missing_left_limit(p)
    return 2.0 * second_moment_limit(p, tol).value + 2.0 * mean * mean
