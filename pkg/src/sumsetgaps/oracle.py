"""Exhaustive-enumeration ground truth for small endpoints.

These routines visit every subset of {0, ..., N} explicitly, weight each by
p^|A| (1-p)^(N+1-|A|), and aggregate whatever is asked.  They are the trust
anchor for every closed form in the package, so they stay free of
combinatorial shortcuts; the price is the 2^(N+1) guard.  All tolerances
quoted against these values are absolute 1e-12 (double accumulation over at
most ~8M terms of magnitude <= 1 stays far below that).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceLimitError
from .model import Params, SubsetSample, compute_sumset, missing_counts

__all__ = [
    "OracleDistribution",
    "exact_distribution",
    "exact_pair_missing",
    "exact_moment",
    "exact_chain_satisfaction",
    "exact_adjacent_free_prob",
]

ENUMERATION_GUARD = 22


def _check_guard(n_max: int) -> None:
    if n_max > ENUMERATION_GUARD:
        raise ResourceLimitError(
            f"exhaustive enumeration is limited to n_max <= {ENUMERATION_GUARD}, got {n_max}"
        )


@dataclass(frozen=True)
class OracleDistribution:
    """Exact pmfs of the missing counts plus per-position inclusion probabilities.

    ``joint_tilde[i, j]`` is P(Y~ = i, Z~ = j); ``inclusion[n]`` is P(n in A+A).
    """

    params: Params
    pmf_y: np.ndarray
    pmf_z: np.ndarray
    pmf_w: np.ndarray
    pmf_y_tilde: np.ndarray
    pmf_z_tilde: np.ndarray
    joint_tilde: np.ndarray
    inclusion: np.ndarray


@lru_cache(maxsize=256)
def exact_distribution(params: Params) -> OracleDistribution:
    """Enumerate all 2^(N+1) subsets; each sample goes through the same
    sumset/count routines the rest of the package uses.
    """
    _check_guard(params.n_max)
    n, p = params.n_max, params.p
    size = n + 1
    y_tilde_size = n // 2 + 2
    z_tilde_size = 2 * n - (3 * n) // 2 + 1
    pmf_y = np.zeros(n + 2)
    pmf_z = np.zeros(n + 1)
    pmf_w = np.zeros(2 * n + 2)
    joint = np.zeros((y_tilde_size, z_tilde_size))
    inclusion = np.zeros(2 * n + 1)
    positions = np.arange(size, dtype=np.uint64)
    for mask in range(1 << size):
        members = ((np.uint64(mask) >> positions) & np.uint64(1)).astype(bool)
        sumset = compute_sumset(SubsetSample(members))
        counts = missing_counts(sumset, params)
        k = mask.bit_count()
        weight = p**k * (1.0 - p) ** (size - k)
        pmf_y[counts.y] += weight
        pmf_z[counts.z] += weight
        pmf_w[counts.w] += weight
        joint[counts.y_tilde, counts.z_tilde] += weight
        inclusion += weight * sumset.members
    for arr in (pmf_y, pmf_z, pmf_w, joint, inclusion):
        arr.setflags(write=False)
    return OracleDistribution(
        params=params,
        pmf_y=pmf_y,
        pmf_z=pmf_z,
        pmf_w=pmf_w,
        pmf_y_tilde=joint.sum(axis=1),
        pmf_z_tilde=joint.sum(axis=0),
        joint_tilde=joint,
        inclusion=inclusion,
    )


@lru_cache(maxsize=4096)
def _pair_missing_profile(m: int, n: int) -> np.ndarray:
    """Count, per subset size, the subsets of {0..m} leaving both m and n uncovered.

    Complete enumeration (vectorized over all 2^(m+1) masks); probabilities for
    any p follow by weighting the counts, so the p-grid shares one pass.
    """
    masks = np.arange(1 << (m + 1), dtype=np.uint64)
    one = np.uint64(1)
    covered_m = np.zeros(masks.size, dtype=bool)
    for a in range(m // 2 + 1):
        covered_m |= (((masks >> np.uint64(a)) & one) & ((masks >> np.uint64(m - a)) & one)).astype(bool)
    covered_n = np.zeros(masks.size, dtype=bool)
    for a in range(n // 2 + 1):
        covered_n |= (((masks >> np.uint64(a)) & one) & ((masks >> np.uint64(n - a)) & one)).astype(bool)
    keep = ~covered_m & ~covered_n
    sizes = np.bitwise_count(masks[keep]).astype(np.int64)
    profile = np.bincount(sizes, minlength=m + 2)
    profile.setflags(write=False)
    return profile


def exact_pair_missing(m: int, n: int, params: Params) -> float:
    """Exact P(m, n both missing from A+A) by enumeration over subsets of {0..m}
    (positions above m cannot cover either target, so they integrate out).
    """
    if not 0 <= n < m:
        raise DomainError(f"need 0 <= n < m, got (m, n) = ({m}, {n})")
    if m > params.n_max:
        raise DomainError(f"m={m} exceeds n_max={params.n_max}")
    _check_guard(m)
    profile = _pair_missing_profile(m, n)
    p = params.p
    sizes = np.arange(m + 2)
    return float(np.dot(profile, p**sizes * (1.0 - p) ** (m + 1 - sizes)))


def exact_moment(params: Params, variable: str, k: int) -> float:
    """k-th moment of one of the missing counts from its exact pmf."""
    if k < 0:
        raise DomainError(f"moment order must be >= 0, got {k}")
    dist = exact_distribution(params)
    pmfs = {
        "y": dist.pmf_y,
        "z": dist.pmf_z,
        "w": dist.pmf_w,
        "y_tilde": dist.pmf_y_tilde,
        "z_tilde": dist.pmf_z_tilde,
    }
    key = variable.lower()
    if key not in pmfs:
        raise DomainError(f"unknown variable {variable!r}; expected one of {sorted(pmfs)}")
    pmf = pmfs[key]
    return float(np.dot(np.arange(pmf.size, dtype=float) ** k, pmf))


def exact_chain_satisfaction(entries: tuple[int, ...], p: float, ) -> float:
    """Probability that a chain is satisfied (no adjacent pair fully included),
    by enumeration over the chain's distinct positions.  Repeated entries are
    honored: a repeated adjacent pair forces that position out of A.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly in (0, 1), got {p!r}")
    distinct = sorted(set(entries))
    if len(distinct) > ENUMERATION_GUARD:
        raise ResourceLimitError(f"chain touches {len(distinct)} positions, guard is {ENUMERATION_GUARD}")
    index = {value: i for i, value in enumerate(distinct)}
    total = 0.0
    for mask in range(1 << len(distinct)):
        included = [(mask >> index[value]) & 1 for value in entries]
        if any(a and b for a, b in zip(included, included[1:])):
            continue
        k = mask.bit_count()
        total += p**k * (1.0 - p) ** (len(distinct) - k)
    return total


def exact_adjacent_free_prob(p: float, k: int) -> float:
    """Probability that a length-k Bernoulli(p) bit string has no two adjacent
    ones; independent enumeration oracle for the chain recurrence.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly in (0, 1), got {p!r}")
    if k < 0:
        raise DomainError(f"string length must be >= 0, got {k}")
    if k > ENUMERATION_GUARD:
        raise ResourceLimitError(f"string length {k} exceeds guard {ENUMERATION_GUARD}")
    if k == 0:
        return 1.0
    strings = np.arange(1 << k, dtype=np.uint64)
    free = (strings & (strings >> np.uint64(1))) == 0
    ones = np.bitwise_count(strings[free]).astype(np.int64)
    counts = np.bincount(ones, minlength=k + 1)
    sizes = np.arange(k + 1)
    return float(np.dot(counts, p**sizes * (1.0 - p) ** (k - sizes)))
