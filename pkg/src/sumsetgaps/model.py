"""Core domain types: random subsets of {0..N}, their sumsets, missing-summand counts.

A sample is a subset A of {0, ..., N} drawn by independent Bernoulli(p)
inclusion per element.  Its sumset A+A = {a+b : a, b in A} lives in
{0, ..., 2N}; everything else in this package studies how many of those
2N+1 values are *not* hit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Params",
    "SubsetSample",
    "SumsetMask",
    "MissingCounts",
    "compute_sumset",
    "missing_counts",
]


@dataclass(frozen=True)
class Params:
    """Experiment definition: inclusion probability ``p`` and endpoint ``n_max``.

    ``p`` must lie strictly inside (0, 1); the degenerate endpoints are
    rejected because downstream closed forms divide by both p and 1-p.
    """

    p: float
    n_max: int

    def __post_init__(self):
        if not isinstance(self.n_max, (int, np.integer)):
            raise DomainError(f"n_max must be an integer, got {self.n_max!r}")
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie strictly in (0, 1), got {self.p!r}")
        if self.n_max < 0:
            raise DomainError(f"n_max must be >= 0, got {self.n_max}")
        object.__setattr__(self, "n_max", int(self.n_max))
        object.__setattr__(self, "p", float(self.p))


def _as_frozen_bits(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=bool)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{name} must be a non-empty one-dimensional bit vector")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SubsetSample:
    """Membership bit vector for a subset of {0, ..., n_max}; index i <=> element i."""

    members: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "members", _as_frozen_bits(self.members, "members"))

    @property
    def n_max(self) -> int:
        return self.members.size - 1

    def positions(self) -> np.ndarray:
        return np.flatnonzero(self.members)


@dataclass(frozen=True)
class SumsetMask:
    """Membership bit vector for A+A over {0, ..., 2*n_max}; always odd length."""

    members: np.ndarray

    def __post_init__(self):
        arr = _as_frozen_bits(self.members, "members")
        if arr.size % 2 == 0:
            raise DomainError(f"sumset mask must have odd length 2*n_max+1, got {arr.size}")
        object.__setattr__(self, "members", arr)

    @property
    def n_max(self) -> int:
        return (self.members.size - 1) // 2


@dataclass(frozen=True)
class MissingCounts:
    """Missing-summand tallies of one sample.

    ``y``/``z``/``w`` count the values of {0..N} / {N+1..2N} / {0..2N} absent
    from A+A (so w = y + z always).  ``y_tilde``/``z_tilde`` restrict to the
    outer windows [0, floor(N/2)] and [floor(3N/2)+1, 2N], whose counts are
    exactly independent of each other.
    """

    y: int
    z: int
    w: int
    y_tilde: int
    z_tilde: int


def _bits_to_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _int_to_bits(value: int, width: int) -> np.ndarray:
    nbytes = (width + 7) // 8
    raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:width].astype(bool)


def compute_sumset(sample: SubsetSample) -> SumsetMask:
    """Exact sumset of a sample: bit s is set iff s = a + b for a, b in A (a = b allowed).

    Accumulates the membership word OR-ed into itself shifted by each element,
    so the cost is one word-shift per member rather than |A|^2 pair visits.
    """
    width = 2 * sample.n_max + 1
    word = _bits_to_int(sample.members)
    acc = 0
    for a in sample.positions():
        acc |= word << int(a)
    return SumsetMask(_int_to_bits(acc, width))


def missing_counts(sumset: SumsetMask, params: Params) -> MissingCounts:
    """Count unset sumset positions in the five windows tracked by MissingCounts.

    For n_max = 0 the right-fringe windows are empty and z, z_tilde are 0.
    """
    n = params.n_max
    if sumset.members.size != 2 * n + 1:
        raise DomainError(
            f"sumset length {sumset.members.size} inconsistent with n_max={n} "
            f"(expected {2 * n + 1})"
        )
    absent = ~sumset.members
    y = int(np.count_nonzero(absent[: n + 1]))
    z = int(np.count_nonzero(absent[n + 1 : 2 * n + 1]))
    y_tilde = int(np.count_nonzero(absent[: n // 2 + 1]))
    z_tilde = int(np.count_nonzero(absent[(3 * n) // 2 + 1 : 2 * n + 1]))
    return MissingCounts(y=y, z=z, w=y + z, y_tilde=y_tilde, z_tilde=z_tilde)
