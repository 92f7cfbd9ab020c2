"""Reflection orbits and the exact probability that two positions are both missing.

Fix 0 <= n < m.  Both m and n are absent from A+A exactly when, for every x,
not both endpoints of the pairs (x, m-x) and (x, n-x) lie in A.  Chasing a
starting value r through the alternating reflections x -> m-x and x -> n-x
while staying nonnegative traces an *orbit*: a chain of positions whose
simultaneous satisfaction is what the event requires.  Orbits from different
starting values are equal, mutual reverses, or disjoint, so the event
probability factorizes over orbits.

An orbit is *loopless* (two free ends, all entries distinct) or *looped* (it
terminates by reflecting a value onto itself; the repeated value is kept as
the final entry, e.g. (16, 1, 11, 6, 6) for m=17, n=12).  Termination uses
consecutive-repeat detection: the next reflection either goes negative
(loopless stop) or reproduces the current value (looped stop).

The bookkeeping is governed by the twist degree l = ceil((n+1)/(m-n)):
loopless orbits have length 2l or 2(l+1), looped ones l+1 or l+2, and the
counts of each kind follow from d1 = (m+1) - l(m-n), d2 = l(m-n) - (n+1) and
the parities s = (m, n, l) mod 2.  A loopless orbit of length k is satisfied
with probability a_k; a looped one with probability (1-p) * a_{k-2}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import chain_values, spectral_constants
from .errors import DomainError
from .model import Params

__all__ = [
    "Orbit",
    "PairGeometry",
    "orbit",
    "pair_geometry",
    "pair_missing_prob",
    "pair_missing_prob_upper",
    "orbit_csv_rows",
    "twist_degree",
]


@dataclass(frozen=True)
class Orbit:
    """One reflection orbit; ``entries`` keeps the looped repeat as its last item."""

    entries: tuple[int, ...]
    looped: bool

    @property
    def length(self) -> int:
        return len(self.entries)

    def core_entries(self) -> tuple[int, ...]:
        """Entries with the looped repeat dropped (the distinct positions touched)."""
        return self.entries[:-1] if self.looped else self.entries

    def canonical(self) -> tuple[int, ...]:
        """Reversal-invariant key; looped orbits have no reverse and are their own key."""
        if self.looped:
            return self.entries
        return min(self.entries, self.entries[::-1])


@dataclass(frozen=True)
class PairGeometry:
    """Combinatorial descriptor of a pair (m, n): twist degree, band widths, orbit counts.

    ``loopless_long``/``loopless_short`` count loopless orbits of length
    2(l+1) / 2l with reversals counted separately (hence always even);
    ``looped_long``/``looped_short`` count looped orbits of length l+2 / l+1
    (each 0 or 1).  Per band: d1 = loopless_long + looped_long and
    d2 = loopless_short + looped_short.
    """

    m: int
    n: int
    l: int
    d1: int
    d2: int
    s: tuple[int, int, int]
    loopless_long: int
    loopless_short: int
    looped_long: int
    looped_short: int


def _check_pair(m: int, n: int) -> None:
    if not 0 <= n < m:
        raise DomainError(f"need 0 <= n < m, got (m, n) = ({m}, {n})")


def twist_degree(m: int, n: int) -> int:
    """l = ceil((n+1)/(m-n)), the number of twists in the reflection diagram."""
    _check_pair(m, n)
    return -((n + 1) // (n - m))


def orbit(r: int, m: int, n: int) -> Orbit:
    """Orbit of r under alternating reflections x -> m-x (first) and x -> n-x.

    Requires n < r <= m.  Stops looped as soon as a reflection fixes the
    current value (the repeat is kept), loopless when it would go negative.
    """
    _check_pair(m, n)
    if not n < r <= m:
        raise DomainError(f"starting value {r} outside ({n}, {m}]")
    entries = [r]
    looped = False
    # Odd-indexed entries strictly decrease, so at most ~2(m+2) steps occur.
    for _ in range(2 * (m + 2)):
        t = len(entries) + 1
        prev = entries[-1]
        nxt = (m - prev) if t % 2 == 0 else (n - prev)
        if nxt < 0:
            break
        if nxt == prev:
            entries.append(nxt)
            looped = True
            break
        entries.append(nxt)
    else:
        raise AssertionError(f"orbit of {r} under ({m}, {n}) failed to terminate")
    return Orbit(entries=tuple(entries), looped=looped)


def pair_geometry(m: int, n: int) -> PairGeometry:
    """Twist degree, band widths and orbit counts for a pair, by parity case."""
    _check_pair(m, n)
    l = twist_degree(m, n)
    d1 = (m + 1) - l * (m - n)
    d2 = l * (m - n) - (n + 1)
    s = (m % 2, n % 2, l % 2)
    if s[0] == 1 and s[1] == 1:
        c1, c2 = 0, 0
    elif s[0] == 0 and s[1] == 0:
        c1, c2 = 1, 1
    elif s[0] == 1:  # m odd, n even: the single loop sits in the band of odd width
        c1, c2 = (1, 0) if s[2] == 1 else (0, 1)
    else:  # m even, n odd
        c1, c2 = (0, 1) if s[2] == 1 else (1, 0)
    return PairGeometry(
        m=m,
        n=n,
        l=l,
        d1=d1,
        d2=d2,
        s=s,
        loopless_long=d1 - c1,
        loopless_short=d2 - c2,
        looped_long=c1,
        looped_short=c2,
    )


def pair_missing_prob(m: int, n: int, params: Params) -> float:
    """Exact P(m, n both missing from A+A) for 0 <= n < m <= n_max.

    Evaluated from the closed form: a_{2l+2}^(d1//2) * a_{2l}^(d2//2) times a
    parity-case prefactor (the looped-orbit contributions), not by
    multiplying per-orbit probabilities; orbits exist for diagnostics and
    tests.  The m <= n_max guard matters: the chain recurrence assumes every
    touched position can actually be sampled.
    """
    _check_pair(m, n)
    if m > params.n_max:
        raise DomainError(f"m={m} exceeds n_max={params.n_max}")
    p = params.p
    l = -((n + 1) // (n - m))
    d1 = (m + 1) - l * (m - n)
    d2 = l * (m - n) - (n + 1)
    a = chain_values(p, 2 * l + 2)
    value = a[2 * l + 2] ** (d1 // 2) * a[2 * l] ** (d2 // 2)
    s = (m % 2, n % 2, l % 2)
    if s in ((1, 0, 1), (0, 1, 0)):
        value *= (1.0 - p) * a[l]
    elif s in ((1, 0, 0), (0, 1, 1)):
        value *= (1.0 - p) * a[l - 1]
    elif s in ((0, 0, 0), (0, 0, 1)):
        value *= (1.0 - p) ** 2 * a[l] * a[l - 1]
    return float(value)


def pair_missing_prob_upper(m: int, n: int, p: float) -> float:
    """Decay bound lambda_1^(1 + (m+n)/2); dominates the exact value once l >= 2."""
    _check_pair(m, n)
    lam1 = spectral_constants(p).lambda1
    return lam1 ** (1.0 + (m + n) / 2.0)


def orbit_csv_rows(m: int, n: int) -> list[tuple[int, int, int, str, bool]]:
    """Orbit inventory rows (m, n, r, entries joined by '-', looped) for diagram tooling."""
    _check_pair(m, n)
    rows = []
    for r in range(n + 1, m + 1):
        orb = orbit(r, m, n)
        rows.append((m, n, r, "-".join(str(e) for e in orb.entries), orb.looped))
    return rows
