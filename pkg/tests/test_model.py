import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumsetgaps.errors import DomainError
from sumsetgaps.model import (
    MissingCounts,
    Params,
    SubsetSample,
    SumsetMask,
    compute_sumset,
    missing_counts,
)


def sample_from(positions, n_max):
    members = np.zeros(n_max + 1, dtype=bool)
    members[list(positions)] = True
    return SubsetSample(members)


def test_params_validation():
    Params(0.5, 0)
    for bad_p in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            Params(bad_p, 3)
    with pytest.raises(DomainError):
        Params(0.5, -1)
    with pytest.raises(DomainError):
        Params(0.5, 2.5)


def test_sumset_full_interval():
    mask = compute_sumset(sample_from([0, 1, 2], 2))
    assert mask.members.tolist() == [True] * 5


def test_sumset_empty_sample():
    mask = compute_sumset(sample_from([], 2))
    assert not mask.members.any()


def test_sumset_even_elements():
    mask = compute_sumset(sample_from([0, 2], 2))
    assert np.flatnonzero(mask.members).tolist() == [0, 2, 4]


def test_missing_counts_examples():
    params = Params(0.5, 2)
    full = missing_counts(compute_sumset(sample_from([0, 1, 2], 2)), params)
    assert (full.y, full.z, full.w) == (0, 0, 0)

    gaps = missing_counts(compute_sumset(sample_from([0, 2], 2)), params)
    assert (gaps.y, gaps.z, gaps.w) == (1, 1, 2)
    assert (gaps.y_tilde, gaps.z_tilde) == (1, 0)

    empty = missing_counts(compute_sumset(sample_from([], 2)), params)
    assert (empty.y, empty.z, empty.w) == (3, 2, 5)


def test_missing_counts_length_mismatch():
    mask = compute_sumset(sample_from([0], 3))
    with pytest.raises(DomainError):
        missing_counts(mask, Params(0.5, 4))


def test_sumset_mask_must_be_odd_length():
    with pytest.raises(DomainError):
        SumsetMask(np.zeros(4, dtype=bool))


def test_members_are_frozen():
    sample = sample_from([0, 1], 3)
    with pytest.raises(ValueError):
        sample.members[0] = False


def test_n_zero_right_fringe_is_empty():
    params = Params(0.5, 0)
    counts = missing_counts(compute_sumset(sample_from([], 0)), params)
    assert (counts.y, counts.z, counts.w, counts.y_tilde, counts.z_tilde) == (1, 0, 1, 1, 0)


@given(st.lists(st.booleans(), min_size=1, max_size=17))
@settings(max_examples=300, deadline=None)
def test_sumset_matches_pairwise_reconstruction(bits):
    sample = SubsetSample(np.array(bits, dtype=bool))
    n = sample.n_max
    expected = np.zeros(2 * n + 1, dtype=bool)
    positions = sample.positions()
    for a in positions:
        for b in positions:
            expected[a + b] = True
    assert np.array_equal(compute_sumset(sample).members, expected)


@given(st.floats(0.01, 0.99), st.lists(st.booleans(), min_size=1, max_size=17))
@settings(max_examples=300, deadline=None)
def test_missing_count_invariants(p, bits):
    sample = SubsetSample(np.array(bits, dtype=bool))
    n = sample.n_max
    counts = missing_counts(compute_sumset(sample), Params(p, n))
    assert counts.w == counts.y + counts.z
    assert 0 <= counts.y <= n + 1
    assert 0 <= counts.z <= n
    assert counts.w <= 2 * n + 1
    assert counts.y_tilde <= counts.y
    assert counts.z_tilde <= counts.z


def test_missing_counts_is_plain_data():
    counts = MissingCounts(y=1, z=2, w=3, y_tilde=0, z_tilde=1)
    assert counts == MissingCounts(y=1, z=2, w=3, y_tilde=0, z_tilde=1)
