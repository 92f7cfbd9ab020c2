import math

import pytest

from sumsetgaps.errors import DomainError
from sumsetgaps.exact import (
    convolution_discrepancy_bound,
    expected_missing_left,
    expected_missing_left_limit,
    expected_missing_total,
    expected_missing_total_limit,
    fringe_truncation_bound,
    inclusion_prob,
)
from sumsetgaps.model import Params
from sumsetgaps.oracle import exact_moment

P_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)


def test_inclusion_anchors():
    assert inclusion_prob(0, Params(0.5, 5)) == pytest.approx(0.5, abs=1e-15)
    assert inclusion_prob(1, Params(0.5, 5)) == pytest.approx(0.25, abs=1e-15)
    # brute force over subsets of {0..5} gives 1 - 0.75^3
    assert inclusion_prob(5, Params(0.5, 5)) == pytest.approx(0.578125, abs=1e-15)
    assert inclusion_prob(5, Params(0.5, 9)) == pytest.approx(0.578125, abs=1e-15)


def test_inclusion_out_of_range():
    params = Params(0.5, 4)
    with pytest.raises(DomainError):
        inclusion_prob(-1, params)
    with pytest.raises(DomainError):
        inclusion_prob(9, params)


@pytest.mark.parametrize("p", P_GRID)
@pytest.mark.parametrize("n_max", [0, 1, 2, 7, 40])
def test_inclusion_symmetry(p, n_max):
    params = Params(p, n_max)
    for n in range(2 * n_max + 1):
        assert inclusion_prob(n, params) == pytest.approx(
            inclusion_prob(2 * n_max - n, params), abs=1e-15
        )


@pytest.mark.parametrize("p", P_GRID)
@pytest.mark.parametrize("n_max", [0, 1, 2, 3, 10, 11, 50, 51])
def test_first_moments_match_direct_sums(p, n_max):
    params = Params(p, n_max)
    miss = [1.0 - inclusion_prob(n, params) for n in range(2 * n_max + 1)]
    assert expected_missing_left(params) == pytest.approx(
        math.fsum(miss[: n_max + 1]), abs=1e-12
    )
    assert expected_missing_total(params) == pytest.approx(math.fsum(miss), abs=1e-12)


def test_expected_left_anchors():
    for p in P_GRID:
        assert expected_missing_left(Params(p, 0)) == pytest.approx(1 - p, abs=1e-14)
        assert expected_missing_total(Params(p, 0)) == pytest.approx(1 - p, abs=1e-14)
    assert expected_missing_left(Params(0.5, 2)) == pytest.approx(1.625, abs=1e-15)
    assert expected_missing_left(Params(0.5, 2)) == pytest.approx(5 - 0.75 * 4.5, abs=1e-15)
    assert expected_missing_left_limit(0.5) == pytest.approx(5.0, abs=1e-14)
    assert expected_missing_total_limit(0.5) == pytest.approx(10.0, abs=1e-14)


def test_finite_moment_matches_oracle_expectation():
    params = Params(0.5, 2)
    assert expected_missing_total(params) == pytest.approx(
        exact_moment(params, "w", 1), abs=1e-13
    )


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_left_moment_monotone_to_limit(p):
    limit = expected_missing_left_limit(p)
    values = [expected_missing_left(Params(p, n)) for n in range(0, 120)]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert all(v <= limit + 1e-12 for v in values)
    assert limit - values[-1] < 1e-2 / p**2


def test_fringe_truncation_bound_values():
    assert fringe_truncation_bound(Params(0.5, 0)) == pytest.approx(8.0, abs=1e-12)
    assert fringe_truncation_bound(Params(0.5, 200)) == pytest.approx(
        8 * 0.75**50, rel=1e-12
    )


@pytest.mark.parametrize("p", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("n_max", range(0, 15))
def test_fringe_bound_dominates_oracle_gap(p, n_max):
    params = Params(p, n_max)
    gap = exact_moment(params, "y", 1) - exact_moment(params, "y_tilde", 1)
    assert -1e-12 <= gap <= fringe_truncation_bound(params)


def test_convolution_bound_values():
    assert convolution_discrepancy_bound(Params(0.5, 0)) == pytest.approx(32.0, abs=1e-12)
    assert convolution_discrepancy_bound(Params(0.5, 200)) == pytest.approx(
        32 * 0.75**50, rel=1e-12
    )
