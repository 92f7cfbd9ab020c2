import math

import numpy as np
import pytest

from sumsetgaps.chains import chain_values
from sumsetgaps.errors import DomainError
from sumsetgaps.exact import expected_missing_left, expected_missing_left_limit
from sumsetgaps.model import Params
from sumsetgaps.oracle import exact_moment
from sumsetgaps.orbits import pair_missing_prob, twist_degree
from sumsetgaps.series import (
    floor_geometric_sum,
    leading_order_approx,
    n_for_tolerance,
    second_moment_limit,
    second_moment_partial,
    tail_remainder_bound,
    total_second_moment_limit,
    variance_limit,
    wedge_boundary,
    wedge_constants,
)


def floor_geometric_direct(alpha, beta, k, l, terms=6000):
    return math.fsum(alpha**n * beta ** (((l - 1) * n + k) // l) for n in range(terms))


class TestFloorGeometric:
    def test_anchor(self):
        assert floor_geometric_sum(0.5, 0.5, 1, 2) == pytest.approx(10 / 7, abs=1e-14)

    def test_alpha_zero(self):
        for beta, k, l in ((0.5, 0, 1), (-0.9, 2, 5), (0.1, 1, 3)):
            assert floor_geometric_sum(0.0, beta, k, l) == pytest.approx(1.0, abs=1e-14)

    def test_beta_near_one(self):
        assert floor_geometric_sum(0.3, 1 - 1e-9, 1, 4) == pytest.approx(1 / 0.7, rel=1e-6)

    def test_random_sweep_vs_direct(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            alpha = rng.uniform(-0.95, 0.95)
            beta = rng.uniform(-0.95, 0.95)
            l = int(rng.integers(1, 8))
            k = int(rng.integers(0, l))
            assert floor_geometric_sum(alpha, beta, k, l) == pytest.approx(
                floor_geometric_direct(alpha, beta, k, l), abs=1e-10
            )

    def test_domain(self):
        with pytest.raises(DomainError):
            floor_geometric_sum(1.0, 0.5, 0, 1)
        with pytest.raises(DomainError):
            floor_geometric_sum(0.5, -1.0, 0, 1)
        with pytest.raises(DomainError):
            floor_geometric_sum(0.5, 0.5, 2, 2)


class TestWedges:
    def test_constants_at_half(self):
        u1, v1 = wedge_constants(0.5, 1)
        assert u1 == pytest.approx(0.75, abs=1e-12)
        assert v1 == pytest.approx(8 / 9, abs=1e-12)

    def test_constants_in_unit_interval(self):
        for p in (0.1, 0.5, 0.9):
            for l in range(1, 61):
                u, v = wedge_constants(p, l)
                assert 0.0 < u < 1.0
                assert 0.0 < v < 1.0

    def test_product_identity(self):
        # U_l V_l a_{2l+2}^(l-1) a_{2l}^(l+1) == a_{2l}^l a_{2l+2}^l
        for p in (0.3, 0.7):
            a = chain_values(p, 64)
            for l in range(1, 30):
                u, v = wedge_constants(p, l)
                lhs = u * v * a[2 * l + 2] ** (l - 1) * a[2 * l] ** (l + 1)
                rhs = a[2 * l] ** l * a[2 * l + 2] ** l
                assert lhs == pytest.approx(rhs, rel=1e-10)

    @pytest.mark.parametrize("p", [0.3, 0.5])
    def test_odd_pair_probability_identity(self, p):
        params = Params(p, 200)
        for m in range(1, 200, 2):
            for n in range(1, m, 2):
                l = twist_degree(m, n)
                u, v = wedge_constants(p, l)
                value = math.exp(((m + 1) / 2) * math.log(u) + ((n + 1) / 2) * math.log(v))
                assert value == pytest.approx(
                    pair_missing_prob(m, n, params), abs=1e-12
                )

    def test_boundary_values(self):
        assert wedge_boundary(17, 4) == 13
        for m in (0, 3, 100):
            assert wedge_boundary(m, 1) == 0

    def test_boundary_characterizes_twist(self):
        for m in range(1, 201):
            for l_prime in range(1, 9):
                g = wedge_boundary(m, l_prime)
                for n in range(m):
                    assert (twist_degree(m, n) >= l_prime) == (n >= g)

    def test_domain(self):
        with pytest.raises(DomainError):
            wedge_constants(0.5, 0)
        with pytest.raises(DomainError):
            wedge_boundary(-1, 2)


class TestSecondMomentSeries:
    def test_half_value_sandwich(self):
        result = second_moment_limit(0.5, 1e-10)
        mean = expected_missing_left_limit(0.5)
        assert result.value >= mean**2
        from sumsetgaps.bounds import kth_moment_upper_improved

        assert result.value <= kth_moment_upper_improved(0.5, 2)
        assert result.remainder_bound < 1e-10

    @pytest.mark.parametrize("p", [0.3, 0.5, 0.8])
    @pytest.mark.parametrize("n_max", [4, 9, 12])
    def test_double_sum_matches_oracle_second_moment(self, p, n_max):
        params = Params(p, n_max)
        pair_total = math.fsum(
            pair_missing_prob(m, n, params)
            for m in range(1, n_max + 1)
            for n in range(m)
        )
        double_sum = expected_missing_left(params) + 2 * pair_total
        assert double_sum == pytest.approx(exact_moment(params, "y", 2), abs=1e-12)

    def test_remainder_bounds_observed_increment(self):
        for p in (0.2, 0.5):
            coarse = second_moment_limit(p, 1e-4)
            fine = second_moment_limit(p, 1e-12)
            assert fine.value >= coarse.value - 1e-12
            assert fine.value - coarse.value <= coarse.remainder_bound
            assert coarse.remainder_bound >= 0

    def test_domain(self):
        with pytest.raises(DomainError):
            second_moment_limit(0.5, 0.0)
        with pytest.raises(DomainError):
            second_moment_partial(0.5, 0)


class TestNormalizedPartialSums:
    def test_small_p_first_term(self):
        assert second_moment_partial(1e-3, 1) == pytest.approx(4 / 3, abs=5e-3)

    def test_small_p_matches_telescoped_limit(self):
        for trunc in range(1, 11):
            telescoped = 2 - 2 / (2 * trunc + 1)
            assert second_moment_partial(1e-3, trunc) == pytest.approx(telescoped, abs=1e-2)

    def test_telescoping_identity(self):
        for trunc in (1, 5, 50):
            direct = sum(4 / (4 * l * l - 1) for l in range(1, trunc + 1))
            assert direct == pytest.approx(2 - 2 / (2 * trunc + 1), abs=1e-12)

    def test_monotone_in_length(self):
        values = [second_moment_partial(0.3, trunc) for trunc in range(1, 12)]
        assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


class TestLeadingOrder:
    def test_anchor(self):
        assert leading_order_approx(0.5) == pytest.approx(59.0, abs=1e-12)

    def test_ratio_tends_to_one(self):
        gaps = []
        for p in (0.2, 0.1, 0.05):
            value = second_moment_limit(p, 1e-6 / p**4).value
            gaps.append(abs(leading_order_approx(p) / value - 1))
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 0.01

    def test_quartic_term_dominates_at_small_p(self):
        p = 0.02
        assert abs(leading_order_approx(p) - 4 / p**4) / (4 / p**4) < 1e-3


class TestTailRemainder:
    @pytest.mark.parametrize("p", [0.3, 0.5])
    @pytest.mark.parametrize("n_max", [10, 100, 400])
    def test_closed_form_vs_direct(self, p, n_max):
        q = math.sqrt(1 - p * p)
        direct = math.fsum(
            (2 * n + 1) * q ** (n + 1) for n in range(n_max + 1, n_max + 5000)
        )
        assert tail_remainder_bound(p, n_max) == pytest.approx(direct, rel=1e-12)

    def test_monotone_decreasing(self):
        values = [tail_remainder_bound(0.4, n) for n in range(0, 200, 10)]
        assert all(b < a for a, b in zip(values, values[1:]))


class TestNForTolerance:
    def test_anchor(self):
        assert n_for_tolerance(0.5, 0.01) == 76

    def test_monotonicity(self):
        assert n_for_tolerance(0.5, 0.001) > n_for_tolerance(0.5, 0.01)
        assert n_for_tolerance(0.1, 0.01) > n_for_tolerance(0.5, 0.01)

    def test_reaches_requested_tolerance_up_to_constant(self):
        # the endpoint formula is a rough approximation; constant measured over the grid
        for p in (0.1, 0.3, 0.5, 0.7):
            for eps in (1e-1, 1e-3, 1e-6):
                assert tail_remainder_bound(p, n_for_tolerance(p, eps)) <= 25 * eps

    def test_domain(self):
        with pytest.raises(DomainError):
            n_for_tolerance(0.5, 0.0)


class TestVarianceAndTotals:
    def test_variance_positive_at_half(self):
        variance, ratio = variance_limit(0.5, 1e-9)
        assert variance > 0
        assert ratio == pytest.approx(variance / 25.0, rel=1e-12)

    def test_ratio_decreases_towards_small_p(self):
        ratios = [variance_limit(p, 1e-8)[1] for p in (0.32, 0.16, 0.08, 0.05)]
        assert all(b < a for a, b in zip(ratios, ratios[1:]))

    def test_ratio_regression_anchor(self):
        # computed once from the series; guards against silent regressions
        assert variance_limit(0.05, 1e-10)[1] == pytest.approx(0.0507198, abs=2e-6)
        assert variance_limit(0.05, 1e-10)[1] < 0.06

    def test_total_second_moment_composition(self):
        result = second_moment_limit(0.5, 1e-10)
        assert total_second_moment_limit(0.5, 1e-10) == pytest.approx(
            2 * result.value + 50.0, abs=1e-8
        )

    def test_total_second_moment_leading_constant(self):
        p = 0.02
        assert p**4 * total_second_moment_limit(p, 1e-6 / p**4) == pytest.approx(
            16.0, rel=0.1
        )
