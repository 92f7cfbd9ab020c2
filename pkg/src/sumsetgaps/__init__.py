"""Missing-summand statistics of random sumsets.

Draw A from {0, ..., N} by independent Bernoulli(p) inclusion and form
A + A = {a + b : a, b in A}.  This package computes, exactly and by
simulation, how many values of {0, ..., 2N} the sumset misses: per-position
probabilities and moments, the two-position joint probability through
reflection orbits, the large-N second-moment series with rigorous truncation,
exponential tail bounds, an exhaustive-enumeration oracle, and a seeded
Monte Carlo engine with figure-data export.
"""

from .bounds import (
    kth_moment_upper,
    kth_moment_upper_improved,
    tail_lower,
    tail_upper_chernoff,
    tail_upper_improved,
)
from .chains import (
    ChainProbTable,
    SpectralConstants,
    chain_prob_closed,
    chain_prob_table,
    chain_values,
    spectral_constants,
)
from .errors import DomainError, ResourceLimitError
from .exact import (
    convolution_discrepancy_bound,
    expected_missing_left,
    expected_missing_left_limit,
    expected_missing_total,
    expected_missing_total_limit,
    fringe_truncation_bound,
    inclusion_prob,
)
from .model import (
    MissingCounts,
    Params,
    SubsetSample,
    SumsetMask,
    compute_sumset,
    missing_counts,
)
from .montecarlo import (
    McConfig,
    McSummary,
    convolution_check,
    mc_error_estimate,
    normalized_cdf,
    run,
    tail_estimate,
)
from .oracle import (
    OracleDistribution,
    exact_adjacent_free_prob,
    exact_chain_satisfaction,
    exact_distribution,
    exact_moment,
    exact_pair_missing,
)
from .orbits import (
    Orbit,
    PairGeometry,
    orbit,
    orbit_csv_rows,
    pair_geometry,
    pair_missing_prob,
    pair_missing_prob_upper,
    twist_degree,
)
from .series import (
    SeriesResult,
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

__version__ = "0.1.0"
