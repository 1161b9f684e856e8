# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

"""
Studies
~~~~~~~

Each study turns one asymptotic statement into a table computed by the exact
oracle. Rows follow the order of the input grids, so reruns are identical.
"""

import logging
import math
from dataclasses import dataclass, field

from soca.config import DEFAULT_ETA, SIGMA_TOLERANCE
from soca.exceptions import DegenerateSigmaError, EntropyOrderError, RateEquationError
from soca.gaussian import std_normal_cdf
from soca.model import MixedSourceSpec, SourceStats, entropy, source_stats
from soca.rates import RateQuery, first_order_rate, l_range, solve_second_order, two_source_rate
from soca.spectrum import (
    fidelity_converse_rhs,
    min_compression_length,
    optimal_fidelity,
    spectral_tail,
)
from soca.utils.grids import geometric_grid

DEFAULT_N_GRID = tuple(geometric_grid(64, 4096))

BERRY_ESSEEN_COLUMNS = ("n", "L", "empirical", "gaussian", "abs_diff", "abs_diff_times_sqrt_n")
DOMINANCE_COLUMNS = ("n", "tail_low_entropy_source", "tail_high_entropy_source")
CONVERGENCE_COLUMNS = ("n", "log2_M", "b_hat", "b_star", "gap")
DIVERGENCE_COLUMNS = ("n", "normalized")
FIGURE1_COLUMNS = ("eps", "L", "lower_bound", "upper_bound")
CONVERSE_COLUMNS = ("gamma", "optimal", "converse_rhs")


@dataclass
class Study:
    name: str
    columns: tuple
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name} rows have {len(self.columns)} cells, got {len(values)}.")
        self.rows.append(tuple(values))

    def column(self, name):
        position = self.columns.index(name)
        return [row[position] for row in self.rows]


def berry_esseen_study(spectrum, l_grid, n_grid):
    """Exact tail at ``-n S + sqrt(n) L`` against its Gaussian limit ``Phi(L / sigma)``."""

    stats = source_stats(spectrum)
    if stats.sigma <= SIGMA_TOLERANCE:
        raise DegenerateSigmaError("The source has zero information variance; its tail is a step.")

    spec = MixedSourceSpec.memoryless(spectrum.probs)
    study = Study("berry-esseen", BERRY_ESSEEN_COLUMNS, metadata={"S": stats.entropy_S, "sigma": stats.sigma})
    for n in n_grid:
        root = math.sqrt(n)
        for L in l_grid:
            empirical = spectral_tail(spec, n, -n * stats.entropy_S + root * L)
            gaussian = std_normal_cdf(L / stats.sigma)
            difference = abs(empirical - gaussian)
            study.add(n, L, empirical, gaussian, difference, difference * root)
    return study


def dominance_study(spectrum1, spectrum2, c, n_grid):
    """Tails of each source measured at the other's entropy, shifted by ``sqrt(n) c``."""

    high, low = entropy(spectrum1), entropy(spectrum2)
    if high <= low:
        raise EntropyOrderError(f"The first source needs the larger entropy, got {high} <= {low}.")

    spec1 = MixedSourceSpec.memoryless(spectrum1.probs)
    spec2 = MixedSourceSpec.memoryless(spectrum2.probs)
    study = Study("dominance", DOMINANCE_COLUMNS)
    for n in n_grid:
        shift = math.sqrt(n) * c
        study.add(
            n,
            spectral_tail(spec2, n, -n * high - shift),
            spectral_tail(spec1, n, -n * low - shift),
        )
    return study


def _predicted_rate(spec, eps, eta):
    a = first_order_rate(spec, eps, eta)
    try:
        result = solve_second_order(spec, RateQuery(a, eps), eta)
    except DegenerateSigmaError:
        if len(spec.components) != 1:
            raise
        # A flat memoryless spectrum has a single level; the oracle is exact and b* = 0.
        logging.debug("Flat memoryless spectrum: using the exact single-level rate b*=0")
        return a, 0.0

    if not result.is_finite:
        raise RateEquationError(f"The second order rate at a={a} is not finite.", details=result)
    return a, result.b_star


def convergence_study(spec, eps, n_grid, eta=DEFAULT_ETA):
    """Normalized oracle length ``(log2 M_n - n a) / sqrt(n)`` against the predicted ``b*``."""

    a, b_star = _predicted_rate(spec, eps, eta)
    study = Study("converge", CONVERGENCE_COLUMNS, metadata={"a": a, "b_star": b_star})
    for n in n_grid:
        log2_M = min_compression_length(spec, n, eps).log2_M
        b_hat = (log2_M - n * a) / math.sqrt(n)
        study.add(n, log2_M, b_hat, b_star, abs(b_hat - b_star))
    return study


def first_order_divergence_check(spec, eps, wrong_a, n_grid):
    """Oracle length normalized at a rate ``wrong_a``; drifts off to +-inf unless it is the first order rate."""

    study = Study("diverge", DIVERGENCE_COLUMNS, metadata={"a": wrong_a})
    for n in n_grid:
        log2_M = min_compression_length(spec, n, eps).log2_M
        study.add(n, (log2_M - n * wrong_a) / math.sqrt(n))
    return study


def figure1_curve(sigma1, sigma2, t, eps_grid, eta=DEFAULT_ETA):
    """Equal-entropy rate ``L`` over ``eps`` with the interval that must contain it."""

    # L does not depend on the shared entropy.
    stats1 = SourceStats(1.0, sigma1 * sigma1, sigma1)
    stats2 = SourceStats(1.0, sigma2 * sigma2, sigma2)

    study = Study("figure1", FIGURE1_COLUMNS, metadata={"sigma1": sigma1, "sigma2": sigma2, "t": t})
    for eps in eps_grid:
        L = two_source_rate(stats1, stats2, t, eps, eta).b_star
        bounds = l_range(sigma1, sigma2, eps)
        if not bounds.lower - 1e-9 <= L <= bounds.upper + 1e-9:
            logging.warning(f"L={L} at eps={eps} leaves [{bounds.lower}, {bounds.upper}]")
        study.add(eps, L, bounds.lower, bounds.upper)
    return study


def converse_study(spec, n, eps, gamma_grid):
    """Optimal fidelity at the oracle length against the converse bound on a ``gamma`` grid."""

    length = min_compression_length(spec, n, eps)
    optimal = optimal_fidelity(spec, n, length.M)
    study = Study("fidelity", CONVERSE_COLUMNS, metadata={"n": n, "M": length.M, "log2_M": length.log2_M})
    for gamma in gamma_grid:
        study.add(gamma, optimal, fidelity_converse_rhs(spec, n, gamma, length.log2_M))
    return study
