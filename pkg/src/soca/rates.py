# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

"""
Second order rates
~~~~~~~~~~~~~~~~~~

For a mixed source with component weights ``t_i``, entropies ``S_i`` and
information standard deviations ``sigma_i``, the second order rate ``b`` at
first order rate ``a`` solves

    sum_{S_i = a} t_i Phi(b / sigma_i) + sum_{S_i < a} t_i = 1 - eps.

The left-hand side is strictly increasing in ``b`` whenever some component
sits at ``a``. When none does, or the target lies outside its range, the rate
is reported as ``+inf`` (the rate ``a`` is too small) or ``-inf`` (``a`` is
too large).
"""

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from soca.config import DEFAULT_ETA, MASS_TIE_TOLERANCE, SIGMA_TOLERANCE
from soca.exceptions import (
    BoundaryTEqualsEpsError,
    DegenerateSigmaError,
    DomainError,
    InfeasibleRateError,
    RateEquationError,
)
from soca.gaussian import std_normal_quantile
from soca.model import source_stats

_MAX_BRACKET_DOUBLINGS = 64


class CaseTag(enum.Enum):
    GENERAL_SOLVE = "GeneralSolve"
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    DEGENERATE = "Degenerate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RateQuery:
    a: float
    eps: float

    def __post_init__(self):
        _check_probability("eps", self.eps)


@dataclass(frozen=True)
class RateResult:
    a: float
    b_star: float
    case_tag: CaseTag

    @property
    def is_finite(self):
        return math.isfinite(self.b_star)


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float

    def __contains__(self, value):
        return self.lower <= value <= self.upper


def _check_probability(name, value):
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie in (0, 1), got {value}.", details=value)


def solve_rate_equation(weights, entropies, sigmas, a, eps, eta=DEFAULT_ETA):
    """Solve the second order rate equation on bare component statistics."""

    _check_probability("eps", eps)
    if not eta > 0:
        raise DomainError(f"The entropy tolerance must be positive, got {eta}.")

    weights = np.asarray(weights, dtype=float)
    entropies = np.asarray(entropies, dtype=float)
    sigmas = np.asarray(sigmas, dtype=float)

    at_rate = np.abs(entropies - a) <= eta
    below_rate = (entropies < a) & ~at_rate

    target = 1.0 - eps
    lt_mass = math.fsum(weights[below_rate])
    eq_mass = math.fsum(weights[at_rate])
    logging.debug(f"Rate equation at a={a}: eq mass {eq_mass}, lt mass {lt_mass}, target {target}")

    if eq_mass == 0.0:
        if abs(lt_mass - target) <= MASS_TIE_TOLERANCE:
            raise InfeasibleRateError(
                f"No component has entropy {a} and the lower components carry exactly 1 - eps; "
                "every second order rate solves the equation.", details=lt_mass)
        b_star = -math.inf if lt_mass > target else math.inf
        return RateResult(a, b_star, CaseTag.DEGENERATE)

    if target <= lt_mass:
        return RateResult(a, -math.inf, CaseTag.DEGENERATE)
    if target >= lt_mass + eq_mass:
        return RateResult(a, math.inf, CaseTag.DEGENERATE)

    eq_weights = weights[at_rate]
    eq_sigmas = sigmas[at_rate]
    degenerate = np.flatnonzero(at_rate)[eq_sigmas <= SIGMA_TOLERANCE]
    if degenerate.size:
        raise DegenerateSigmaError(
            f"Components {degenerate.tolist()} have entropy {a} but zero information variance.",
            details=degenerate.tolist())

    def residual(b):
        return math.fsum(eq_weights * special.ndtr(b / eq_sigmas)) + lt_mass - target

    width = 10.0 * float(eq_sigmas.max())
    lower, upper = -width, width
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if residual(lower) < 0.0:
            break
        lower *= 2.0
    else:
        raise RateEquationError(f"Could not bracket the rate equation from below (reached {lower}).")

    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if residual(upper) > 0.0:
            break
        upper *= 2.0
    else:
        raise RateEquationError(f"Could not bracket the rate equation from above (reached {upper}).")

    xtol = 1e-12 * min(1.0, float(eq_sigmas.min()))
    b_star = optimize.brentq(residual, lower, upper, xtol=xtol, maxiter=500)
    logging.debug(f"Solved b*={b_star!r} in [{lower}, {upper}], residual {residual(b_star):.3e}")
    return RateResult(a, b_star, CaseTag.GENERAL_SOLVE)


def component_stats(spec):
    return [source_stats(spectrum) for spectrum in spec.spectra]


def solve_second_order(spec, query, eta=DEFAULT_ETA):
    """Second order rate of ``spec`` at ``query.a`` for error ``query.eps``."""

    stats = component_stats(spec)
    return solve_rate_equation(
        spec.weights,
        [stat.entropy_S for stat in stats],
        [stat.sigma for stat in stats],
        query.a,
        query.eps,
        eta,
    )


def two_source_rate(stats1, stats2, t, eps, eta=DEFAULT_ETA):
    """Second order rate of ``t rho_1 + (1 - t) rho_2`` with the case picked automatically.

    The sources are swapped so that ``S_1 >= S_2``. Case 1 has equal
    entropies; case 2 (``t > eps``) runs at ``a = S_1``; case 3 (``t < eps``)
    runs at ``a = S_2``.
    """

    _check_probability("t", t)
    _check_probability("eps", eps)

    if stats1.entropy_S < stats2.entropy_S:
        stats1, stats2, t = stats2, stats1, 1.0 - t

    if abs(stats1.entropy_S - stats2.entropy_S) <= eta:
        result = solve_rate_equation(
            (t, 1.0 - t),
            (stats1.entropy_S, stats2.entropy_S),
            (stats1.sigma, stats2.sigma),
            stats1.entropy_S,
            eps,
            eta,
        )
        return RateResult(result.a, result.b_star, CaseTag.CASE1)

    if abs(t - eps) <= MASS_TIE_TOLERANCE:
        raise BoundaryTEqualsEpsError(
            f"The rate is undefined when the weight of the higher-entropy source equals eps ({t} vs {eps}).",
            details=(t, eps))

    if t > eps:
        if stats1.sigma <= SIGMA_TOLERANCE:
            raise DegenerateSigmaError("The higher-entropy source has zero information variance.", details=[0])
        return RateResult(stats1.entropy_S, -stats1.sigma * std_normal_quantile(eps / t), CaseTag.CASE2)

    if stats2.sigma <= SIGMA_TOLERANCE:
        raise DegenerateSigmaError("The lower-entropy source has zero information variance.", details=[1])
    b_star = -stats2.sigma * std_normal_quantile((eps - t) / (1.0 - t))
    return RateResult(stats2.entropy_S, b_star, CaseTag.CASE3)


def l_range(sigma1, sigma2, eps):
    """Interval that contains the case 1 rate for standard deviations ``sigma1``, ``sigma2``."""

    if not (sigma1 > 0 and sigma2 > 0):
        raise DomainError(f"Standard deviations must be positive, got {sigma1} and {sigma2}.")
    _check_probability("eps", eps)

    if eps == 0.5:
        return Interval(0.0, 0.0)

    low_sigma, high_sigma = sorted((sigma1, sigma2))
    quantile = std_normal_quantile(eps)
    ends = (-low_sigma * quantile, -high_sigma * quantile)
    return Interval(min(ends), max(ends))


def _entropy_levels(entropies, weights, eta):
    # Descending groups of entropies within eta of the group's largest member.
    order = sorted(range(len(entropies)), key=lambda index: -entropies[index])
    levels = []
    for index in order:
        if levels and levels[-1][0] - entropies[index] <= eta:
            levels[-1][1].append(weights[index])
        else:
            levels.append((entropies[index], [weights[index]]))
    return [(anchor, math.fsum(members)) for anchor, members in levels]


def first_order_rate(spec, eps, eta=DEFAULT_ETA):
    """The only rate ``a`` at which the second order rate is finite.

    It is the entropy level whose components straddle ``eps``: the mass strictly
    above the level is below ``eps`` and the mass at or above it exceeds ``eps``.
    """

    _check_probability("eps", eps)
    stats = component_stats(spec)
    levels = _entropy_levels([stat.entropy_S for stat in stats], spec.weights, eta)

    above = 0.0
    for anchor, mass in levels:
        if abs(above + mass - eps) <= MASS_TIE_TOLERANCE:
            raise BoundaryTEqualsEpsError(
                f"The mass at entropy {anchor} and above equals eps ({above + mass} vs {eps}).",
                details=(above + mass, eps))
        if above + mass > eps:
            return anchor
        above += mass

    # Unreachable for normalized weights; the last level always carries the remainder.
    return levels[-1][0]


def rate_profile(spec, eps, eta=DEFAULT_ETA):
    """Second order rate at every distinct component entropy, highest first."""

    stats = component_stats(spec)
    levels = _entropy_levels([stat.entropy_S for stat in stats], spec.weights, eta)
    return [(anchor, solve_second_order(spec, RateQuery(anchor, eps), eta)) for anchor, _ in levels]
