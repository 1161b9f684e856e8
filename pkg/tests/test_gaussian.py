# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import numpy as np
import pytest

from soca.exceptions import DomainError
from soca.gaussian import std_normal_cdf, std_normal_quantile


def test_cdf_values():
    assert std_normal_cdf(0.0) == 0.5
    assert std_normal_cdf(10.0) == pytest.approx(1.0, abs=1e-12)
    assert std_normal_cdf(1.9599640) == pytest.approx(0.975, abs=1e-7)


def test_cdf_symmetry_and_monotonicity():
    grid = np.linspace(-12.0, 12.0, 2001)
    values = std_normal_cdf(grid)
    assert np.all(np.diff(values) >= 0.0)
    for x in grid[::50]:
        assert std_normal_cdf(x) + std_normal_cdf(-x) == pytest.approx(1.0, abs=1e-14)


def test_quantile_values():
    assert std_normal_quantile(0.5) == 0.0
    assert std_normal_quantile(0.975) == pytest.approx(1.9599640, abs=1e-6)


def test_quantile_antisymmetry():
    assert std_normal_quantile(0.2) == pytest.approx(-std_normal_quantile(0.8), abs=1e-12)


def test_quantile_round_trip():
    lower = np.logspace(-8, np.log10(0.5), 200)
    grid = np.concatenate([lower, 1.0 - lower])
    for eps in grid:
        assert abs(std_normal_cdf(std_normal_quantile(eps)) - eps) <= 1e-11


def test_quantile_residual_in_the_body():
    for eps in np.linspace(1e-10, 1.0 - 1e-10, 101):
        assert abs(std_normal_cdf(std_normal_quantile(eps)) - eps) <= 1e-12


def test_quantile_is_increasing():
    grid = np.linspace(0.001, 0.999, 999)
    values = [std_normal_quantile(eps) for eps in grid]
    assert np.all(np.diff(values) > 0.0)


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_quantile_domain(eps):
    with pytest.raises(DomainError):
        std_normal_quantile(eps)
