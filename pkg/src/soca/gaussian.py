# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

"""Standard normal c.d.f. and its generalized inverse."""

import math

import numpy as np
from scipy import special

from soca.exceptions import DomainError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def std_normal_cdf(x):
    """Phi(x), evaluated through the complementary error function.

    Accepts scalars or numpy arrays.
    """

    if np.ndim(x) == 0:
        return float(special.ndtr(float(x)))
    return special.ndtr(np.asarray(x, dtype=float))


def std_normal_pdf(x):
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def _lower_quantile(eps):
    # eps <= 1/2: Newton steps against Phi keep the residual relative in the lower tail.
    z = float(special.ndtri(eps))
    for _ in range(2):
        density = std_normal_pdf(z)
        if density == 0.0:
            break
        z -= (std_normal_cdf(z) - eps) / density
    return z


def std_normal_quantile(eps):
    """Phi^{-1}(eps) = sup{z : Phi(z) <= eps} for eps in (0, 1)."""

    eps = float(eps)
    if not 0.0 < eps < 1.0:
        raise DomainError(f"The quantile is only defined on (0, 1), got {eps}.", details=eps)

    if eps > 0.5:
        # 1 - eps is exact for eps in [1/2, 1].
        return -_lower_quantile(1.0 - eps)
    return _lower_quantile(eps)
