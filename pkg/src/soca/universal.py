# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

"""
Universal type code
~~~~~~~~~~~~~~~~~~~

The universal code keeps every type class ``T`` with ``|T| <= 2**(a n + b sqrt(n))``.
It does not depend on the source, and its span ``Xi`` has dimension equal to the
number of kept sequences. The decoding space ``Upsilon`` is only ever bounded.
"""

import collections
import functools
import itertools
import logging
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from soca.config import BRUTE_FORCE_CAP, EXACT_THRESHOLD_LIMIT, GUARD_BAND
from soca.exceptions import CapExceededError, DomainError, GuardBandWarning
from soca.spectrum import (
    check_type_cap,
    iter_compositions,
    multinomial,
    spectral_tail,
    type_log2_values,
)
from soca.utils.summation import log2_int


@dataclass(frozen=True)
class UniversalDims:
    log2_xi: float
    xi_exact: int
    log2_upsilon_bound: float
    boundary_types: int = 0


class InclusionResult(NamedTuple):
    holds: bool
    counterexample: tuple = None


def size_threshold(n, a, b):
    return a * n + b * math.sqrt(n)


def admits_type(size, threshold):
    """Whether a type class of ``size`` sequences passes ``size <= 2**threshold``.

    Returns ``(admitted, in_guard_band)``. Small thresholds are compared on exact
    integers; large ones in log2 with the guard band counted as admitted.
    """

    if threshold < EXACT_THRESHOLD_LIMIT:
        return size <= math.floor(2.0 ** threshold), False

    gap = log2_int(size) - threshold
    return gap <= GUARD_BAND, abs(gap) <= GUARD_BAND


@functools.lru_cache(maxsize=256)
def _type_size_counts(n, d):
    # Type class size -> number of types of that size.
    sizes = collections.Counter(multinomial(counts) for counts in iter_compositions(n, d))
    return tuple(sorted(sizes.items()))


def universal_dims(n, d, a, b, cap=None):
    if n < 1 or d < 1:
        raise DomainError(f"Block length and dimension must be positive, got n={n}, d={d}.")
    check_type_cap(n, d, cap)

    threshold = size_threshold(n, a, b)
    xi_exact, boundary_types = 0, 0
    for size, types in _type_size_counts(n, d):
        admitted, in_band = admits_type(size, threshold)
        if admitted:
            xi_exact += types * size
        if in_band:
            boundary_types += types

    if boundary_types:
        message = f"{boundary_types} type classes sit within {GUARD_BAND} of 2**{threshold}"
        logging.warning(message)
        warnings.warn(message, GuardBandWarning)

    upsilon = (d * d + d) * math.log2(n + 1) + threshold
    logging.debug(f"Universal code n={n}, d={d}: dim Xi={xi_exact}, log2 dim Upsilon <= {upsilon}")
    return UniversalDims(log2_int(xi_exact), xi_exact, upsilon, boundary_types)


def hayashi_inclusion_check(spectrum, n, a, b, cap=BRUTE_FORCE_CAP):
    """Check that every sequence with ``-log2 P^n(x) < a n + b sqrt(n)`` lies in a kept type.

    Returns the first violating sequence, in lexicographic order, when the
    inclusion fails.
    """

    d = spectrum.dim
    if n < 1 or d < 1:
        raise DomainError(f"Block length and dimension must be positive, got n={n}, d={d}.")
    required = d ** n
    if required > cap:
        raise CapExceededError(
            f"n={n}, d={d} needs {required} sequences, above the cap of {cap}.", details=required)

    sequences = np.array(list(itertools.product(range(d), repeat=n)), dtype=np.intp).reshape(required, n)
    with np.errstate(divide="ignore"):
        surprisal = -np.log2(spectrum.as_array())
    threshold = size_threshold(n, a, b)
    likely = surprisal[sequences].sum(axis=1) < threshold

    counts = np.stack([(sequences == letter).sum(axis=1) for letter in range(d)], axis=1)
    types, inverse = np.unique(counts, axis=0, return_inverse=True)
    kept = np.array([admits_type(multinomial(tuple(row.tolist())), threshold)[0] for row in types])

    violations = np.flatnonzero(likely & ~kept[inverse.reshape(-1)])
    if violations.size:
        counterexample = tuple(sequences[violations[0]].tolist())
        logging.warning(f"Inclusion fails at n={n}, a={a}, b={b} for {counterexample}")
        return InclusionResult(False, counterexample)
    return InclusionResult(True)


def universal_achievability_fidelity(spec, n, a, b, cap=None):
    """Lower bound ``sum_j t_j tr(rho_j^n {rho_j^n >= 2**(-a n - b sqrt(n))})`` on the code fidelity."""

    gamma = -size_threshold(n, a, b)
    kept = [
        weight * (1.0 - spectral_tail(spec.component_spec(index), n, gamma, strict=True, cap=cap))
        for index, weight in enumerate(spec.weights)
    ]
    return min(max(math.fsum(kept), 0.0), 1.0)


def universal_code_fidelity(spec, n, a, b, cap=None):
    """Exact fidelity ``tr(Pi_n rho^(n))`` of the projector onto the kept type classes."""

    check_type_cap(n, spec.dim, cap)
    threshold = size_threshold(n, a, b)

    kept, sizes = [], []
    for counts in iter_compositions(n, spec.dim):
        size = multinomial(counts)
        if admits_type(size, threshold)[0]:
            kept.append(counts)
            sizes.append(size)
    if not kept:
        return 0.0

    values = type_log2_values(np.asarray(kept, dtype=float), spec)
    masses = [
        2.0 ** (value + log2_int(size))
        for value, size in zip(values.tolist(), sizes)
        if math.isfinite(value)
    ]
    return min(math.fsum(masses), 1.0)
