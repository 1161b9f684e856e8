# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

"""
Exact finite-blocklength spectrum
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

In a shared eigenbasis every sequence of type ``k`` has the eigenvalue
``sum_j t_j prod_i p_j(i)^{k_i}`` in the state of ``n`` source uses, so the
whole spectrum is the list of type values weighted by type class sizes.
Zero eigenvalues carry no mass and are left out of the spectrum.
"""

import functools
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath
import numpy as np
from scipy import special

from soca.config import (
    ATOM_MERGE_TOLERANCE,
    BRUTE_FORCE_CAP,
    MASS_TIE_TOLERANCE,
    type_cap,
)
from soca.exceptions import CapExceededError, DomainError
from soca.utils.summation import CompensatedSum, log2_int

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class TypeComposition:
    counts: tuple

    @property
    def n(self):
        return sum(self.counts)

    @property
    def d(self):
        return len(self.counts)


@dataclass(frozen=True)
class SpectrumAtom:
    """One eigenvalue level: ``multiplicity`` eigenvalues equal to ``2**log2_value``."""

    log2_value: float
    multiplicity: int

    @property
    def log2_mass(self):
        return self.log2_value + log2_int(self.multiplicity)

    @property
    def mass(self):
        return _pow2(self.log2_mass)


class CompressionLength(NamedTuple):
    log2_M: float
    M: int


def _pow2(exponent):
    if exponent > 1023:
        return math.inf
    return 2.0 ** exponent


def _check_block_length(n, d):
    if n < 1 or d < 1:
        raise DomainError(f"Block length and dimension must be positive, got n={n}, d={d}.")


def type_count(n, d):
    return math.comb(n + d - 1, d - 1)


def check_type_cap(n, d, cap=None):
    cap = type_cap() if cap is None else cap
    required = type_count(n, d)
    if required > cap:
        raise CapExceededError(
            f"n={n}, d={d} needs {required} types, above the cap of {cap}.", details=required)
    return required


def iter_compositions(n, d):
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in iter_compositions(n - first, d - 1):
            yield (first,) + rest


def enumerate_types(n, d):
    """Yield every type of length-``n`` sequences over ``d`` letters, lexicographically."""

    _check_block_length(n, d)
    for counts in iter_compositions(n, d):
        yield TypeComposition(counts)


def multinomial(counts):
    """Exact ``n! / (k_1! ... k_d!)``."""

    result, total = 1, 0
    for count in counts:
        total += count
        result *= math.comb(total, count)
    return result


def log2_multinomial(composition):
    """``(log2 |T|, |T|)`` for the type class ``T`` of ``composition``."""

    counts = np.asarray(composition.counts, dtype=float)
    log_size = special.gammaln(counts.sum() + 1.0) - special.gammaln(counts + 1.0).sum()
    return float(log_size / _LN2), multinomial(composition.counts)


def type_log2_values(counts, spec):
    # counts: (types, d) array. Returns log2 of the mixture eigenvalue per type.
    log2_probs = spec.log2_prob_matrix()
    zero = np.isinf(log2_probs)
    exponents = counts @ np.where(zero, 0.0, log2_probs).T
    impossible = (counts > 0).astype(float) @ zero.T.astype(float) > 0
    exponents[impossible] = -np.inf

    # Base-2 log-sum-exp; a single component comes out exactly as its exponent.
    return np.logaddexp2.reduce(exponents + np.log2(np.asarray(spec.weights)), axis=1)


def mixed_type_value(composition, spec):
    """log2 of the eigenvalue shared by every sequence of ``composition``; ``-inf`` if zero."""

    counts = np.asarray([composition.counts], dtype=float)
    return float(type_log2_values(counts, spec)[0])


def _merge_levels(values, multiplicities):
    # Sort descending, then join neighbours closer than the merge tolerance.
    keep = np.isfinite(values)
    values = values[keep]
    multiplicities = [count for count, flag in zip(multiplicities, keep) if flag]

    order = np.argsort(-values, kind="stable")
    values = values[order]
    atoms = []
    previous = None
    for rank, index in enumerate(order.tolist()):
        value = float(values[rank])
        count = multiplicities[index]
        if previous is not None and previous - value <= ATOM_MERGE_TOLERANCE:
            atoms[-1] = SpectrumAtom(atoms[-1].log2_value, atoms[-1].multiplicity + count)
        else:
            atoms.append(SpectrumAtom(value, count))
        previous = value
    return tuple(atoms)


@functools.lru_cache(maxsize=64)
def _cached_exact_spectrum(spec, n, cap):
    d = spec.dim
    required = check_type_cap(n, d, cap)
    logging.debug(f"Aggregating the spectrum of n={n}, d={d} over {required} types")

    compositions = list(iter_compositions(n, d))
    counts = np.asarray(compositions, dtype=float).reshape(len(compositions), d)
    values = type_log2_values(counts, spec)
    multiplicities = [multinomial(composition) for composition in compositions]

    atoms = _merge_levels(values, multiplicities)
    logging.debug(f"Spectrum of n={n} has {len(atoms)} distinct nonzero levels")
    return atoms


def exact_spectrum(spec, n, cap=None):
    """Nonzero spectrum of the ``n``-use source state, largest level first."""

    _check_block_length(n, spec.dim)
    return _cached_exact_spectrum(spec, n, type_cap() if cap is None else cap)


def brute_force_spectrum(spec, n, cap=BRUTE_FORCE_CAP):
    """Spectrum from all ``d**n`` sequences, one eigenvalue at a time."""

    d = spec.dim
    _check_block_length(n, d)
    required = d ** n
    if required > cap:
        raise CapExceededError(
            f"n={n}, d={d} needs {required} sequences, above the cap of {cap}.", details=required)

    eigenvalues = np.zeros(required)
    for weight, spectrum in spec.components:
        products = np.ones(1)
        for _ in range(n):
            products = np.kron(products, spectrum.as_array())
        eigenvalues += weight * products

    with np.errstate(divide="ignore"):
        values = np.log2(eigenvalues)
    return _merge_levels(values, [1] * required)


def spectral_tail(spec, n, gamma, strict=False, cap=None):
    """Mass of the eigenvalues at or below ``2**gamma`` (strictly below with ``strict``)."""

    atoms = exact_spectrum(spec, n, cap)
    if strict:
        masses = [atom.mass for atom in atoms if atom.log2_value < gamma]
    else:
        masses = [atom.mass for atom in atoms if atom.log2_value <= gamma]
    return min(max(math.fsum(masses), 0.0), 1.0)


def d_s_eps(spec, n, eps, cap=None):
    """Largest threshold ``gamma`` whose spectral tail stays at or below ``eps``."""

    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}.", details=eps)

    atoms = exact_spectrum(spec, n, cap)
    cumulative = CompensatedSum()
    for atom in reversed(atoms):
        if cumulative.add(atom.mass) > eps:
            return atom.log2_value

    logging.warning(f"Spectrum mass {cumulative.value!r} never exceeds eps={eps}; returning the top level.")
    return atoms[0].log2_value


def _partial_count(need, log2_value, available):
    # Smallest k with k * 2**log2_value >= need - MASS_TIE_TOLERANCE, the same
    # tie rule that decides which level the target falls in.
    with mpmath.workdps(40):
        shortfall = mpmath.mpf(need) - mpmath.mpf(MASS_TIE_TOLERANCE)
        if shortfall <= 0:
            return 1
        ratio = shortfall * mpmath.power(2, -mpmath.mpf(log2_value))
        count = int(mpmath.ceil(ratio))
    return min(max(count, 1), available)


def min_compression_length(spec, n, eps, cap=None):
    """Smallest code dimension ``M`` whose top-``M`` eigenvalue sum reaches ``1 - eps``."""

    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}.", details=eps)

    target = 1.0 - eps
    accumulated = CompensatedSum()
    dimension = 0
    for atom in exact_spectrum(spec, n, cap):
        mass = atom.mass
        if accumulated.value + mass >= target - MASS_TIE_TOLERANCE:
            need = target - accumulated.value
            dimension += _partial_count(need, atom.log2_value, atom.multiplicity)
            break
        accumulated.add(mass)
        dimension += atom.multiplicity
    else:
        logging.warning(f"Spectrum mass {accumulated.value!r} falls short of {target}; using the full support.")

    return CompressionLength(log2_int(dimension), dimension)


def optimal_fidelity(spec, n, dimension, cap=None):
    """Sum of the ``dimension`` largest eigenvalues: the best fidelity of a code of that size."""

    remaining = dimension
    masses = []
    for atom in exact_spectrum(spec, n, cap):
        if remaining <= 0:
            break
        taken = min(remaining, atom.multiplicity)
        masses.append(_pow2(atom.log2_value + log2_int(taken)))
        remaining -= taken
    return min(math.fsum(masses), 1.0)


def fidelity_converse_rhs(spec, n, gamma, log2_M, cap=None):
    """Upper bound ``1 - sum_j t_j tail_j(-gamma) + 2**(log2_M - gamma)`` on the fidelity."""

    tails = [
        weight * spectral_tail(spec.component_spec(index), n, -gamma, cap=cap)
        for index, weight in enumerate(spec.weights)
    ]
    return 1.0 - math.fsum(tails) + _pow2(log2_M - gamma)
