# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

"""
Source model
~~~~~~~~~~~~

Memoryless sources are described by the eigenvalues of their source state and
mixed sources by a finite weighted list of memoryless sources sharing one
eigenbasis. Every quantity used by SOCA depends only on these spectra.
All logarithms are taken to base 2.
"""

import json
import logging
import math
import os
from dataclasses import dataclass

import numpy as np

from soca.config import DEFAULT_ETA, NORMALIZATION_TOLERANCE
from soca.exceptions import (
    DimensionMismatchError,
    DomainError,
    EmptySpecError,
    InvalidSourceError,
    NegativeProbabilityError,
    NotNormalizedError,
)


@dataclass(frozen=True)
class SourceSpectrum:
    """Eigenvalues of one memoryless source state."""

    probs: tuple

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))

    @property
    def dim(self):
        return len(self.probs)

    def as_array(self):
        return np.asarray(self.probs, dtype=float)


@dataclass(frozen=True)
class SourceStats:
    entropy_S: float
    varentropy_V: float
    sigma: float


@dataclass(frozen=True)
class MixedSourceSpec:
    """Mixture ``sum_j t_j rho_j^{(x)n}`` of memoryless sources in a shared eigenbasis.

    ``components`` is a tuple of ``(weight, SourceSpectrum)`` pairs. A single
    component describes a memoryless source.
    """

    components: tuple

    def __post_init__(self):
        normalized = tuple(
            (float(weight), spectrum if isinstance(spectrum, SourceSpectrum) else SourceSpectrum(spectrum))
            for weight, spectrum in self.components
        )
        object.__setattr__(self, "components", normalized)

    @classmethod
    def memoryless(cls, probs):
        return cls(((1.0, SourceSpectrum(probs)),))

    @classmethod
    def two_source(cls, probs1, probs2, t):
        """Mixture ``t rho_1 + (1 - t) rho_2`` with mixing parameter ``t``."""
        return cls(((t, SourceSpectrum(probs1)), (1.0 - t, SourceSpectrum(probs2))))

    @property
    def weights(self):
        return tuple(weight for weight, _ in self.components)

    @property
    def spectra(self):
        return tuple(spectrum for _, spectrum in self.components)

    @property
    def dim(self):
        return self.components[0][1].dim if self.components else 0

    def component_spec(self, index):
        return MixedSourceSpec(((1.0, self.components[index][1]),))

    def log2_prob_matrix(self):
        """Matrix of ``log2 p_j(i)`` with ``-inf`` for zero eigenvalues."""
        probs = np.array([spectrum.probs for spectrum in self.spectra], dtype=float)
        with np.errstate(divide="ignore"):
            return np.log2(probs)

    def to_dict(self):
        return {
            "components": [
                {"weight": weight, "eigenvalues": list(spectrum.probs)}
                for weight, spectrum in self.components
            ]
        }


@dataclass(frozen=True)
class EntropyClasses:
    eq_idx: tuple
    lt_idx: tuple
    gt_idx: tuple
    tolerance_eta: float


def find_violations(spec):
    """Collect every invariant violation of ``spec`` without raising."""

    violations = []
    if not spec.components:
        violations.append(EmptySpecError("The mixed source has no component."))
        return violations

    dim = spec.components[0][1].dim
    if dim < 1:
        violations.append(DimensionMismatchError("Component 0 has no eigenvalue.", details=0))

    weights = spec.weights
    for index, weight in enumerate(weights):
        if not weight > 0 or not math.isfinite(weight):
            violations.append(NegativeProbabilityError(
                f"Weight of component {index} must be positive, got {weight}.", details=weight))

    weight_sum = math.fsum(weights)
    if abs(weight_sum - 1.0) > NORMALIZATION_TOLERANCE:
        violations.append(NotNormalizedError(
            f"Component weights sum to {weight_sum!r} instead of 1.", details=weight_sum))

    for index, (_, spectrum) in enumerate(spec.components):
        if spectrum.dim != dim:
            violations.append(DimensionMismatchError(
                f"Component {index} has dimension {spectrum.dim}, component 0 has {dim}.",
                details=spectrum.dim))

        for position, prob in enumerate(spectrum.probs):
            if not prob >= 0 or not math.isfinite(prob):
                violations.append(NegativeProbabilityError(
                    f"Eigenvalue {position} of component {index} is {prob}.", details=prob))

        total = math.fsum(spectrum.probs)
        if spectrum.dim and abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            violations.append(NotNormalizedError(
                f"Eigenvalues of component {index} sum to {total!r} instead of 1.", details=total))

    return violations


def validate_mixed(spec):
    """Raise :class:`InvalidSourceError` listing every violation, or return ``None``."""

    violations = find_violations(spec)
    if violations:
        for violation in violations:
            logging.debug(f"Source violation: {type(violation).__name__}: {violation}")
        summary = "; ".join(str(violation) for violation in violations)
        raise InvalidSourceError(f"Invalid mixed source: {summary}", details=violations)


def entropy(spectrum):
    """Entropy ``-sum_i p_i log2 p_i`` in bits, with ``0 log 0 = 0``."""

    probs = spectrum.as_array()
    support = probs[probs > 0]
    value = -math.fsum(support * np.log2(support))
    return min(max(value, 0.0), math.log2(spectrum.dim))


def varentropy(spectrum):
    """Variance of ``-log2 p`` under ``p`` (bits squared)."""

    probs = spectrum.as_array()
    support = probs[probs > 0]
    surprisal = -np.log2(support)
    mean = math.fsum(support * surprisal)
    return max(math.fsum(support * (surprisal - mean) ** 2), 0.0)


def source_stats(spectrum):
    variance = varentropy(spectrum)
    return SourceStats(entropy_S=entropy(spectrum), varentropy_V=variance, sigma=math.sqrt(variance))


def classify_by_entropy(spec, a, eta=DEFAULT_ETA):
    """Split component indices into entropy equal to, below and above ``a``."""

    if not eta > 0:
        raise DomainError(f"The entropy tolerance must be positive, got {eta}.")

    eq_idx, lt_idx, gt_idx = [], [], []
    for index, spectrum in enumerate(spec.spectra):
        value = entropy(spectrum)
        if abs(value - a) <= eta:
            eq_idx.append(index)
        elif value < a:
            lt_idx.append(index)
        else:
            gt_idx.append(index)

    return EntropyClasses(tuple(eq_idx), tuple(lt_idx), tuple(gt_idx), eta)


def mixed_spec_from_dict(data):
    """Build and validate a mixed source from the JSON schema.

    ``{"components": [{"weight": w, "eigenvalues": [p, ...]}, ...]}``
    """

    try:
        entries = data["components"]
        components = tuple(
            (float(entry["weight"]), SourceSpectrum(entry["eigenvalues"])) for entry in entries
        )
    except (KeyError, TypeError, ValueError) as error:
        raise InvalidSourceError(f"Malformed source description: {error!r}", details=[error]) from error

    spec = MixedSourceSpec(components)
    validate_mixed(spec)
    return spec


def load_mixed_spec(file_path):
    file_path = os.path.abspath(file_path)
    logging.debug(f"Loading source description from {file_path}")

    try:
        with open(file_path, "r", encoding="utf-8") as file:
            data = json.load(file)
    except (UnicodeDecodeError, json.JSONDecodeError) as error:
        raise InvalidSourceError(f"{file_path} is not a UTF-8 JSON document: {error}", details=[error]) from error
    return mixed_spec_from_dict(data)
