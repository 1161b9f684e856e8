# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import json

import numpy as np
import pytest

from soca.model import MixedSourceSpec


@pytest.fixture
def uniform2():
    return MixedSourceSpec.memoryless([0.5, 0.5])


@pytest.fixture
def bernoulli():
    return MixedSourceSpec.memoryless([0.75, 0.25])


@pytest.fixture
def uniform_and_deterministic():
    return MixedSourceSpec(((0.5, [0.5, 0.5]), (0.5, [1.0, 0.0])))


def random_spectrum(rng, d, zero_chance=0.15):
    probs = rng.dirichlet(np.ones(d))
    if d > 1 and rng.random() < zero_chance:
        probs[rng.integers(d)] = 0.0
        probs = probs / probs.sum()
    return probs.tolist()


def random_mixed_spec(rng, d, max_components=3):
    count = int(rng.integers(1, max_components + 1))
    weights = rng.dirichlet(np.ones(count)).tolist()
    return MixedSourceSpec(tuple((weight, random_spectrum(rng, d)) for weight in weights))


@pytest.fixture
def rng():
    return np.random.default_rng(20250417)


@pytest.fixture
def write_spec(tmp_path):
    """Write a source description to a JSON file and return its path."""

    def write(spec, name="spec.json"):
        path = tmp_path / name
        data = spec.to_dict() if isinstance(spec, MixedSourceSpec) else spec
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write
