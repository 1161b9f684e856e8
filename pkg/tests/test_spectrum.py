# Copyright (c) 2025 BlockGuard SF
# Licensed under the Apache-2.0 License.

import math

import numpy as np
import pytest

from conftest import random_mixed_spec
from soca import spectrum
from soca.exceptions import CapExceededError, DomainError
from soca.model import MixedSourceSpec
from soca.spectrum import (
    TypeComposition,
    brute_force_spectrum,
    check_type_cap,
    d_s_eps,
    enumerate_types,
    exact_spectrum,
    fidelity_converse_rhs,
    log2_multinomial,
    min_compression_length,
    mixed_type_value,
    optimal_fidelity,
    spectral_tail,
)


def atom_pairs(atoms):
    return [(atom.log2_value, atom.multiplicity) for atom in atoms]


def assert_same_atoms(left, right):
    assert [count for _, count in atom_pairs(left)] == [count for _, count in atom_pairs(right)]
    for (value, _), (other, _) in zip(atom_pairs(left), atom_pairs(right)):
        assert value == pytest.approx(other, abs=1e-9)


def test_enumerate_types():
    assert [t.counts for t in enumerate_types(2, 2)] == [(2, 0), (1, 1), (0, 2)]
    assert len(list(enumerate_types(1, 3))) == 3
    assert len(list(enumerate_types(4, 3))) == 15
    assert all(t.n == 4 and t.d == 3 for t in enumerate_types(4, 3))


def test_enumerate_types_rejects_empty_alphabet():
    with pytest.raises(DomainError):
        list(enumerate_types(2, 0))


@pytest.mark.parametrize("counts, log2_size, size", [
    ((2, 0), 0.0, 1),
    ((1, 1), 1.0, 2),
    ((3, 2, 1), math.log2(60), 60),
])
def test_log2_multinomial(counts, log2_size, size):
    value, exact = log2_multinomial(TypeComposition(counts))
    assert exact == size
    assert value == pytest.approx(log2_size, abs=1e-12)


def test_multinomial_is_exact_for_huge_types():
    _, exact = log2_multinomial(TypeComposition((500, 500)))
    assert exact == math.comb(1000, 500)


def test_mixed_type_value(uniform2, uniform_and_deterministic):
    for counts in [(4, 0), (2, 2), (0, 4)]:
        assert mixed_type_value(TypeComposition(counts), uniform2) == -4.0
    assert mixed_type_value(TypeComposition((2, 0)), uniform_and_deterministic) == pytest.approx(math.log2(0.625))
    assert mixed_type_value(TypeComposition((1, 1)), uniform_and_deterministic) == pytest.approx(-3.0)


def test_zero_type_value():
    spec = MixedSourceSpec.memoryless([1.0, 0.0])
    assert mixed_type_value(TypeComposition((1, 1)), spec) == -math.inf


def test_exact_spectrum_examples(uniform2, bernoulli, uniform_and_deterministic):
    assert atom_pairs(exact_spectrum(uniform2, 3)) == [(-3.0, 8)]

    expected = [(math.log2(0.5625), 1), (math.log2(0.1875), 2), (math.log2(0.0625), 1)]
    for (value, count), (other, other_count) in zip(atom_pairs(exact_spectrum(bernoulli, 2)), expected):
        assert count == other_count
        assert value == pytest.approx(other, abs=1e-12)

    atoms = atom_pairs(exact_spectrum(uniform_and_deterministic, 2))
    assert [count for _, count in atoms] == [1, 3]
    assert atoms[0][0] == pytest.approx(math.log2(0.625))
    assert atoms[1][0] == pytest.approx(-3.0)


def test_spectrum_mass_is_one(rng):
    for _ in range(20):
        spec = random_mixed_spec(rng, 3)
        atoms = exact_spectrum(spec, 12)
        assert math.fsum(atom.mass for atom in atoms) == pytest.approx(1.0, abs=1e-12)
        assert sum(atom.multiplicity for atom in atoms) <= 3 ** 12


def test_brute_force_examples(uniform2):
    assert atom_pairs(brute_force_spectrum(uniform2, 3)) == [(-3.0, 8)]
    assert atom_pairs(brute_force_spectrum(MixedSourceSpec.memoryless([1.0]), 3)) == [(0.0, 1)]


def test_brute_force_cap(uniform2):
    with pytest.raises(CapExceededError):
        brute_force_spectrum(uniform2, 21)


@pytest.mark.parametrize("d", [2, 3])
def test_types_agree_with_brute_force(rng, d):
    for _ in range(50):
        spec = random_mixed_spec(rng, d)
        for n in range(1, 9):
            assert_same_atoms(exact_spectrum(spec, n), brute_force_spectrum(spec, n))


@pytest.mark.parametrize("d", [2, 3])
def test_oracle_agrees_with_brute_force(rng, monkeypatch, d):
    specs = [random_mixed_spec(rng, d) for _ in range(50)]
    grid = [(spec, n, eps) for spec in specs for n in range(1, 9) for eps in (0.1, 0.25, 0.5, 0.9)]

    typed = [min_compression_length(spec, n, eps).M for spec, n, eps in grid]
    monkeypatch.setattr(spectrum, "exact_spectrum", lambda spec, n, cap=None: brute_force_spectrum(spec, n))
    brute = [min_compression_length(spec, n, eps).M for spec, n, eps in grid]

    assert typed == brute


def test_type_cap_from_environment(monkeypatch, uniform2):
    monkeypatch.setenv("SOCA_TYPE_CAP", "10")
    with pytest.raises(CapExceededError):
        exact_spectrum(uniform2, 10)
    assert check_type_cap(9, 2) == 10


def test_type_cap_argument(uniform2):
    with pytest.raises(CapExceededError) as error:
        exact_spectrum(uniform2, 100, cap=50)
    assert error.value.details == 101


@pytest.mark.parametrize("n, gamma, expected", [
    (4, -4.0, 1.0),
    (4, -4.01, 0.0),
])
def test_spectral_tail_uniform(uniform2, n, gamma, expected):
    assert spectral_tail(uniform2, n, gamma) == expected


def test_spectral_tail_inclusive_and_strict(uniform2, bernoulli):
    assert spectral_tail(bernoulli, 1, math.log2(0.3)) == pytest.approx(0.25)
    assert spectral_tail(uniform2, 4, -4.0, strict=True) == 0.0


def test_spectral_tail_is_monotone(bernoulli):
    gammas = np.linspace(-105.0, 1.0, 200)
    tails = [spectral_tail(bernoulli, 50, gamma) for gamma in gammas]
    assert np.all(np.diff(tails) >= 0.0)
    assert tails[0] == 0.0
    assert tails[-1] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("spec_name, n, eps, expected", [
    ("uniform2", 4, 0.5, -4.0),
    ("bernoulli", 1, 0.25, math.log2(0.75)),
    ("bernoulli", 1, 0.2, -2.0),
])
def test_d_s_eps_examples(request, spec_name, n, eps, expected):
    assert d_s_eps(request.getfixturevalue(spec_name), n, eps) == pytest.approx(expected, abs=1e-12)


def test_d_s_eps_is_consistent_with_the_tail(rng):
    for _ in range(20):
        spec = random_mixed_spec(rng, 2)
        n = int(rng.integers(1, 200))
        eps = float(rng.uniform(0.01, 0.99))
        gamma = d_s_eps(spec, n, eps)
        assert spectral_tail(spec, n, gamma - 1e-9) <= eps + 1e-12
        assert spectral_tail(spec, n, gamma) > eps


def test_d_s_eps_second_order_expansion(bernoulli):
    from soca.gaussian import std_normal_quantile
    from soca.model import source_stats

    stats = source_stats(bernoulli.spectra[0])
    n = 4096
    for eps in (0.2, 0.5, 0.8):
        normalized = (d_s_eps(bernoulli, n, eps) + n * stats.entropy_S) / math.sqrt(n)
        assert abs(normalized - stats.sigma * std_normal_quantile(eps)) <= 0.25


@pytest.mark.parametrize("spec_name, n, eps, M", [
    ("uniform2", 3, 0.25, 6),
    ("bernoulli", 2, 0.4, 2),
    ("uniform_and_deterministic", 2, 0.3, 2),
])
def test_min_compression_length_examples(request, spec_name, n, eps, M):
    length = min_compression_length(request.getfixturevalue(spec_name), n, eps)
    assert length.M == M
    assert length.log2_M == math.log2(M)


def test_min_compression_length_reports_exact_log(uniform2):
    assert min_compression_length(uniform2, 3, 0.25).log2_M == 2.584962500721156


def test_min_compression_length_is_monotone(rng):
    eps_grid = np.linspace(0.01, 0.99, 50)
    for _ in range(10):
        spec = random_mixed_spec(rng, 3)
        lengths = [min_compression_length(spec, 7, float(eps)).M for eps in eps_grid]
        assert all(1 <= M <= 3 ** 7 for M in lengths)
        assert all(left >= right for left, right in zip(lengths, lengths[1:]))


def test_min_compression_length_handles_large_n(bernoulli):
    length = min_compression_length(bernoulli, 4096, 0.2)
    assert isinstance(length.M, int)
    assert length.log2_M == pytest.approx(math.log2(length.M))
    assert 0 < length.log2_M < 4096


@pytest.mark.parametrize("n", [20, 25, 30, 33])
@pytest.mark.parametrize("fraction", [0.0, 0.1, 0.3, 0.5, 0.9])
def test_large_partial_take_rounds_up(uniform2, n, fraction):
    # The target needs `whole + fraction` of the 2**n equal eigenvalues.
    whole = 3 * 2 ** (n - 2)
    eps = 1.0 - (whole + fraction) / 2 ** n
    length = min_compression_length(uniform2, n, eps)

    assert length.M == (whole if fraction == 0.0 else whole + 1)
    assert length.M / 2 ** n >= (1.0 - eps) - 1e-12


def test_min_compression_length_is_minimal(bernoulli, rng):
    for _ in range(20):
        n = int(rng.integers(10, 40))
        eps = float(rng.uniform(0.05, 0.95))
        M = min_compression_length(bernoulli, n, eps).M
        assert optimal_fidelity(bernoulli, n, M) >= 1.0 - eps - 1e-12
        assert optimal_fidelity(bernoulli, n, M - 1) < 1.0 - eps


def test_min_compression_length_rejects_eps(uniform2):
    with pytest.raises(DomainError):
        min_compression_length(uniform2, 3, 1.0)


def test_optimal_fidelity(uniform2, rng):
    assert optimal_fidelity(uniform2, 2, 2) == 0.5
    spec = random_mixed_spec(rng, 2)
    assert optimal_fidelity(spec, 6, 2 ** 6) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("gamma, expected", [(2.0, 0.5), (3.0, 1.25)])
def test_fidelity_converse_examples(uniform2, gamma, expected):
    assert fidelity_converse_rhs(uniform2, 2, gamma, 1.0) == pytest.approx(expected)


def test_converse_bounds_optimal_fidelity(rng):
    for _ in range(20):
        spec = random_mixed_spec(rng, 3)
        n = int(rng.integers(1, 10))
        length = min_compression_length(spec, n, float(rng.uniform(0.05, 0.95)))
        optimal = optimal_fidelity(spec, n, length.M)
        for gamma in np.linspace(-2.0 * n, 2.0 * n, 41):
            assert fidelity_converse_rhs(spec, n, gamma, length.log2_M) >= optimal - 1e-12

        full = math.log2(3 ** n)
        assert fidelity_converse_rhs(spec, n, 0.5, full) >= 1.0
