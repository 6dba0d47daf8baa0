#!/usr/bin/env python3
"""
Tests for Fock subspace states
"""
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from photonswap.errors import DomainError
from photonswap.fockspace import (
    MultiModeState,
    TwoModeState,
    fock_state,
    multimode_fock,
    number_expectation,
    subspace_dim,
    truncated_coherent,
    two_mode_state,
)


def test_subspace_dim():
    assert subspace_dim(0) == 1
    assert subspace_dim(2) == 3
    assert subspace_dim(38) == 39


def test_subspace_dim_rejects_negative():
    with pytest.raises(DomainError):
        subspace_dim(-1)


def test_fock_state_basis_vectors():
    assert_array_equal(fock_state(1, 0).amplitudes, [1, 0])
    assert_array_equal(fock_state(2, 1).amplitudes, [0, 1, 0])


def test_fock_state_out_of_range():
    with pytest.raises(DomainError):
        fock_state(3, 4)


def test_state_length_must_match():
    with pytest.raises(DomainError):
        TwoModeState(2, [1, 0])


def test_state_must_be_normalized_unless_flagged():
    with pytest.raises(DomainError):
        TwoModeState(1, [1, 1])
    state = TwoModeState(1, [1, 1], normalized=False)
    assert state.norm_squared == pytest.approx(2.0)


def test_two_mode_state_normalize():
    state = two_mode_state([1, 1j], normalize=True)
    assert state.total_photons == 1
    assert state.norm_squared == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DomainError):
        two_mode_state([0, 0], normalize=True)


def test_number_expectation():
    state = fock_state(3, 1)
    assert number_expectation(state, 2) == 1.0
    assert number_expectation(state, 1) == 2.0
    with pytest.raises(DomainError):
        number_expectation(state, 3)


def test_number_expectation_superposition():
    state = two_mode_state([1, 0, 1], normalize=True)
    assert number_expectation(state, 2) == pytest.approx(1.0)
    assert number_expectation(state, 1) + number_expectation(state, 2) == pytest.approx(2.0)


def test_inner_product():
    a = two_mode_state([1, 1], normalize=True)
    b = fock_state(1, 1)
    assert a.inner(b) == pytest.approx(1 / math.sqrt(2))
    assert a.inner(fock_state(2, 1)) == 0


def test_truncated_coherent_alpha_two():
    truncation = truncated_coherent(2.0, 1e-12)
    n = np.arange(truncation.cutoff + 1)
    expected = np.exp(-2.0) * np.array([2.0 ** k / math.sqrt(math.factorial(k)) for k in n])
    assert_allclose(truncation.amplitudes, expected, rtol=1e-12)
    assert truncation.discarded_weight < 1e-12
    kept = float(np.sum(np.abs(truncation.amplitudes) ** 2))
    assert kept == pytest.approx(1 - truncation.discarded_weight, abs=1e-13)


def test_truncated_coherent_cutoff_is_smallest():
    truncation = truncated_coherent(2.0, 1e-12)
    shorter = truncation.amplitudes[:-1]
    assert 1 - float(np.sum(np.abs(shorter) ** 2)) >= 1e-12 * 0.5


def test_truncated_coherent_vacuum():
    truncation = truncated_coherent(0.0, 1e-12)
    assert truncation.cutoff == 0
    assert_allclose(truncation.amplitudes, [1.0])
    assert truncation.discarded_weight == 0.0


def test_truncated_coherent_complex_alpha_phases():
    alpha = 1.5 * np.exp(0.3j)
    truncation = truncated_coherent(alpha, 1e-10)
    assert_allclose(np.angle(truncation.amplitudes[1:4]), 0.3 * np.arange(1, 4), atol=1e-12)


@pytest.mark.parametrize("epsilon", [0.0, 1.0, -1e-3, 2.0])
def test_truncated_coherent_rejects_epsilon(epsilon):
    with pytest.raises(DomainError):
        truncated_coherent(1.0, epsilon)


def test_truncated_coherent_refuses_huge_alpha():
    with pytest.raises(DomainError):
        truncated_coherent(10.0, 1e-12)


def test_multimode_fock():
    state = multimode_fock((0, 0, 0, 4))
    assert state.total_photons == 4
    assert state.amplitude((0, 0, 0, 4)) == 1
    assert state.probability((1, 0, 0, 3)) == 0


def test_multimode_validation():
    with pytest.raises(DomainError):
        MultiModeState({(1, 0, 0): 1.0})
    with pytest.raises(DomainError):
        MultiModeState({(1, 0, 0, 0): 1.0}, total_photons=2)
    with pytest.raises(DomainError):
        MultiModeState({(1, 0, 0, 0): 0.5})
    with pytest.raises(DomainError):
        MultiModeState({(1, 0): 1.0}, mode_count=5)


def test_multimode_support_drops_negligible_amplitudes():
    state = MultiModeState({(1, 0, 0, 0): 1.0, (0, 2, 0, 0): 1e-14})
    assert list(state.support()) == [(1, 0, 0, 0)]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
