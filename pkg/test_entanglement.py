#!/usr/bin/env python3
"""
Tests for eigenstate entanglement and photon distributions
"""
import sys
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from photonswap.entanglement import (
    ProbabilityDistribution,
    binomial_weights,
    eigenstate_distribution,
    eigenstate_entanglement,
    energy_index,
    entropy_rises,
    entropy_vs_E,
    entropy_vs_M,
    peak_count,
    reduced_entropy,
    shannon_entropy,
)
from photonswap.errors import DomainError
from photonswap.fockspace import TwoModeState, fock_state, two_mode_state
from photonswap.krawtchouk import Coupling, coefficient_vector


def test_shannon_entropy_values():
    assert shannon_entropy(ProbabilityDistribution([1.0])) == 0.0
    assert shannon_entropy(ProbabilityDistribution([0.5, 0.5])) == pytest.approx(1.0)
    assert shannon_entropy(ProbabilityDistribution([0.25, 0.5, 0.25])) == pytest.approx(1.5)
    # zero weights contribute nothing
    assert shannon_entropy(ProbabilityDistribution([0.5, 0.0, 0.5])) == pytest.approx(1.0)


def test_distribution_validation():
    with pytest.raises(DomainError):
        ProbabilityDistribution([0.6, 0.6])
    with pytest.raises(DomainError):
        ProbabilityDistribution([1.2, -0.2])
    with pytest.raises(DomainError):
        ProbabilityDistribution([])


def test_M2_entropies():
    reports = entropy_vs_E(2)
    assert [r.E for r in reports] == [-2.0, 0.0, 2.0]
    assert_allclose([r.s_ent for r in reports], [3.0, 2.0, 3.0], atol=1e-12)


def test_M1_top_entropy():
    assert eigenstate_entanglement(1, 1).s_ent == pytest.approx(2.0, abs=1e-12)


def test_M0_has_no_entanglement():
    report = eigenstate_entanglement(0, 0)
    assert report.E == 0.0
    assert report.s_ent == 0.0


def test_entropy_symmetric_under_energy_flip():
    for M in range(41):
        values = [r.s_ent for r in entropy_vs_E(M)]
        assert_allclose(values, values[::-1], atol=1e-12)


def test_energy_scale_follows_coupling():
    report = eigenstate_entanglement(4, 3, Coupling(0.5j))
    assert report.E == pytest.approx(1.0)
    assert report.s_ent == pytest.approx(eigenstate_entanglement(4, 3).s_ent)


def test_reduced_entropy_of_fock_and_bell_states():
    assert reduced_entropy(fock_state(4, 1)) == 0.0
    bell = two_mode_state([1, 1], normalize=True)
    assert reduced_entropy(bell) == pytest.approx(2.0)


def test_reduced_entropy_requires_normalization():
    with pytest.raises(DomainError):
        reduced_entropy(TwoModeState(1, [1, 1], normalized=False))


def test_reduced_entropy_matches_eigenstate_entanglement():
    M, x = 7, 5
    state = two_mode_state(coefficient_vector(M, x))
    assert reduced_entropy(state) == pytest.approx(eigenstate_entanglement(M, x).s_ent, abs=1e-12)


@pytest.mark.parametrize("E,peaks", [(38, 1), (36, 2), (34, 3), (32, 4)])
def test_distribution_peaks_for_M38(E, peaks):
    x = energy_index(38, E)
    assert peak_count(eigenstate_distribution(38, x)) == peaks


def test_distributions_are_mirror_symmetric():
    M = 38
    for x in range(M + 1):
        w = eigenstate_distribution(M, x).weights
        assert_allclose(w, w[::-1], atol=1e-10)


def test_zero_energy_vanishes_at_odd_n():
    for M in range(0, 41, 2):
        w = eigenstate_distribution(M, M // 2).weights
        assert np.max(w[1::2], initial=0.0) < 1e-10


def test_peak_count_plateaus_and_boundaries():
    assert peak_count(ProbabilityDistribution([1 / 3, 1 / 3, 1 / 3])) == 1
    assert peak_count(ProbabilityDistribution([0.5, 0.25, 0.25])) == 1
    assert peak_count(ProbabilityDistribution([0.4, 0.1, 0.1, 0.4])) == 2
    assert peak_count(ProbabilityDistribution([0.1, 0.3, 0.3, 0.1, 0.2])) == 2
    assert peak_count(ProbabilityDistribution([1.0])) == 1


def test_binomial_weights():
    assert_allclose(binomial_weights(2), [0.25, 0.5, 0.25])
    assert binomial_weights(40).sum() == pytest.approx(1.0)


def test_entropy_grows_with_M_at_top_energy():
    table = entropy_vs_M("max", range(1, 31))
    values = [r.s_ent for r in table.reports]
    assert len(values) == 30
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    assert table.skipped == []


def test_zero_energy_entropy_grows_with_M():
    table = entropy_vs_M(0.0, range(0, 41))
    assert [r.M for r in table.reports] == list(range(0, 41, 2))
    values = [r.s_ent for r in table.reports]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_zero_energy_below_first_excited_energy():
    for M in range(2, 41, 2):
        assert eigenstate_entanglement(M, M // 2).s_ent < eigenstate_entanglement(M, M // 2 + 1).s_ent


def test_M38_top_energy_below_E2():
    assert eigenstate_entanglement(38, energy_index(38, 38)).s_ent < eigenstate_entanglement(38, energy_index(38, 2)).s_ent


def test_entropy_vs_M_skips_parity_mismatch():
    table = entropy_vs_M(0.0, range(1, 7))
    assert [r.M for r in table.reports] == [2, 4, 6]
    assert table.skipped == [1, 3, 5]


def test_entropy_vs_M_skips_energy_above_range():
    table = entropy_vs_M(4.0, range(0, 7))
    assert [r.M for r in table.reports] == [4, 6]


def test_entropy_vs_M_empty_range():
    with pytest.raises(DomainError):
        entropy_vs_M("max", range(5, 5))


def test_energy_index_off_lattice():
    assert energy_index(38, 32) == 35
    with pytest.raises(DomainError):
        energy_index(2, 1.0)
    with pytest.raises(DomainError):
        energy_index(2, 4.0)


def test_entropy_rises_reports_increasing_pairs():
    reports = entropy_vs_E(2)
    assert entropy_rises(reports) == [(0.0, 2.0)]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
