"""
Entanglement of two-mode pure states and of the H0 eigenstates

A fixed-M state sum_n xi_n |M-n, n> is already in Schmidt form, so the
entropy of either reduced state is the Shannon entropy of |xi_n|^2.
Entropies are in bits and carry the factor 2 of S_ent = 2 S(rho_1).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy.stats import binom

from .errors import DomainError
from .fockspace import TwoModeState, _check_photons
from .krawtchouk import Coupling, _check_x_index, coefficient_vector


logger = logging.getLogger(__name__)

DISTRIBUTION_TOLERANCE = 1e-10
STATE_NORM_TOLERANCE = 1e-10
# Relative size below which neighbouring weights count as one plateau
PLATEAU_TOLERANCE = 1e-12

UNIT_COUPLING = Coupling(1.0)


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    """Non-negative weights summing to one"""

    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if weights.size == 0:
            raise DomainError("A distribution needs at least one weight")
        if np.any(weights < 0):
            raise DomainError("Distribution weights must be non-negative")
        if abs(float(weights.sum()) - 1.0) > DISTRIBUTION_TOLERANCE:
            raise DomainError(f"Distribution weights sum to {weights.sum()!r}, not 1")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True)
class EntanglementReport:
    """S_ent of the eigenstate with energy E in the M-photon subspace"""

    M: int
    E: float
    s_ent: float


@dataclass
class EntropyTable:
    """Reports plus the photon numbers skipped because E is not on their lattice"""

    reports: List[EntanglementReport] = field(default_factory=list)
    skipped: List[int] = field(default_factory=list)


def shannon_entropy(dist: ProbabilityDistribution) -> float:
    """-sum w log2 w with 0 log 0 = 0"""
    total = 0.0
    for w in dist.weights:
        if w == 0:
            continue
        total -= w * math.log2(w)
    return max(total, 0.0)


def eigenstate_distribution(M: int, x_index: int) -> ProbabilityDistribution:
    """|c^M_n(E_x)|^2, the photon distribution of mode 2"""
    return ProbabilityDistribution(coefficient_vector(M, x_index) ** 2)


def eigenstate_entanglement(M: int, x_index: int, coupling: Coupling = UNIT_COUPLING) -> EntanglementReport:
    """S_ent = 2 S(|c^M_n|^2) for eigenvector x"""
    _check_photons(M)
    _check_x_index(M, x_index)
    s_ent = 2 * shannon_entropy(eigenstate_distribution(M, x_index))
    return EntanglementReport(M, (2 * x_index - M) * coupling.magnitude, s_ent)


def reduced_entropy(state: TwoModeState) -> float:
    """2 S(rho_2) of a normalized fixed-M state, in bits"""
    if abs(state.norm_squared - 1.0) > STATE_NORM_TOLERANCE:
        raise DomainError(f"State must be normalized (norm^2 = {state.norm_squared!r})")
    probabilities = state.probabilities / state.norm_squared
    return 2 * shannon_entropy(ProbabilityDistribution(probabilities))


def peak_count(dist: ProbabilityDistribution) -> int:
    """
    Number of strict local maxima

    A maximal run of equal weights counts once, and counts as a peak when
    every existing neighbour of the run is strictly smaller. Weights that
    differ by less than PLATEAU_TOLERANCE times the largest weight are equal.
    """
    w = dist.weights
    tolerance = PLATEAU_TOLERANCE * float(w.max())

    runs: List[Tuple[int, int]] = []
    start = 0
    for n in range(1, w.size + 1):
        if n == w.size or abs(w[n] - w[n - 1]) > tolerance:
            runs.append((start, n - 1))
            start = n

    peaks = 0
    for start, end in runs:
        left_ok = start == 0 or w[start - 1] < w[start]
        right_ok = end == w.size - 1 or w[end + 1] < w[end]
        if left_ok and right_ok:
            peaks += 1
    return peaks


def binomial_weights(M: int) -> np.ndarray:
    """Binomial(M, 1/2) probabilities, the distribution of the top eigenvector"""
    _check_photons(M)
    return binom.pmf(np.arange(M + 1), M, 0.5)


def _x_for_energy(M: int, E: float, coupling: Coupling) -> Optional[int]:
    """Lattice index of energy E in the M-photon subspace, or None"""
    doubled = E / coupling.magnitude + M
    x = int(round(doubled / 2))
    if abs(doubled - 2 * x) > 1e-9 or not 0 <= x <= M:
        return None
    return x


def entropy_vs_M(
    x_rule: Union[str, float],
    M_range: Iterable[int],
    coupling: Coupling = UNIT_COUPLING
) -> EntropyTable:
    """
    S_ent against the photon number

    Args:
        x_rule: 'max' for E = M|gamma|, or a fixed energy E
        M_range: Photon numbers to evaluate
        coupling: Coupling that fixes the energy scale

    Returns:
        EntropyTable; photon numbers whose spectrum does not contain E are
        listed in skipped
    """
    M_values = list(M_range)
    if not M_values:
        raise DomainError("The photon-number range is empty")

    table = EntropyTable()
    for M in M_values:
        if x_rule == "max":
            x = M
        else:
            x = _x_for_energy(M, float(x_rule), coupling)
            if x is None:
                logger.debug(f"E={x_rule} is not an eigenvalue for M={M}; skipped")
                table.skipped.append(M)
                continue
        table.reports.append(eigenstate_entanglement(M, x, coupling))
    if table.skipped:
        logger.warning(f"Skipped {len(table.skipped)} photon numbers with E={x_rule} off the spectrum")
    return table


def entropy_vs_E(M: int, coupling: Coupling = UNIT_COUPLING) -> List[EntanglementReport]:
    """S_ent for every eigenstate of the M-photon subspace, E ascending"""
    _check_photons(M)
    return [eigenstate_entanglement(M, x, coupling) for x in range(M + 1)]


def entropy_rises(reports: List[EntanglementReport], tolerance: float = 1e-12) -> List[Tuple[float, float]]:
    """Consecutive energy pairs (E, E') with E < E' where S_ent grows"""
    ordered = sorted(reports, key=lambda r: r.E)
    return [
        (a.E, b.E)
        for a, b in zip(ordered, ordered[1:])
        if b.s_ent > a.s_ent + tolerance
    ]


def energy_index(M: int, E: float, coupling: Coupling = UNIT_COUPLING) -> int:
    """Lattice index of E, raising DomainError when E is not an eigenvalue"""
    _check_photons(M)
    x = _x_for_energy(M, E, coupling)
    if x is None:
        raise DomainError(f"E={E} is not an eigenvalue of H0 for M={M} and |gamma|={coupling.magnitude}")
    return x
