"""
Exact time evolution by spectral decomposition

exp(-iHt) is assembled from the Krawtchouk eigenbasis of H0, which every
nonlinear Hamiltonian shares; no series expansion is ever used.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, SimulationError
from .fockspace import (
    MAX_PHOTONS,
    CoherentTruncation,
    MultiModeState,
    TwoModeState,
    _check_photons,
    truncated_coherent,
)
from .hamiltonian import HamiltonianSpec, design_evenswap, design_pswap, nonlinear_eigenvalues
from .krawtchouk import Coupling, coefficient_matrix


logger = logging.getLogger(__name__)

NORM_DRIFT_TOLERANCE = 1e-10
SORTER_MAX_PHOTONS = 4


@dataclass(frozen=True, eq=False)
class Propagator:
    """U = exp(-iHt) on the M-photon subspace"""

    M: int
    matrix: np.ndarray
    spec: HamiltonianSpec
    t: float

    def unitarity_error(self) -> float:
        """max |U U^dag - I|"""
        return float(np.max(np.abs(self.matrix @ self.matrix.conj().T - np.eye(self.M + 1))))


@dataclass(frozen=True, eq=False)
class TrajectorySample:
    """<n2> at one time, optionally with the full state"""

    t: float
    n2_expectation: float
    state: Optional[TwoModeState] = None


@dataclass(frozen=True, eq=False)
class CatResult:
    """Evolved coherent input, stored block by block in the photon number M"""

    truncation: CoherentTruncation
    coupling: Coupling
    tau: float
    blocks: Dict[int, np.ndarray] = field(repr=False)
    targets: Dict[int, np.ndarray] = field(repr=False)

    @property
    def fidelity(self) -> float:
        """|<target|evolved>|^2 with both sides normalized on the truncated space"""
        overlap = sum(np.vdot(self.targets[M], self.blocks[M]) for M in self.blocks)
        norm_out = sum(np.sum(np.abs(b) ** 2) for b in self.blocks.values())
        norm_target = sum(np.sum(np.abs(b) ** 2) for b in self.targets.values())
        return float(abs(overlap) ** 2 / (norm_out * norm_target))


@dataclass(frozen=True)
class SwapRow:
    """How a Hamiltonian acts on |M,0> at one time"""

    M: int
    swap_probability: float
    stay_probability: float
    stay_phase: complex


@lru_cache(maxsize=256)
def _eigenbasis(M: int, coupling: Coupling) -> np.ndarray:
    phases = np.exp(-1j * np.arange(M + 1) * coupling.phase)
    V = coefficient_matrix(M) * phases[:, None]
    V.setflags(write=False)
    return V


def propagator(spec: HamiltonianSpec, M: int, t: float) -> Propagator:
    """
    exp(-iHt) = sum_x exp(-i eps_x t) |E_x><E_x|

    Args:
        spec: Hamiltonian built from n and H0
        M: Total photon number of the subspace
        t: Evolution time

    Returns:
        Propagator on the M-photon subspace
    """
    _check_photons(M)
    V = _eigenbasis(M, spec.coupling)
    phases = np.exp(-1j * nonlinear_eigenvalues(spec, M) * t)
    matrix = (V * phases[None, :]) @ V.conj().T
    matrix.setflags(write=False)
    return Propagator(M, matrix, spec, float(t))


def _settle_norm(amplitudes: np.ndarray) -> Tuple[np.ndarray, bool]:
    """Remove rounding drift from a norm that should be one"""
    norm = float(np.linalg.norm(amplitudes))
    if abs(norm ** 2 - 1.0) <= NORM_DRIFT_TOLERANCE:
        return amplitudes / norm, True
    logger.warning(f"Evolved state drifted off unit norm (norm^2 = {norm ** 2!r})")
    return amplitudes, False


def evolve(spec: HamiltonianSpec, state: TwoModeState, t: float) -> TwoModeState:
    """exp(-iHt)|state>"""
    U = propagator(spec, state.total_photons, t)
    amplitudes, normalized = _settle_norm(U.matrix @ state.amplitudes)
    return TwoModeState(state.total_photons, amplitudes, normalized=normalized)


def default_time_grid(tau: float = 1.0, samples: int = 400, t_max: Optional[float] = None) -> np.ndarray:
    """Uniform grid over [0, t_max], by default [0, 4 tau]"""
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples}")
    t_max = 4 * tau if t_max is None else t_max
    return np.linspace(0.0, t_max, samples)


def n2_trajectory(
    spec: HamiltonianSpec,
    initial: TwoModeState,
    t_grid: Sequence[float],
    keep_states: bool = False
) -> List[TrajectorySample]:
    """
    <n2>(t) on a time grid

    The initial state is expanded once in the eigenbasis; each sample only
    needs the eigenphases.
    """
    times = np.asarray(t_grid, dtype=float).reshape(-1)
    if not np.all(np.isfinite(times)):
        raise DomainError("Time grid must be finite")
    M = initial.total_photons
    V = _eigenbasis(M, spec.coupling)
    weights = V.conj().T @ initial.amplitudes
    eps = nonlinear_eigenvalues(spec, M)
    # rows: samples, columns: Fock index n
    states = (np.exp(-1j * np.outer(times, eps)) * weights[None, :]) @ V.T
    n = np.arange(M + 1)

    samples = []
    for t, amplitudes in zip(times, states):
        snapshot = None
        if keep_states:
            settled, normalized = _settle_norm(amplitudes)
            snapshot = TwoModeState(M, settled, normalized=normalized)
        n2 = float(np.dot(n, np.abs(amplitudes) ** 2))
        samples.append(TrajectorySample(float(t), n2, snapshot))
    logger.debug(f"Sampled <n2> for M={M} at {len(samples)} times")
    return samples


def swap_probability(spec: HamiltonianSpec, M: int, t: Optional[float] = None) -> float:
    """|<0,M| exp(-iHt) |M,0>|^2, at t = spec.tau by default"""
    t = spec.tau if t is None else t
    if t is None:
        raise DomainError("No time given and the Hamiltonian carries no design time")
    U = propagator(spec, M, t).matrix
    return float(abs(U[M, 0]) ** 2)


def swap_table(spec: HamiltonianSpec, M_values: Iterable[int], t: Optional[float] = None) -> List[SwapRow]:
    """Swap and stay probabilities of |M,0> for each M"""
    t = spec.tau if t is None else t
    if t is None:
        raise DomainError("No time given and the Hamiltonian carries no design time")
    rows = []
    for M in M_values:
        U = propagator(spec, M, t).matrix
        swap = abs(U[M, 0]) ** 2
        rows.append(SwapRow(M, float(swap), float(abs(U[0, 0]) ** 2), complex(U[0, 0])))
    return rows


def cat_target(truncation: CoherentTruncation) -> Dict[int, np.ndarray]:
    """
    Blocks of |0>_1 (|a> + |-a>)_2 / 2 + i (|a> - |-a>)_1 |0>_2 / 2

    Even photon numbers end up in mode 2, odd ones stay in mode 1 with a factor i.
    """
    blocks = {}
    for M, amplitude in enumerate(truncation.amplitudes):
        block = np.zeros(M + 1, dtype=complex)
        if M % 2 == 0:
            block[M] = amplitude
        else:
            block[0] = 1j * amplitude
        blocks[M] = block
    return blocks


def cat_from_coherent(
    alpha: complex,
    coupling: Coupling,
    tau: float,
    epsilon: float,
    max_photons: int = MAX_PHOTONS
) -> CatResult:
    """
    Evolve |alpha>_1 |0>_2 under the even-swap Hamiltonian for time tau

    The coherent input superposes photon numbers that evolve independently,
    so each M block is propagated on its own.
    """
    truncation = truncated_coherent(alpha, epsilon, max_photons)
    spec = design_evenswap(coupling, tau)
    blocks = {}
    for M, amplitude in enumerate(truncation.amplitudes):
        initial = np.zeros(M + 1, dtype=complex)
        initial[0] = amplitude
        blocks[M] = propagator(spec, M, tau).matrix @ initial
    result = CatResult(truncation, coupling, tau, blocks, cat_target(truncation))
    logger.info(f"Cat generation from alpha={alpha}: {truncation.cutoff + 1} blocks, fidelity {result.fidelity:.15f}")
    return result


def cat_branches(result: CatResult) -> Dict[str, object]:
    """
    Split the evolved state into the even cat in mode 2 and the odd cat in mode 1

    Returns:
        Dictionary with 'mode2' and 'mode1' single-mode amplitude arrays and
        their weights
    """
    cutoff = result.truncation.cutoff
    mode2 = np.zeros(cutoff + 1, dtype=complex)
    mode1 = np.zeros(cutoff + 1, dtype=complex)
    for M, block in result.blocks.items():
        mode2[M] = block[M]
        if M > 0:
            mode1[M] = block[0]
    return {
        "mode2": mode2,
        "mode1": mode1,
        "mode2_weight": float(np.sum(np.abs(mode2) ** 2)),
        "mode1_weight": float(np.sum(np.abs(mode1) ** 2)),
    }


def _check_pair(state: MultiModeState, i: int, j: int):
    if i == j:
        raise DomainError(f"Pair modes must differ, got ({i}, {j})")
    for mode in (i, j):
        if not 1 <= mode <= state.mode_count:
            raise DomainError(f"Mode {mode} outside 1..{state.mode_count}")


def _settle_multimode(amplitudes: Dict[Tuple[int, ...], complex], like: MultiModeState) -> MultiModeState:
    norm_squared = sum(abs(a) ** 2 for a in amplitudes.values())
    if abs(norm_squared - 1.0) > NORM_DRIFT_TOLERANCE:
        raise SimulationError(f"Pairwise evolution lost unitarity (norm^2 = {norm_squared!r})")
    norm = np.sqrt(norm_squared)
    return MultiModeState(
        {k: a / norm for k, a in amplitudes.items()},
        mode_count=like.mode_count,
        total_photons=like.total_photons,
    )


def apply_pairwise(
    state: MultiModeState,
    i: int,
    j: int,
    spec: HamiltonianSpec,
    t: float
) -> MultiModeState:
    """
    Couple modes i and j (1-based) with a two-mode Hamiltonian for time t

    Within the pair, mode i plays mode 1 and mode j plays mode 2. Amplitudes
    are grouped by spectator occupations and pair photon number m, each group
    is propagated with the m-photon propagator, spectators are untouched.
    """
    _check_pair(state, i, j)
    a, b = i - 1, j - 1

    blocks: Dict[Tuple[Tuple[int, ...], int], np.ndarray] = {}
    for occupation, amplitude in state.amplitudes.items():
        m = occupation[a] + occupation[b]
        spectators = tuple(k for idx, k in enumerate(occupation) if idx not in (a, b))
        block = blocks.setdefault((spectators, m), np.zeros(m + 1, dtype=complex))
        block[occupation[b]] += amplitude

    propagators: Dict[int, np.ndarray] = {}
    evolved: Dict[Tuple[int, ...], complex] = {}
    for (spectators, m), block in blocks.items():
        if m not in propagators:
            propagators[m] = propagator(spec, m, t).matrix
        out = propagators[m] @ block
        for n in range(m + 1):
            if out[n] == 0:
                continue
            occupation = list(spectators)
            # re-insert the pair in mode order
            for idx, value in sorted(((a, m - n), (b, n))):
                occupation.insert(idx, value)
            evolved[tuple(occupation)] = evolved.get(tuple(occupation), 0j) + out[n]
    return _settle_multimode(evolved, state)


def sort_cascade(
    input_amplitudes: Union[Sequence[complex], Mapping[int, complex]],
    coupling: Coupling,
    tau: float
) -> MultiModeState:
    """
    Route M <= 4 photons of mode 1 into mode M

    Schedule: even swap on (1,2) for tau, then the halved parity-protected
    swaps with N=1 on (1,3) and N=2 on (2,4), applied one after the other.

    Args:
        input_amplitudes: Mode-1 amplitudes by photon number, as a sequence
            indexed by photon number or a mapping
        coupling: Beam splitter coupling used by every pair
        tau: Stage duration

    Returns:
        Final four-mode state
    """
    if isinstance(input_amplitudes, Mapping):
        items = {int(n): complex(a) for n, a in input_amplitudes.items()}
    else:
        items = {n: complex(a) for n, a in enumerate(input_amplitudes)}
    for n, amplitude in items.items():
        if n < 0:
            raise DomainError(f"Photon number must be non-negative, got {n}")
        if n > SORTER_MAX_PHOTONS and amplitude != 0:
            raise DomainError(f"The sorter handles at most {SORTER_MAX_PHOTONS} photons, got support at {n}")

    support = {n: a for n, a in items.items() if a != 0}
    total = next(iter(support)) if len(support) == 1 else None
    state = MultiModeState({(n, 0, 0, 0): a for n, a in support.items()}, total_photons=total)

    stages = [
        (1, 2, design_evenswap(coupling, tau)),
        (1, 3, design_pswap(coupling, tau, N=1, half=True)),
        (2, 4, design_pswap(coupling, tau, N=2, half=True)),
    ]
    for i, j, spec in stages:
        state = apply_pairwise(state, i, j, spec, tau)
        logger.debug(f"After {spec.label} on ({i},{j}): {state.support()}")
    return state
