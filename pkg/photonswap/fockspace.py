"""
Fixed photon-number Fock subspaces for two and four modes

Basis convention used throughout the package: in the M-photon two-mode
subspace, index n counts the photons in mode 2, i.e. amplitude n belongs
to the Fock state |M-n, n>.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import poisson

from .errors import DomainError


logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
# Double precision stays comfortable below this photon number
MAX_PHOTONS = 60
MAX_MODES = 4


def _freeze(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


def _check_photons(M: int, name: str = "M"):
    if not isinstance(M, (int, np.integer)) or M < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {M!r}")
    if M > MAX_PHOTONS:
        logger.warning(f"{name}={M} is above the soft limit {MAX_PHOTONS}; precision is not guaranteed")


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Pure state of two modes with exactly M photons"""

    total_photons: int
    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        _check_photons(self.total_photons)
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != self.total_photons + 1:
            raise DomainError(
                f"Expected {self.total_photons + 1} amplitudes for M={self.total_photons}, "
                f"got {amplitudes.size}"
            )
        if self.normalized and abs(self.norm_squared_of(amplitudes) - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"State is not normalized (norm^2 = {self.norm_squared_of(amplitudes)!r})")
        object.__setattr__(self, "amplitudes", _freeze(amplitudes))

    @staticmethod
    def norm_squared_of(amplitudes: np.ndarray) -> float:
        return float(np.sum(np.abs(amplitudes) ** 2))

    @property
    def norm_squared(self) -> float:
        return self.norm_squared_of(self.amplitudes)

    @property
    def probabilities(self) -> np.ndarray:
        """Probability of finding n photons in mode 2"""
        return np.abs(self.amplitudes) ** 2

    def inner(self, other: "TwoModeState") -> complex:
        """<self|other>"""
        if other.total_photons != self.total_photons:
            return 0j
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class MultiModeState:
    """
    Sparse pure state over Fock states of up to four modes

    total_photons is None when the state superposes different photon numbers
    (the sorting cascade fed with a superposition of Fock states).
    """

    amplitudes: Dict[Tuple[int, ...], complex]
    mode_count: int = MAX_MODES
    total_photons: Optional[int] = None

    def __post_init__(self):
        if not 2 <= self.mode_count <= MAX_MODES:
            raise DomainError(f"mode_count must lie in 2..{MAX_MODES}, got {self.mode_count}")
        cleaned: Dict[Tuple[int, ...], complex] = {}
        for occupation, amplitude in self.amplitudes.items():
            occupation = tuple(int(k) for k in occupation)
            if len(occupation) != self.mode_count or min(occupation) < 0:
                raise DomainError(f"Invalid occupation tuple {occupation} for {self.mode_count} modes")
            if self.total_photons is not None and sum(occupation) != self.total_photons:
                raise DomainError(f"Occupation {occupation} does not hold {self.total_photons} photons")
            cleaned[occupation] = cleaned.get(occupation, 0j) + complex(amplitude)
        norm_squared = sum(abs(a) ** 2 for a in cleaned.values())
        if abs(norm_squared - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"Multimode state is not normalized (norm^2 = {norm_squared!r})")
        object.__setattr__(self, "amplitudes", cleaned)

    def amplitude(self, occupation: Sequence[int]) -> complex:
        return self.amplitudes.get(tuple(occupation), 0j)

    def probability(self, occupation: Sequence[int]) -> float:
        return abs(self.amplitude(occupation)) ** 2

    def support(self, tolerance: float = 1e-12) -> Dict[Tuple[int, ...], complex]:
        """Occupations whose amplitude is not negligible"""
        return {k: a for k, a in sorted(self.amplitudes.items()) if abs(a) > tolerance}

    @property
    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))


@dataclass(frozen=True, eq=False)
class CoherentTruncation:
    """Coherent state truncated to photon numbers 0..cutoff"""

    alpha: complex
    cutoff: int
    amplitudes: np.ndarray = field(repr=False)
    discarded_weight: float = 0.0


def subspace_dim(M: int) -> int:
    """Dimension of the M-photon two-mode subspace"""
    _check_photons(M)
    return M + 1


def fock_state(M: int, n: int) -> TwoModeState:
    """The Fock state |M-n, n>"""
    _check_photons(M)
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= M:
        raise DomainError(f"n must lie in 0..{M}, got {n!r}")
    amplitudes = np.zeros(M + 1, dtype=complex)
    amplitudes[n] = 1.0
    return TwoModeState(M, amplitudes)


def two_mode_state(amplitudes: Iterable[complex], normalize: bool = False) -> TwoModeState:
    """Build a state from amplitudes indexed by the photon number of mode 2"""
    values = np.asarray(list(amplitudes), dtype=complex)
    if values.size == 0:
        raise DomainError("At least one amplitude is required")
    if normalize:
        norm = np.linalg.norm(values)
        if norm == 0:
            raise DomainError("Cannot normalize the zero vector")
        values = values / norm
    return TwoModeState(values.size - 1, values)


def number_expectation(state: TwoModeState, mode: int) -> float:
    """<n_mode> for mode 1 or 2"""
    M = state.total_photons
    n = np.arange(M + 1)
    if mode == 2:
        return float(np.dot(n, state.probabilities))
    if mode == 1:
        return float(np.dot(M - n, state.probabilities))
    raise DomainError(f"mode must be 1 or 2, got {mode!r}")


def truncated_coherent(alpha: complex, epsilon: float, max_photons: int = MAX_PHOTONS) -> CoherentTruncation:
    """
    Truncate the coherent state |alpha> at the smallest cutoff whose
    discarded Poisson tail is below epsilon

    Args:
        alpha: Coherent amplitude
        epsilon: Upper bound for the discarded weight, 0 < epsilon < 1
        max_photons: Refuse to truncate above this photon number

    Returns:
        CoherentTruncation with amplitudes exp(-|a|^2/2) a^n / sqrt(n!)

    Raises:
        DomainError: If epsilon is out of range or the cutoff would exceed max_photons
    """
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    alpha = complex(alpha)
    mean = abs(alpha) ** 2

    def tail(c: int) -> float:
        # P(N > c) for the Poisson photon-number distribution
        return float(poisson.sf(c, mean)) if mean > 0 else 0.0

    cutoff = 0
    while tail(cutoff) >= epsilon:
        cutoff += 1
        if cutoff > max_photons:
            raise DomainError(
                f"|alpha|={abs(alpha)} needs more than {max_photons} photons for epsilon={epsilon}"
            )

    amplitudes = np.empty(cutoff + 1, dtype=complex)
    amplitudes[0] = np.exp(-mean / 2)
    for n in range(cutoff):
        amplitudes[n + 1] = amplitudes[n] * alpha / np.sqrt(n + 1)

    discarded = tail(cutoff)
    logger.debug(f"Coherent state alpha={alpha} truncated at {cutoff} photons (discarded {discarded:.3e})")
    return CoherentTruncation(alpha, cutoff, _freeze(amplitudes), discarded)


def multimode_fock(occupation: Sequence[int]) -> MultiModeState:
    """A single multimode Fock state"""
    occupation = tuple(occupation)
    return MultiModeState({occupation: 1.0}, mode_count=len(occupation), total_photons=sum(occupation))
