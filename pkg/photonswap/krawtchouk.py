"""
Spectral solver for the beam splitter Hamiltonian

H0 = gamma a1^dag a2 + gamma^* a2^dag a1 restricted to M photons has the
eigenvalues E_x = (2x - M)|gamma|, x = 0..M, and eigenvectors whose Fock
coefficients c^M_n(E_x) are Krawtchouk polynomials K_n(x; 1/2, M).
"""

import cmath
import logging
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.special import binom

from .errors import DomainError
from .fockspace import TwoModeState, _check_photons, _freeze


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Coupling:
    """Beam splitter coupling gamma = |gamma| exp(i g), hbar = 1"""

    gamma: complex

    def __post_init__(self):
        object.__setattr__(self, "gamma", complex(self.gamma))
        if not abs(self.gamma) > 0:
            raise DomainError("The coupling gamma must be nonzero")

    @property
    def magnitude(self) -> float:
        return abs(self.gamma)

    @property
    def phase(self) -> float:
        """g = arg(gamma)"""
        return cmath.phase(self.gamma)


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues (ascending in x) and eigenvectors of H0 on the M-photon subspace"""

    M: int
    coupling: Coupling
    eigenvalues: np.ndarray
    eigenvectors: List[TwoModeState]

    @property
    def matrix(self) -> np.ndarray:
        """Eigenvectors as the columns of a unitary matrix"""
        return np.column_stack([v.amplitudes for v in self.eigenvectors])


def _check_x_index(M: int, x_index: int):
    if not isinstance(x_index, (int, np.integer)) or not 0 <= x_index <= M:
        raise DomainError(f"x_index must lie in 0..{M}, got {x_index!r}")


def energy(M: int, x_index: int, coupling: Coupling) -> float:
    """E_x = (2x - M)|gamma|"""
    return (2 * x_index - M) * coupling.magnitude


def _recurrence(M: int, x: np.ndarray, degree: int) -> np.ndarray:
    """
    Upward three-term recurrence for K_0..K_degree at the points x

    Row n of the result holds K_n(x; 1/2, M). Row M+1, when requested, is the
    residual polynomial (2x - M) K_M - sqrt(M) K_{M-1}, whose roots are 0..M.
    """
    x = np.asarray(x, dtype=float)
    values = np.zeros((degree + 1,) + x.shape)
    values[0] = 1.0
    scaled = 2 * x - M
    for n in range(degree):
        previous = values[n - 1] if n > 0 else 0.0
        step = scaled * values[n] - np.sqrt(n * (M - n + 1)) * previous
        if n < M:
            values[n + 1] = step / np.sqrt((n + 1) * (M - n))
        else:
            values[n + 1] = step
    return values


def krawtchouk_value(n: int, x: float, M: int) -> float:
    """
    Evaluate K_n(x; 1/2, M) with K_0 = 1 by upward recurrence

    On the lattice x = 0..M the upper half of the degrees is taken from the
    mirror identity, as in the coefficient vectors.

    Args:
        n: Degree, 0 <= n <= M + 1
        x: Evaluation point
        M: Total photon number

    Returns:
        K_n(x; 1/2, M); for n = M + 1 the characteristic polynomial that
        vanishes exactly on x = 0..M
    """
    _check_photons(M)
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= M + 1:
        raise DomainError(f"Degree n must lie in 0..{M + 1}, got {n!r}")
    x = float(x)
    if x.is_integer() and 0 <= x <= M:
        values = _mirrored(M, np.asarray(int(x)))
        if n <= M:
            return float(values[n])
        return float((2 * x - M) * values[M] - np.sqrt(M) * values[M - 1])
    return float(_recurrence(M, np.asarray(x), n)[n])


def _pochhammer(y: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= (y + i)
    return out


def krawtchouk_closed_form(n: int, x: float, M: int) -> float:
    """
    Terminating hypergeometric form of K_n(x; 1/2, M) with K_0 = 1

    The alternating sum loses precision quickly; only meant as a cross-check
    of the recurrence for M <= 20.
    """
    _check_photons(M)
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= M:
        raise DomainError(f"Degree n must lie in 0..{M}, got {n!r}")
    total = 0.0
    factorial = 1.0
    for k in range(n + 1):
        if k > 0:
            factorial *= k
        total += _pochhammer(-n, k) * _pochhammer(-x, k) / (_pochhammer(-M, k) * factorial) * 2.0 ** k
    return (-1) ** n * float(np.sqrt(binom(M, n))) * total


def _mirrored(M: int, x: np.ndarray) -> np.ndarray:
    """
    Unnormalized c^M_n(E_x) for n = 0..M at integer points x

    Forward recurrence is only run up to n = M/2, where the wanted solution
    dominates; the upper half follows from c_{M-n} = (-1)^(M+x) c_n.
    """
    half = M // 2
    values = np.empty((M + 1,) + x.shape)
    values[:half + 1] = _recurrence(M, x, half)
    sign = np.where((M + x.astype(int)) % 2, -1.0, 1.0)
    for n in range(half + 1, M + 1):
        values[n] = sign * values[M - n]
    return values


def coefficient_matrix(M: int) -> np.ndarray:
    """
    Real orthogonal matrix C with C[n, x] = c^M_n(E_x)

    Each column is normalized to unit length; c^M_0 > 0 by construction.
    """
    _check_photons(M)
    values = _mirrored(M, np.arange(M + 1))
    return values / np.linalg.norm(values, axis=0)


def coefficient_vector(M: int, x_index: int) -> np.ndarray:
    """Normalized coefficients c^M_n(E) for E = (2 x_index - M)|gamma|"""
    _check_photons(M)
    _check_x_index(M, x_index)
    values = _mirrored(M, np.asarray(x_index))
    return _freeze(values / np.linalg.norm(values))


def recurrence_residual(M: int, x_index: int) -> np.ndarray:
    """Componentwise residual of the three-term recurrence for one coefficient vector"""
    c = coefficient_vector(M, x_index)
    n = np.arange(M + 1)
    upper = np.zeros(M + 1)
    lower = np.zeros(M + 1)
    upper[:-1] = np.sqrt((n[:-1] + 1) * (M - n[:-1])) * c[1:]
    lower[1:] = np.sqrt(n[1:] * (M - n[1:] + 1)) * c[:-1]
    return (2 * x_index - M) * c - upper - lower


def top_eigenvector_closed_form(M: int) -> np.ndarray:
    """c_n = 2^(-M/2) sqrt(binom(M, n)), the coefficients at E = M|gamma|"""
    _check_photons(M)
    n = np.arange(M + 1)
    return _freeze(2.0 ** (-M / 2) * np.sqrt(binom(M, n)))


def swap_sign(M: int, x_index: int) -> int:
    """Sign relating the end coefficients: c^M_M(E_x) = (-1)^(M+x) c^M_0(E_x)"""
    _check_x_index(M, x_index)
    return -1 if (M + x_index) % 2 else 1


def eigensystem(M: int, coupling: Coupling) -> EigenSystem:
    """
    Diagonalize H0 on the M-photon subspace

    Eigenvalues come straight from the lattice (2x - M)|gamma|; eigenvector x
    has amplitudes c^M_n(E_x) exp(-i n g).
    """
    _check_photons(M)
    if not isinstance(coupling, Coupling):
        coupling = Coupling(coupling)
    x = np.arange(M + 1)
    eigenvalues = (2 * x - M) * coupling.magnitude
    phases = np.exp(-1j * np.arange(M + 1) * coupling.phase)
    C = coefficient_matrix(M)
    eigenvectors = [TwoModeState(M, C[:, k] * phases) for k in range(M + 1)]
    logger.debug(f"Built Krawtchouk eigensystem for M={M}, |gamma|={coupling.magnitude}")
    return EigenSystem(M, coupling, _freeze(eigenvalues.astype(float)), eigenvectors)


def fock_overlaps(M: int, n: int, coupling: Coupling) -> np.ndarray:
    """<E_x|M-n, n> = exp(i n g) c^M_n(E_x) for x = 0..M"""
    _check_photons(M)
    if not 0 <= n <= M:
        raise DomainError(f"n must lie in 0..{M}, got {n!r}")
    return coefficient_matrix(M)[n, :] * np.exp(1j * n * coupling.phase)
