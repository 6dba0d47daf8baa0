"""
Brute-force validation path

A cyclic Jacobi eigensolver for Hermitian matrices. It never touches the
Krawtchouk recurrences, so agreement with the analytic solver is a genuine
cross-check.
"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConvergenceError, DomainError
from .hamiltonian import HamiltonianSpec, SubspaceMatrix, nonlinear_matrix
from .krawtchouk import EigenSystem


logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class DenseEigenResult:
    """Ascending eigenvalues and eigenvectors stored as columns"""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def residual(self, matrix: np.ndarray) -> float:
        """max |A v - lambda v| over all pairs"""
        A = np.asarray(matrix, dtype=complex)
        return float(np.max(np.abs(A @ self.eigenvectors - self.eigenvectors * self.eigenvalues[None, :])))


@dataclass(frozen=True)
class SpectrumComparison:
    """Largest discrepancies between a dense and an analytic spectrum"""

    dimension: int
    eigenvalue_gap: float
    eigenvector_gap: float
    probability_gap: float

    def passes(
        self,
        eigenvalue_tolerance: float = 1e-9,
        eigenvector_tolerance: float = 1e-8,
        probability_tolerance: float = 1e-8
    ) -> bool:
        return (
            self.eigenvalue_gap < eigenvalue_tolerance
            and self.eigenvector_gap < eigenvector_tolerance
            and self.probability_gap < probability_tolerance
        )


def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """Unitary 2x2 block that annihilates the (p, q) element"""
    r = abs(apq)
    phase = apq / r
    theta = 0.5 * math.atan2(2 * r, aqq - app)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)


def _rotate_columns(X: np.ndarray, p: int, q: int, G: np.ndarray):
    """X[:, [p, q]] <- X[:, [p, q]] @ G, in place"""
    xp = X[:, p].copy()
    xq = X[:, q]
    X[:, p] = xp * G[0, 0] + xq * G[1, 0]
    X[:, q] = xp * G[0, 1] + xq * G[1, 1]


def dense_hermitian_eig(
    matrix: Union[SubspaceMatrix, np.ndarray],
    tolerance: float = 1e-13,
    max_sweeps: int = 60
) -> DenseEigenResult:
    """
    Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations

    Args:
        matrix: Hermitian matrix (SubspaceMatrix or square array)
        tolerance: Stop once the off-diagonal Frobenius norm falls below
            tolerance times the Frobenius norm of the matrix
        max_sweeps: Upper bound on full sweeps over the upper triangle

    Returns:
        DenseEigenResult with ascending eigenvalues

    Raises:
        DomainError: If the matrix is not square or not Hermitian
        ConvergenceError: If max_sweeps sweeps do not reach the tolerance
    """
    entries = matrix.entries if isinstance(matrix, SubspaceMatrix) else matrix
    A = np.array(entries, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"Matrix must be square, got shape {A.shape}")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if np.max(np.abs(A - A.conj().T), initial=0.0) > HERMITIAN_TOLERANCE * scale:
        raise DomainError("Matrix must be Hermitian")

    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    threshold = tolerance * max(float(np.linalg.norm(A)), 1e-300)

    sweeps = 0
    while True:
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= threshold:
            break
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi sweeps did not converge after {max_sweeps} sweeps (off={off:.3e})")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] == 0:
                    continue
                G = _rotation(A[p, p].real, A[q, q].real, A[p, q])
                _rotate_columns(A, p, q, G)
                _rotate_columns(A.T, p, q, G.conj())
                A[p, q] = A[q, p] = 0.0
                _rotate_columns(V, p, q, G)

    eigenvalues = np.real(np.diag(A))
    order = np.argsort(eigenvalues, kind="stable")
    logger.debug(f"Jacobi converged for n={n} after {sweeps} sweeps")
    return DenseEigenResult(eigenvalues[order], V[:, order], sweeps)


def _align(vector: np.ndarray, index: int) -> np.ndarray:
    component = vector[index]
    if abs(component) == 0:
        return vector
    return vector * (abs(component) / component)


def compare_spectra(a: DenseEigenResult, b: EigenSystem) -> SpectrumComparison:
    """
    Compare a dense eigendecomposition with the analytic eigensystem

    Eigenvectors are phase aligned on a shared index: the first component of
    the dense vector within a relative 1e-6 of its largest magnitude. Mirror
    symmetry makes that maximum appear twice, so the index must be shared.
    """
    dimension = b.M + 1
    if a.eigenvalues.size != dimension or a.eigenvectors.shape != (dimension, dimension):
        raise DomainError(f"Dimension mismatch: dense {a.eigenvalues.size} vs analytic {dimension}")

    eigenvalue_gap = float(np.max(np.abs(np.sort(a.eigenvalues) - np.sort(b.eigenvalues))))

    analytic = b.matrix
    eigenvector_gap = 0.0
    probability_gap = 0.0
    for k in range(dimension):
        u = a.eigenvectors[:, k]
        v = analytic[:, k]
        magnitudes = np.abs(u)
        index = int(np.argmax(magnitudes >= (1 - 1e-6) * magnitudes.max()))
        eigenvector_gap = max(eigenvector_gap, float(np.linalg.norm(_align(u, index) - _align(v, index))))
        probability_gap = max(probability_gap, float(np.max(np.abs(magnitudes ** 2 - np.abs(v) ** 2))))

    return SpectrumComparison(dimension, eigenvalue_gap, eigenvector_gap, probability_gap)


def oracle_propagator(spec: HamiltonianSpec, M: int, t: float) -> np.ndarray:
    """exp(-iHt) from the dense eigendecomposition of the full nonlinear matrix"""
    result = dense_hermitian_eig(nonlinear_matrix(spec, M))
    V = result.eigenvectors
    return (V * np.exp(-1j * result.eigenvalues * t)[None, :]) @ V.conj().T
