"""
Cross-checks of the analytic solver against the brute-force oracle

Verifier prints one line per check the way a health check does and keeps
passed, failed and warning lists for the summary.
"""

import logging
import sys
from typing import Callable, List, Optional, TextIO

import numpy as np

from .entanglement import binomial_weights
from .errors import VerificationError
from .evolution import propagator
from .hamiltonian import design_evenswap, design_lswap, design_pswap, h0_matrix
from .krawtchouk import Coupling, coefficient_vector, eigensystem, recurrence_residual
from .oracle import compare_spectra, dense_hermitian_eig, oracle_propagator


logger = logging.getLogger(__name__)

# Size of the Hermitian shift injected by the negative control
PERTURBATION = 1e-6


class Verifier:
    """Verifier for the spectral solver and the designed Hamiltonians"""

    def __init__(
        self,
        coupling: Optional[Coupling] = None,
        tau: float = 1.0,
        config=None,
        stream: Optional[TextIO] = None
    ):
        self.coupling = coupling or (config.coupling if config is not None else Coupling(1.0))
        self.tau = tau
        self.config = config
        self.stream = stream or sys.stdout
        self.passed: List[str] = []
        self.failed: List[str] = []
        self.warnings: List[str] = []

    def _tolerance(self, name: str, default: float) -> float:
        return self.config.tolerance(name) if self.config is not None else default

    def _print(self, text: str = ""):
        print(text, file=self.stream)

    def print_header(self, title: str):
        """Print section header"""
        self._print(f"\n{'='*70}")
        self._print(f"  {title}")
        self._print('='*70)

    def print_check(self, name: str, status: str, message: str = ""):
        """Print check result"""
        status_icon = "✓" if status == "PASS" else "✗" if status == "FAIL" else "⚠"
        self._print(f"  {status_icon} {name}: {status}")
        if message:
            self._print(f"     {message}")

        if status == "PASS":
            self.passed.append(name)
        elif status == "FAIL":
            self.failed.append(name)
        else:
            self.warnings.append(name)

    def _bound(self, name: str, value: float, limit: float):
        status = "PASS" if value < limit else "FAIL"
        self.print_check(name, status, f"max deviation {value:.3e} (limit {limit:.0e})")

    def _guarded(self, name: str, check: Callable[[], None]):
        try:
            check()
        except Exception as e:
            logger.error(f"{name} raised: {e}")
            self.print_check(name, "FAIL", str(e))

    def check_spectra(self, M_max: int, perturb: bool = False):
        """Krawtchouk eigenpairs against dense Jacobi eigenpairs of H0"""
        self.print_header("Spectrum Check")

        eigenvalue_gap = 0.0
        eigenvector_gap = 0.0
        probability_gap = 0.0
        for M in range(M_max + 1):
            matrix = np.array(h0_matrix(M, self.coupling).entries)
            if perturb:
                matrix[0, 0] += PERTURBATION
            comparison = compare_spectra(dense_hermitian_eig(matrix), eigensystem(M, self.coupling))
            eigenvalue_gap = max(eigenvalue_gap, comparison.eigenvalue_gap)
            eigenvector_gap = max(eigenvector_gap, comparison.eigenvector_gap)
            probability_gap = max(probability_gap, comparison.probability_gap)

        self._bound(f"Eigenvalues M<={M_max}", eigenvalue_gap, self._tolerance("eigenvalue", 1e-9))
        self._bound(f"Eigenvectors M<={M_max}", eigenvector_gap, self._tolerance("eigenvector", 1e-8))
        self._bound(f"Photon distributions M<={M_max}", probability_gap, self._tolerance("eigenvector", 1e-8))

    def check_recurrence(self, M_max: int):
        """Three-term recurrence residuals and the binomial top eigenvector"""
        self.print_header("Recurrence Check")

        residual = 0.0
        binomial_gap = 0.0
        for M in range(M_max + 1):
            for x in range(M + 1):
                residual = max(residual, float(np.max(np.abs(recurrence_residual(M, x)))))
            top = coefficient_vector(M, M) ** 2
            binomial_gap = max(binomial_gap, float(np.max(np.abs(top - binomial_weights(M)))))

        self._bound("Recurrence residual", residual, 1e-10)
        self._bound("Top eigenvector is binomial", binomial_gap, 1e-10)

    def check_designs(self, M_max: int):
        """Swap contracts and unitarity of the designed Hamiltonians"""
        self.print_header("Designed Hamiltonian Check")

        top = min(M_max, 20)
        if top < 1:
            self.print_check("Designed Hamiltonians", "INFO", "Skipped for M_max < 1")
            return

        tau = self.tau
        lswap = design_lswap(self.coupling, tau)
        evenswap = design_evenswap(self.coupling, tau)
        unitary_limit = self._tolerance("unitary", 1e-10)

        def lswap_contract():
            gap = max(1 - abs(propagator(lswap, M, tau).matrix[M, 0]) for M in range(1, top + 1))
            self._bound(f"lswap swaps |M,0> for M<={top}", gap, 1e-9)

        def evenswap_contract():
            gap = 0.0
            for M in range(1, top + 1):
                column = propagator(evenswap, M, tau).matrix[:, 0]
                target = np.zeros(M + 1, dtype=complex)
                if M % 2 == 0:
                    target[M] = 1.0
                else:
                    target[0] = 1j
                gap = max(gap, float(np.max(np.abs(column - target))))
            self._bound(f"evenswap parity rule for M<={top}", gap, 1e-9)

        def pswap_contract():
            gap = 0.0
            for N in range(0, min(top, 10) + 1):
                spec = design_pswap(self.coupling, tau, N)
                gap = max(gap, float(np.max(np.abs(propagator(spec, N, tau).matrix - np.eye(N + 1)))))
                for M in (N - 1, N + 1):
                    if M >= 1:
                        gap = max(gap, 1 - abs(propagator(spec, M, tau).matrix[M, 0]))
            self._bound("pswap keeps N, swaps N+-1", gap, 1e-9)

        def unitarity():
            error = 0.0
            for spec in (lswap, evenswap, design_pswap(self.coupling, tau, 2)):
                for M in range(top + 1):
                    error = max(error, propagator(spec, M, tau).unitarity_error())
            self._bound("Propagators are unitary", error, unitary_limit)

        def oracle_agreement():
            designs = [
                lswap,
                evenswap,
                design_pswap(self.coupling, tau, 1),
                design_pswap(self.coupling, tau, 2, half=True),
            ]
            gap = 0.0
            for spec in designs:
                for M in range(top + 1):
                    for t in (0.37 * tau, tau):
                        exact = propagator(spec, M, t).matrix
                        gap = max(gap, float(np.max(np.abs(exact - oracle_propagator(spec, M, t)))))
            self._bound("Spectral vs dense propagator", gap, 1e-8)

        for name, check in [
            ("lswap contract", lswap_contract),
            ("evenswap contract", evenswap_contract),
            ("pswap contract", pswap_contract),
            ("Unitarity", unitarity),
            ("Oracle propagator", oracle_agreement),
        ]:
            self._guarded(name, check)

    def print_summary(self) -> bool:
        """Print verification summary"""
        self.print_header("Verification Summary")

        total = len(self.passed) + len(self.failed)
        pass_rate = (len(self.passed) / total * 100) if total > 0 else 100

        self._print(f"\n  Total Checks: {total}")
        self._print(f"  Passed: {len(self.passed)} ({pass_rate:.0f}%)")
        self._print(f"  Failed: {len(self.failed)}")

        if len(self.failed) == 0:
            self._print("\n  ✓ All checks passed.")
        else:
            self._print("\n  ✗ Some checks failed: " + ", ".join(self.failed))

        return len(self.failed) == 0

    def run(self, M_max: int = 40, perturb: bool = False, strict: bool = False) -> bool:
        """
        Run every check up to M_max photons

        Args:
            M_max: Largest photon number to verify
            perturb: Shift the oracle input so the spectrum check must fail
            strict: Raise instead of returning False

        Returns:
            True when every check passed

        Raises:
            VerificationError: If strict is set and a check failed
        """
        logger.info(f"Verifying spectra up to M={M_max}")
        self._guarded("Spectrum", lambda: self.check_spectra(M_max, perturb))
        self._guarded("Recurrence", lambda: self.check_recurrence(M_max))
        self.check_designs(M_max)
        ok = self.print_summary()
        if strict and not ok:
            raise VerificationError(f"Verification failed: {', '.join(self.failed)}")
        return ok
