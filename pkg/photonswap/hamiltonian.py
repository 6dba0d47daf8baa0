"""
Beam splitter and nonlinear Hamiltonians on fixed photon-number subspaces

A nonlinear Hamiltonian is a sum of monomials coeff * n^a * H0^b, where n is
the total photon number. Every such operator commutes with H0 and acts on
the M-photon eigenvector x as the number sum(coeff * M^a * E_x^b).
"""

import json
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, Optional, Tuple

import numpy as np

from .errors import DomainError
from .fockspace import _check_photons
from .krawtchouk import Coupling, _check_x_index, energy


logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Monomial:
    """coeff * n^a * H0^b"""

    a: int
    b: int
    coeff: float

    def __post_init__(self):
        if int(self.a) != self.a or int(self.b) != self.b or self.a < 0 or self.b < 0:
            raise DomainError(f"Monomial powers must be non-negative integers, got a={self.a}, b={self.b}")
        if not math.isfinite(self.coeff):
            raise DomainError(f"Monomial coefficient must be finite, got {self.coeff!r}")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "coeff", float(self.coeff))


@dataclass(frozen=True)
class HamiltonianSpec:
    """Symbolic Hamiltonian sum_k omega_k n^k + alpha_k H0^k, extended to mixed n^a H0^b terms"""

    coupling: Coupling
    terms: Tuple[Monomial, ...]
    label: Optional[str] = None
    tau: Optional[float] = None
    N: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not isinstance(self.coupling, Coupling):
            object.__setattr__(self, "coupling", Coupling(self.coupling))
        terms = tuple(t if isinstance(t, Monomial) else Monomial(*t) for t in self.terms)
        if not any(t.coeff != 0 for t in terms):
            raise DomainError("A Hamiltonian needs at least one nonzero term")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_power_series(
        cls,
        coupling: Coupling,
        series: Iterable[Tuple[int, float, float]],
        **metadata
    ) -> "HamiltonianSpec":
        """Build from (k, omega_k, alpha_k) triples"""
        terms = []
        for k, omega, alpha in series:
            if omega != 0:
                terms.append(Monomial(k, 0, omega))
            if alpha != 0:
                terms.append(Monomial(0, k, alpha))
        return cls(coupling, tuple(terms), **metadata)

    def scaled(self, factor: float) -> "HamiltonianSpec":
        """The same Hamiltonian multiplied by factor"""
        return replace(self, terms=tuple(Monomial(t.a, t.b, t.coeff * factor) for t in self.terms))

    @property
    def max_power(self) -> int:
        return max(t.b for t in self.terms)


@dataclass(frozen=True, eq=False)
class SubspaceMatrix:
    """Hermitian matrix of an operator on the M-photon subspace"""

    M: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (self.M + 1, self.M + 1):
            raise DomainError(f"Expected a {self.M + 1}x{self.M + 1} matrix, got {entries.shape}")
        scale = max(1.0, float(np.max(np.abs(entries)))) if entries.size else 1.0
        if np.max(np.abs(entries - entries.conj().T)) > HERMITIAN_TOLERANCE * scale:
            raise DomainError("Subspace matrix is not Hermitian")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


def h0_matrix(M: int, coupling: Coupling) -> SubspaceMatrix:
    """
    Tridiagonal matrix of H0 in the |M-n, n> basis

    <n+1|H0|n> = gamma^* sqrt((n+1)(M-n)) moves a photon from mode 1 to mode 2;
    the element above the diagonal is its conjugate.
    """
    _check_photons(M)
    n = np.arange(M)
    hopping = np.sqrt((n + 1) * (M - n))
    entries = np.zeros((M + 1, M + 1), dtype=complex)
    entries[n + 1, n] = np.conj(coupling.gamma) * hopping
    entries[n, n + 1] = coupling.gamma * hopping
    return SubspaceMatrix(M, entries)


def nonlinear_matrix(spec: HamiltonianSpec, M: int) -> SubspaceMatrix:
    """sum(coeff * M^a * H0^b) on the M-photon subspace"""
    h0 = h0_matrix(M, spec.coupling).entries
    powers = [np.eye(M + 1, dtype=complex)]
    for _ in range(spec.max_power):
        powers.append(powers[-1] @ h0)

    entries = np.zeros((M + 1, M + 1), dtype=complex)
    for term in spec.terms:
        entries += term.coeff * float(M) ** term.a * powers[term.b]
    # Products of Hermitian powers can pick up rounding asymmetry
    entries = (entries + entries.conj().T) / 2
    return SubspaceMatrix(M, entries)


def nonlinear_eigenvalues(spec: HamiltonianSpec, M: int) -> np.ndarray:
    """eps^M_x for x = 0..M"""
    _check_photons(M)
    E = (2 * np.arange(M + 1) - M) * spec.coupling.magnitude
    values = np.zeros(M + 1)
    for term in spec.terms:
        values += term.coeff * float(M) ** term.a * E ** term.b
    return values


def nonlinear_eigenvalue(spec: HamiltonianSpec, M: int, x_index: int) -> float:
    """eps^M_x = sum(coeff * M^a * E_x^b) with E_x = (2x - M)|gamma|"""
    _check_photons(M)
    _check_x_index(M, x_index)
    E = energy(M, x_index, spec.coupling)
    return float(sum(t.coeff * float(M) ** t.a * E ** t.b for t in spec.terms))


def _check_tau(tau: float):
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")


def design_lswap(coupling: Coupling, tau: float) -> HamiltonianSpec:
    """pi/(2|gamma|tau) (3|gamma| n + H0): swaps |M,0> and |0,M> at t = tau for every M"""
    _check_tau(tau)
    g = coupling.magnitude
    return HamiltonianSpec.from_power_series(
        coupling,
        [(1, 3 * math.pi / (2 * tau), math.pi / (2 * g * tau))],
        label="lswap",
        tau=tau,
    )


def design_evenswap(coupling: Coupling, tau: float) -> HamiltonianSpec:
    """pi/(|gamma|tau) (|gamma| n + |gamma|/4 n^2 + H0^2/(4|gamma|)): swaps only even M"""
    _check_tau(tau)
    g = coupling.magnitude
    return HamiltonianSpec.from_power_series(
        coupling,
        [
            (1, math.pi / tau, 0.0),
            (2, math.pi / (4 * tau), math.pi / (4 * g ** 2 * tau)),
        ],
        label="evenswap",
        tau=tau,
    )


def design_pswap(coupling: Coupling, tau: float, N: int, half: bool = False) -> HamiltonianSpec:
    """
    pi/(2|gamma|tau) (3|gamma| n^2 + n H0 - 3N|gamma| n - N H0)

    Leaves every N-photon state alone and swaps |N+-1,0>; the halved variant
    swaps |N+-2,0> instead.
    """
    _check_tau(tau)
    if not isinstance(N, (int, np.integer)) or N < 0:
        raise DomainError(f"N must be a non-negative integer, got {N!r}")
    g = coupling.magnitude
    scale = math.pi / (2 * g * tau)
    spec = HamiltonianSpec(
        coupling,
        (
            Monomial(2, 0, scale * 3 * g),
            Monomial(1, 1, scale),
            Monomial(1, 0, -scale * 3 * N * g),
            Monomial(0, 1, -scale * N),
        ),
        label="pswap-half" if half else "pswap",
        tau=tau,
        N=int(N),
        params={"half": bool(half)},
    )
    return spec.scaled(0.5) if half else spec


def design_polynomial(coupling: Coupling, mu: float, lam: float) -> HamiltonianSpec:
    """mu H0 + lam H0^2"""
    return HamiltonianSpec.from_power_series(
        coupling,
        [(1, 0.0, mu), (2, 0.0, lam)],
        label="poly",
        params={"mu": mu, "lam": lam},
    )


def spec_to_json(spec: HamiltonianSpec) -> str:
    """Serialize a spec for CLI round-tripping"""
    payload = {
        "gamma_re": spec.coupling.gamma.real,
        "gamma_im": spec.coupling.gamma.imag,
        "terms": [{"a": t.a, "b": t.b, "coeff": t.coeff} for t in spec.terms],
        "label": spec.label,
        "tau": spec.tau,
        "N": spec.N,
    }
    if spec.params:
        payload["params"] = spec.params
    return json.dumps(payload, indent=2)


def spec_from_json(text: str) -> HamiltonianSpec:
    """Inverse of spec_to_json"""
    try:
        payload = json.loads(text)
        coupling = Coupling(complex(payload["gamma_re"], payload.get("gamma_im", 0.0)))
        terms = tuple(Monomial(t["a"], t["b"], t["coeff"]) for t in payload["terms"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise DomainError(f"Invalid Hamiltonian document: {e}") from e
    return HamiltonianSpec(
        coupling,
        terms,
        label=payload.get("label"),
        tau=payload.get("tau"),
        N=payload.get("N"),
        params=payload.get("params", {}),
    )
