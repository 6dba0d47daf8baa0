"""
Design registry for resolving Hamiltonian names
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional

from ..errors import DomainError
from ..hamiltonian import (
    HamiltonianSpec,
    design_evenswap,
    design_lswap,
    design_polynomial,
    design_pswap,
    spec_from_json,
)
from ..krawtchouk import Coupling


logger = logging.getLogger(__name__)

DESIGN_NAMES = ["lswap", "evenswap", "pswap:<N>", "pswap-half:<N>", "poly:<mu>,<lam>", "@<file.json>"]


class DesignRegistry:
    """Registry for building designed Hamiltonians from names like 'pswap:2'"""

    def __init__(self, config=None, coupling: Optional[Coupling] = None, tau: Optional[float] = None):
        self.config = config
        if coupling is None:
            coupling = config.coupling if config is not None else Coupling(1.0)
        if tau is None:
            tau = config.tau if config is not None else 1.0
        self.coupling = coupling
        self.tau = float(tau)
        self._cache: Dict[str, HamiltonianSpec] = {}

    @staticmethod
    def _parse_int(value: str, name: str) -> int:
        try:
            return int(value)
        except ValueError as e:
            raise DomainError(f"Design '{name}' needs an integer photon number, got '{value}'") from e

    def get(self, name: str) -> HamiltonianSpec:
        """
        Get a designed Hamiltonian

        Args:
            name: One of lswap, evenswap, pswap:N, pswap-half:N, poly:mu,lam,
                or @path to a Hamiltonian saved with --save-design

        Returns:
            HamiltonianSpec built for the registry coupling and tau

        Raises:
            DomainError: If the name is unknown or its parameters are invalid
        """
        if name.startswith("@"):
            return self._load(name[1:])

        key = name.strip().lower()
        if key in self._cache:
            return self._cache[key]

        kind, _, argument = key.partition(":")
        if kind == "lswap" and not argument:
            spec = design_lswap(self.coupling, self.tau)
        elif kind == "evenswap" and not argument:
            spec = design_evenswap(self.coupling, self.tau)
        elif kind in ("pswap", "pswap-half"):
            if not argument:
                raise DomainError(f"Design '{name}' needs a photon number, e.g. {kind}:2")
            spec = design_pswap(self.coupling, self.tau, self._parse_int(argument, name), half=kind == "pswap-half")
        elif kind == "poly":
            try:
                mu, lam = (float(v) for v in argument.split(","))
            except ValueError as e:
                raise DomainError(f"Design '{name}' needs two coefficients, e.g. poly:1,0.5") from e
            spec = design_polynomial(self.coupling, mu, lam)
        else:
            raise DomainError(f"Unknown design: {name} (available: {', '.join(self.list_designs())})")

        logger.debug(f"Built design {key} with gamma={self.coupling.gamma}, tau={self.tau}")
        self._cache[key] = spec
        return spec

    def list_designs(self) -> List[str]:
        """Names the registry understands"""
        return list(DESIGN_NAMES)

    def _load(self, path: str) -> HamiltonianSpec:
        """Read a serialized Hamiltonian; its own coupling and tau take precedence"""
        key = f"@{path}"
        if key in self._cache:
            return self._cache[key]
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise DomainError(f"Cannot read design file {path}: {e}") from e
        spec = spec_from_json(text)
        logger.debug(f"Loaded design {spec.label or path} from {path}")
        self._cache[key] = spec
        return spec
