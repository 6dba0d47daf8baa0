"""
Configuration management for photonswap
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, List

from dotenv import load_dotenv

from .krawtchouk import Coupling
from .utils import parse_complex


OUTPUT_FORMATS = ("csv", "json")


class Config:
    """Configuration manager"""

    def __init__(self, config_path: str = "config.json"):
        self.config_path = Path(config_path)
        self.config: Dict[str, Any] = {}
        self.load_config()

    def load_config(self):
        """Load configuration from file or create default"""
        if self.config_path.exists():
            with open(self.config_path, 'r', encoding='utf-8') as f:
                self.config = json.load(f)
        else:
            self.config = self.get_default_config()
            self.save_config()

        # Override with environment variables (and a .env file, if any)
        load_dotenv()
        self._load_from_env()

    def save_config(self):
        """Save configuration to file"""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, 'w', encoding='utf-8') as f:
            json.dump(self.config, f, indent=2)

    def get_default_config(self) -> Dict[str, Any]:
        """Get default configuration"""
        return {
            "version": 1,
            "physics": {
                "gamma_re": 1.0,
                "gamma_im": 0.0,
                "tau": 1.0
            },
            "limits": {
                "max_photons": 60
            },
            "trajectory": {
                "samples": 400,
                "t_max": 4.0
            },
            "coherent": {
                "epsilon": 1e-12
            },
            "tolerances": {
                "norm": 1e-12,
                "hermitian": 1e-12,
                "unitary": 1e-10,
                "eigenvalue": 1e-9,
                "eigenvector": 1e-8
            },
            "output": {
                "format": "csv",
                "precision": 17
            }
        }

    def _load_from_env(self):
        """Load configuration from environment variables"""
        if gamma := os.getenv("PHOTONSWAP_GAMMA"):
            value = parse_complex(gamma)
            self.config.setdefault("physics", {})["gamma_re"] = value.real
            self.config["physics"]["gamma_im"] = value.imag

        if tau := os.getenv("PHOTONSWAP_TAU"):
            self.config.setdefault("physics", {})["tau"] = float(tau)

        if max_photons := os.getenv("PHOTONSWAP_MAX_PHOTONS"):
            self.config.setdefault("limits", {})["max_photons"] = int(max_photons)

        if output_format := os.getenv("PHOTONSWAP_OUTPUT_FORMAT"):
            self.config.setdefault("output", {})["format"] = output_format

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot-separated key"""
        keys = key.split(".")
        value = self.config
        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
            else:
                return default
        return value if value is not None else default

    def set(self, key: str, value: Any):
        """Set configuration value by dot-separated key"""
        keys = key.split(".")
        config = self.config
        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value
        self.save_config()

    @property
    def gamma(self) -> complex:
        """Get the beam splitter coupling constant"""
        return complex(self.get("physics.gamma_re", 1.0), self.get("physics.gamma_im", 0.0))

    @property
    def coupling(self) -> Coupling:
        """Get the coupling as a validated Coupling"""
        return Coupling(self.gamma)

    @property
    def tau(self) -> float:
        """Get the design time"""
        return float(self.get("physics.tau", 1.0))

    @property
    def max_photons(self) -> int:
        """Get the soft photon-number limit"""
        return int(self.get("limits.max_photons", 60))

    @property
    def samples(self) -> int:
        return int(self.get("trajectory.samples", 400))

    @property
    def t_max(self) -> float:
        return float(self.get("trajectory.t_max", 4.0))

    @property
    def epsilon(self) -> float:
        return float(self.get("coherent.epsilon", 1e-12))

    @property
    def output_format(self) -> str:
        return self.get("output.format", "csv")

    @property
    def precision(self) -> int:
        return int(self.get("output.precision", 17))

    def tolerance(self, name: str) -> float:
        """Get a named numerical tolerance"""
        return float(self.get(f"tolerances.{name}", self.get_default_config()["tolerances"].get(name, 1e-10)))

    def validate(self) -> tuple[bool, List[str]]:
        """
        Validate configuration

        Returns:
            Tuple of (is_valid, list_of_errors)
        """
        errors = []

        required_keys = ["physics", "limits", "trajectory", "coherent", "output"]
        for key in required_keys:
            if key not in self.config:
                errors.append(f"Missing required key: {key}")

        if "physics" in self.config:
            if self.gamma == 0:
                errors.append("physics.gamma_re/gamma_im must not both be zero")
            if not self.tau > 0:
                errors.append("physics.tau must be positive")

        if "limits" in self.config:
            if not isinstance(self.config["limits"].get("max_photons"), int) or self.max_photons < 0:
                errors.append("limits.max_photons must be a non-negative integer")

        if "trajectory" in self.config:
            samples = self.config["trajectory"].get("samples")
            if not isinstance(samples, int) or samples < 1:
                errors.append("trajectory.samples must be a positive integer")

        if "coherent" in self.config:
            if not 0 < self.epsilon < 1:
                errors.append("coherent.epsilon must lie in (0, 1)")

        if "output" in self.config:
            if self.output_format not in OUTPUT_FORMATS:
                errors.append(f"output.format must be one of {', '.join(OUTPUT_FORMATS)}")

        return len(errors) == 0, errors
