"""
Designed Hamiltonians resolved by name
"""

from .registry import DESIGN_NAMES, DesignRegistry

__all__ = ["DESIGN_NAMES", "DesignRegistry"]
