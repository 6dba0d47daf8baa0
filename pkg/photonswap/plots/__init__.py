"""
Gnuplot script templates for photonswap tables
"""

from .distribution import get_distribution_script
from .entropy import get_entropy_script
from .trajectory import get_trajectory_script

__all__ = ["get_distribution_script", "get_entropy_script", "get_trajectory_script"]
