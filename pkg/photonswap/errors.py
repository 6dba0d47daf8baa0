"""
Exception hierarchy
"""


class SimulationError(Exception):
    """Base exception for simulation errors"""
    pass


class DomainError(SimulationError, ValueError):
    """Exception raised when an argument lies outside the operation's domain"""
    pass


class ConvergenceError(SimulationError):
    """Exception raised when an iterative solver runs out of sweeps"""
    pass


class VerificationError(SimulationError):
    """Exception raised when a cross-check fails"""
    pass
