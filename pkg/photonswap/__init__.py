"""
photonswap - Exact simulator for two-mode bosonic systems driven by
nonlinear functions of a beam splitter Hamiltonian
"""

__version__ = "1.0.0"
__author__ = "photonswap Contributors"
