#!/usr/bin/env python3
"""
photonswap - exact simulator for two-mode photon systems
Main entry point
"""

from photonswap.cli import main


if __name__ == "__main__":
    main()
