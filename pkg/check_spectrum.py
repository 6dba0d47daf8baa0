#!/usr/bin/env python3
"""
Spectrum check utility for photonswap
Cross-checks the Krawtchouk solver and the designed Hamiltonians against a dense eigensolver
"""
import argparse
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from photonswap.config import Config
from photonswap.verify import Verifier


def main():
    """Run spectrum checks"""
    parser = argparse.ArgumentParser(description="Cross-check photonswap against the dense eigensolver")
    parser.add_argument("--M-max", type=int, default=40, help="Largest photon number (default: 40)")
    parser.add_argument("--config", type=str, default="config.json", help="Path to configuration file")
    args = parser.parse_args()

    print("\n" + "="*70)
    print("  photonswap - Spectrum Check")
    print("="*70)
    print("\nThis script compares the analytic spectra with brute-force diagonalization.")

    config = Config(args.config)
    checker = Verifier(config=config, tau=config.tau)
    all_ok = checker.run(args.M_max)

    sys.exit(0 if all_ok else 2)


if __name__ == "__main__":
    main()
