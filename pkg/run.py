#!/usr/bin/env python
"""
qgames - Quick Start Script
Run this file with a subcommand, or with no arguments for a tour of the
classical and quantum tables.
"""
import sys

from cli import main

if __name__ == '__main__':
    if len(sys.argv) > 1:
        sys.exit(main(sys.argv[1:]))

    print("=" * 50)
    print("qgames - Quantum Game Analysis")
    print("=" * 50)
    print("\nClassical Prisoner's Dilemma:")
    main(["table", "--game", "pd"])
    print("\nClassical Hawk-Dove (v=50, i=100, d=10):")
    main(["table", "--game", "hd"])
    print("\nQuantum Hawk-Dove, Eisert scheme:")
    main(["table", "--game", "hd", "--scheme", "eisert", "--strategies", "H,D,Q"])
    print("\nRun 'python run.py verify' for the full claim ledger,")
    print("or 'python run.py --help' for all subcommands.")
    print("=" * 50)
