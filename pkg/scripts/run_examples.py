#!/usr/bin/env python3
"""Run the four bundled example scenarios end to end and print their reports.

Usage:
    python scripts/run_examples.py [--q2 Q] [--q4 Q] [--samples N]

Scenario 1: orbit decomposition and component spaces at extension degree 3.
Scenario 2: dimension of the binomial member space over F_{q^6} and the
            trinomial lift, with the exact-dimension cross check.
Scenario 3: a minimal value set polynomial outside the classical families.
Scenario 4: odd-characteristic squaring lift into a non-additive value
            polynomial.
"""

import argparse
import sys

from mvspoly.cli import main as cli_main


def run(argv):
    print(f"$ mvspoly {' '.join(argv)}")
    code = cli_main(argv)
    print(f"(exit {code})\n")
    return code


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q2", type=int, default=2,
                    help="prime q for scenarios 1..3")
    ap.add_argument("--q4", type=int, default=3,
                    help="odd prime q for scenario 4")
    ap.add_argument("--samples", type=int, default=128)
    args = ap.parse_args()
    codes = [
        run(["examples", "--section", "1", "--q", str(args.q2)]),
        run(["examples", "--section", "2", "--q", str(args.q2)]),
        run(["examples", "--section", "3", "--q", str(args.q2)]),
        run(["examples", "--section", "4", "--q", str(args.q4),
             "--samples", str(args.samples)]),
    ]
    return max(codes)


if __name__ == "__main__":
    sys.exit(main())
