"""Share of linear among affine closed terms at sizes 3k+2.

Usage: python scripts/term_density_report.py [--max 60]
"""

import argparse

from bcilab.counting import count_bci_terms, count_bck_terms
from bcilab.density import term_density_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max", type=int, default=60)
    args = parser.parse_args()

    print(f"{'k':>3} {'size':>5} {'a':>24} {'b':>24} {'a/b':>12}")
    for k, ratio in term_density_table(args.max):
        n = 3 * k + 2
        a, b = count_bci_terms(n), count_bck_terms(n)
        print(f"{k:>3} {n:>5} {a:>24.6g} {b:>24.6g} {float(ratio):>12.4e}")


if __name__ == "__main__":
    main()
