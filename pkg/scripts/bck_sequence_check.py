"""Compare affine closed-term counts from three independent sources.

The recurrence, the Riccati ODE and brute-force enumeration are listed
next to the commonly printed prefix, which diverges from size 8 on.

Usage: python scripts/bck_sequence_check.py [--brute 12]
"""

import argparse

from bcilab.counting import count_bck_terms, riccati_coeffs
from bcilab.verify import brute_force_term_counts

PRINTED = [0, 0, 1, 2, 3, 9, 30, 81, 225, 702, 2187, 6561, 19602, 59049, 177633, 532170, 1594323]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--brute", type=int, default=12, help="largest size to enumerate")
    args = parser.parse_args()

    ode = riccati_coeffs("B", len(PRINTED) - 1).coefficients
    print(f"{'n':>3} {'recurrence':>12} {'ode':>12} {'enumeration':>12} {'printed':>12}")
    for n, printed in enumerate(PRINTED):
        brute = str(brute_force_term_counts(n)[2]) if n <= args.brute else "-"
        mark = "" if count_bck_terms(n) == printed else "  <- differs"
        print(f"{n:>3} {count_bck_terms(n):>12} {ode[n]:>12} {brute:>12} {printed:>12}{mark}")


if __name__ == "__main__":
    main()
