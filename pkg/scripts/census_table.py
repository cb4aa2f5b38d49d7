"""Print census counts and exact class shares for small k and n.

Usage: python scripts/census_table.py [--vars 2] [--max 8] [--provers]
"""

import argparse
from fractions import Fraction

from bcilab.classify import CSV_COLUMNS, census


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vars", type=int, default=2)
    parser.add_argument("--max", type=int, default=8)
    parser.add_argument("--provers", action="store_true")
    args = parser.parse_args()

    columns = [c for c in CSV_COLUMNS[3:] if args.provers or c not in ("INT", "BCK", "BCI", "PEIRCE")]
    print(f"{'n':>3} {'total':>10} " + " ".join(f"{c:>9}" for c in columns))
    for n in range(1, args.max + 1):
        row = census(args.vars, n, with_provers=args.provers)
        shares = [float(Fraction(row[c], row.total)) for c in columns]
        print(f"{n:>3} {row.total:>10} " + " ".join(f"{s:>9.4f}" for s in shares))


if __name__ == "__main__":
    main()
