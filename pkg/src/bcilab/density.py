"""Exact finite-size densities and their comparison with limiting values.

Ratios are :class:`fractions.Fraction` values, always in lowest terms.
Limits are never computed; a convergence report lists exact ratios at
chosen sizes next to the closed-form target and the gap between them.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

from .classify import CensusRow, census
from .counting import (
    count_all_formulas,
    count_bci_terms,
    count_bck_terms,
    count_even_formulas,
    count_simple_tautologies,
)

Ratio = Fraction

# classes with a counting formula; everything else comes from a census
RECURRENCE_CLASSES = ("G", "EVEN")
CENSUS_CLASSES = ("SN", "LN", "CL", "INT", "BCK", "BCI", "PEIRCE")
CLOSED_FORM_CLASSES = ("G", "SN", "LN", "EVEN_SUP", "PEIRCE")

DENSITY_CSV_HEADER = (
    "class",
    "k",
    "n",
    "numerator",
    "denominator",
    "target_num",
    "target_den",
    "gap_decimal",
)


@lru_cache(maxsize=None)
def cached_census(k: int, n: int, with_provers: bool = False) -> CensusRow:
    return census(k, n, with_provers)


def class_count(cls: str, k: int, n: int) -> int:
    cls = cls.upper()
    if cls == "G":
        return count_simple_tautologies(k, n)
    if cls == "EVEN":
        return count_even_formulas(k, n)
    if cls == "F":
        return count_all_formulas(k, n)
    if cls not in CENSUS_CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    provers = cls in ("INT", "BCK", "BCI", "PEIRCE")
    return cached_census(k, n, provers)[cls]


def empirical_ratio(cls: str, k: int, n: int) -> Ratio:
    """Exact share of size-``n`` formulas in ``cls``."""
    return Fraction(class_count(cls, k, n), count_all_formulas(k, n))


def closed_form_density(cls: str, k: int) -> Ratio:
    if k < 1:
        raise ValueError("k must be positive")
    cls = cls.upper()
    if cls == "G":
        return Fraction(4 * k + 1, (2 * k + 1) ** 2)
    if cls == "SN":
        return Fraction(k * (k - 1), (k + 1) ** 2)
    if cls == "LN":
        return Fraction(2 * k * (k - 1) ** 2, (k + 2) ** 4)
    if cls in ("EVEN_SUP", "EVEN"):
        return Fraction(1, 2 ** (k - 1))
    if cls == "PEIRCE":
        return Fraction(1, 2 * k * k)
    raise ValueError(f"no closed form for class {cls!r}")


def decimal_string(x: Fraction, digits: int = 12) -> str:
    """``x`` rounded half-up to ``digits`` decimals, using integer arithmetic only."""
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**digits
    q = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    whole, frac = divmod(q, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    ratio: Ratio
    target: Ratio

    @property
    def gap(self) -> Ratio:
        return abs(self.ratio - self.target)


@dataclass(frozen=True)
class ConvergenceReport:
    """Ratios at increasing sizes against a closed-form target.

    For EVEN the target is the limsup on even sizes and 0 on odd sizes;
    the trend flag only looks at the even sizes.
    """

    cls: str
    k: int
    rows: tuple[ConvergenceRow, ...]
    target: Ratio

    @property
    def sizes(self) -> list[int]:
        return [r.n for r in self.rows]

    @property
    def ratios(self) -> list[Ratio]:
        return [r.ratio for r in self.rows]

    @property
    def gaps(self) -> list[Ratio]:
        return [r.gap for r in self.rows]

    @property
    def trend_rows(self) -> list[ConvergenceRow]:
        if self.cls == "EVEN":
            return [r for r in self.rows if r.n % 2 == 0]
        return list(self.rows)

    @property
    def final_gap(self) -> Ratio:
        rows = self.trend_rows
        return rows[-1].gap if rows else Fraction(0)

    @property
    def gaps_non_increasing(self) -> bool:
        g = [r.gap for r in self.trend_rows]
        return all(b <= a for a, b in zip(g, g[1:]))

    def csv_rows(self) -> list[list[object]]:
        return [
            [self.cls, self.k, r.n, r.ratio.numerator, r.ratio.denominator,
             r.target.numerator, r.target.denominator, decimal_string(r.gap)]
            for r in self.rows
        ]


def convergence_table(cls: str, k: int, sizes: Iterable[int]) -> ConvergenceReport:
    cls = cls.upper()
    sizes = sorted(set(sizes))
    if not sizes:
        raise ValueError("sizes must be non-empty")
    if cls == "EVEN_SUP":
        cls = "EVEN"
    target = closed_form_density("EVEN_SUP" if cls == "EVEN" else cls, k)
    rows = []
    for n in sizes:
        t = Fraction(0) if cls == "EVEN" and n % 2 else target
        rows.append(ConvergenceRow(n, empirical_ratio(cls, k, n), t))
    return ConvergenceReport(cls, k, tuple(rows), target)


def doubling_sizes(start: int, stop: int) -> list[int]:
    out = []
    n = start
    while n <= stop:
        out.append(n)
        n *= 2
    return out


def term_density_table(k_max: int) -> list[tuple[int, Ratio]]:
    """Share a_{3k+2} / b_{3k+2} of linear among affine closed terms, k = 0..k_max."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    return [(k, Fraction(count_bci_terms(3 * k + 2), count_bck_terms(3 * k + 2))) for k in range(k_max + 1)]


def sandwich_bounds(k: int, n: int) -> tuple[Ratio, Ratio]:
    """(G share, 1 - SN share - LN share) at size ``n``; the CL share lies between."""
    row = cached_census(k, n, False)
    total = row.total
    lower = Fraction(row["G"], total)
    upper = 1 - Fraction(row["SN"], total) - Fraction(row["LN"], total)
    return lower, upper


def sandwich_chain(k: int, n: int) -> dict[str, Ratio]:
    """G, BCK, INT, CL shares and the SN/LN upper bound at size ``n`` (uses provers)."""
    row = cached_census(k, n, True)
    total = row.total
    lower, upper = sandwich_bounds(k, n)
    return {
        "G": lower,
        "BCK": Fraction(row["BCK"], total),
        "INT": Fraction(row["INT"], total),
        "CL": Fraction(row["CL"], total),
        "UPPER": upper,
    }


def write_density_csv(reports: Sequence[ConvergenceReport], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(DENSITY_CSV_HEADER)
    for rep in sorted(reports, key=lambda r: r.k):
        w.writerows(rep.csv_rows())
