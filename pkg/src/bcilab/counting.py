"""Exact counting sequences.

Every value is a Python ``int``.  Each sequence is backed by a
:class:`CountTable` that memoizes a growing prefix.  The Riccati
coefficient extractor at the bottom is a separate derivation of the
linear and affine term counts that shares no code with the recurrences.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, TextIO


class Sequence(str, Enum):
    CATALAN = "catalan"
    F = "formulas"
    G = "simple-tautologies"
    EVEN = "even-formulas"
    WALKS = "hypercube-walks"
    A_STAR = "bci-terms-star"
    A = "bci-terms"
    B = "bck-terms"
    L = "closed-terms"
    OGR_RHS = "ogr-rhs"

    @property
    def needs_k(self) -> bool:
        return self in (Sequence.F, Sequence.G, Sequence.EVEN, Sequence.WALKS)


OEIS_IDS = {Sequence.A_STAR: "A062980", Sequence.A: "A062980", Sequence.B: "A073950"}


@dataclass
class CountTable:
    """Memoized prefix ``value(0), value(1), ...`` of one sequence.

    ``step(table, n)`` computes entry ``n`` and may read entries ``< n``.
    Entries never change once stored.
    """

    sequence: Sequence
    k: int | None
    step: Callable[["CountTable", int], int] = field(repr=False)
    memo: list[int] = field(default_factory=list, repr=False)

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        while len(self.memo) <= n:
            self.memo.append(self.step(self, len(self.memo)))
        return self.memo[n]

    def prefix(self, n_max: int) -> list[int]:
        self[n_max]
        return self.memo[: n_max + 1]

    def preload(self, values: Iterable[int]) -> None:
        """Seed the memo with a previously computed prefix."""
        values = list(values)
        if len(values) <= len(self.memo):
            if values != self.memo[: len(values)]:
                raise ValueError(f"cached prefix for {self.sequence.value} disagrees with memo")
            return
        if self.memo != values[: len(self.memo)]:
            raise ValueError(f"cached prefix for {self.sequence.value} disagrees with memo")
        self.memo = values


# ---------------------------------------------------------------- formulas


def catalan(n: int) -> int:
    """Number of binary trees with ``n`` leaves: binom(2n-2, n-1) / n."""
    if n < 1:
        raise ValueError("catalan(n) needs n >= 1")
    return comb(2 * n - 2, n - 1) // n


def count_all_formulas(k: int, n: int) -> int:
    return k**n * catalan(n)


def _g_step(t: CountTable, n: int) -> int:
    k = t.k
    if n <= 1:
        return 0
    if n == 2:
        return k
    f = _formula_table(k)
    return f[n - 1] - t[n - 1] + sum(f[n - i] * t[i] for i in range(2, n))


def count_simple_tautologies(k: int, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return table(Sequence.G, k)[n]


def hypercube_walks(k: int, n: int) -> int:
    """Closed walks of length ``n`` from a fixed vertex of the ``k``-cube."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    total = sum(comb(k, j) * (k - 2 * j) ** n for j in range(k + 1))
    q, r = divmod(total, 2**k)
    if r:
        raise ArithmeticError(f"walk sum for k={k}, n={n} not divisible by 2^k")
    return q


def count_even_formulas(k: int, n: int) -> int:
    return catalan(n) * hypercube_walks(k, n)


# ---------------------------------------------------------------- lambda terms


def _a_star_step(t: CountTable, n: int) -> int:
    if n == 0:
        return 1
    if n == 1:
        return 5
    return 6 * n * t[n - 1] + sum(t[i] * t[n - i - 1] for i in range(1, n - 1))


def count_bci_terms_star(n: int) -> int:
    """Linear closed terms with ``n`` application nodes."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return table(Sequence.A_STAR)[n]


def count_bci_terms(size: int) -> int:
    """Linear closed terms of the given size; zero unless size = 2 mod 3."""
    if size < 0:
        raise ValueError("size must be non-negative")
    if size % 3 != 2:
        return 0
    return count_bci_terms_star((size - 2) // 3)


def _b_step(t: CountTable, n: int) -> int:
    if n < 5:
        return (0, 0, 1, 2, 3)[n]
    return (
        t[n - 1]
        + 2 * sum(i * t[i] for i in range(0, n - 2))
        + sum(t[i] * t[n - i - 1] for i in range(0, n))
        + 1
    )


def count_bck_terms(n: int) -> int:
    """Affine closed terms of size ``n`` via the three-case recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return table(Sequence.B)[n]


def ogr_rhs(k: int) -> int:
    """sum_i binom(3k, 3i) * a_{3i+2}, the lambda-insertion count for size 3k+2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(comb(3 * k, 3 * i) * count_bci_terms_star(i) for i in range(k + 1))


def count_closed_terms(n: int, cap: int | None = None) -> int:
    """Number of closed terms of size ``n``, by exhaustive enumeration."""
    from .lam import DEFAULT_TERM_CAP

    t = table(Sequence.L)
    if n < len(t.memo):
        return t.memo[n]
    limit = DEFAULT_TERM_CAP if cap is None else cap
    from .errors import ResourceLimitError

    if n > limit:
        raise ResourceLimitError(f"size {n} exceeds term enumeration cap {limit}")
    return t[n]


def _l_step(t: CountTable, n: int) -> int:
    from .lam import enumerate_closed_terms

    if n == 0:
        return 0
    return sum(1 for _ in enumerate_closed_terms(n, cap=n))


# ---------------------------------------------------------------- table registry

_TABLES: dict[tuple[Sequence, int | None], CountTable] = {}


def _formula_table(k: int) -> CountTable:
    return table(Sequence.F, k)


_STEPS: dict[Sequence, Callable[[CountTable, int], int]] = {
    Sequence.CATALAN: lambda t, n: catalan(n) if n >= 1 else 0,
    Sequence.F: lambda t, n: count_all_formulas(t.k, n) if n >= 1 else 0,
    Sequence.G: _g_step,
    Sequence.EVEN: lambda t, n: count_even_formulas(t.k, n) if n >= 1 else 0,
    Sequence.WALKS: lambda t, n: hypercube_walks(t.k, n),
    Sequence.A_STAR: _a_star_step,
    Sequence.A: lambda t, n: count_bci_terms(n),
    Sequence.B: _b_step,
    Sequence.L: _l_step,
    Sequence.OGR_RHS: lambda t, n: ogr_rhs(n),
}


def table(sequence: Sequence | str, k: int | None = None) -> CountTable:
    """Shared memo table for ``sequence`` (and ``k``, where it applies)."""
    sequence = Sequence(sequence)
    if sequence.needs_k:
        if k is None or k < 1:
            raise ValueError(f"sequence {sequence.value} needs k >= 1")
    else:
        k = None
    key = (sequence, k)
    if key not in _TABLES:
        _TABLES[key] = CountTable(sequence, k, _STEPS[sequence])
    return _TABLES[key]


# ---------------------------------------------------------------- CSV dump


def dump_csv(rows: Iterable[tuple[Sequence, int | None, int, int]], out: TextIO) -> None:
    """Write ``sequence,k,n,value`` rows, preceded by OEIS comments."""
    rows = list(rows)
    seen = []
    for seq, _, _, _ in rows:
        if seq not in seen:
            seen.append(seq)
    for seq in seen:
        if seq in OEIS_IDS:
            out.write(f"# {seq.value}: OEIS {OEIS_IDS[seq]}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["sequence", "k", "n", "value"])
    for seq, k, n, value in rows:
        w.writerow([seq.value, "" if k is None else k, n, value])


def load_csv(src: TextIO) -> dict[tuple[Sequence, int | None], list[int]]:
    """Read a dump back into contiguous prefixes keyed by (sequence, k)."""
    lines = [line for line in src if not line.startswith("#")]
    out: dict[tuple[Sequence, int | None], list[int]] = {}
    for row in csv.DictReader(io.StringIO("".join(lines))):
        key = (Sequence(row["sequence"]), int(row["k"]) if row["k"] else None)
        values = out.setdefault(key, [])
        if int(row["n"]) != len(values):
            raise ValueError(f"non-contiguous prefix for {key[0].value} at n={row['n']}")
        values.append(int(row["value"]))
    return out


# ---------------------------------------------------------------- Riccati ODEs

# An ODE is a list of terms (poly, p, q) meaning poly(x) * Y^p * (Y')^q, with
# poly a {power: coefficient} dict.  The whole sum must vanish.
RICCATI = {
    "A": [
        ({2: 6}, 0, 1),
        ({1: 1}, 2, 0),
        ({1: 4, 0: -1}, 1, 0),
        ({0: 1}, 0, 0),
    ],
    "B": [
        ({4: 2}, 0, 1),
        ({1: 1, 2: -1}, 2, 0),
        ({0: -1, 1: 2, 2: -1}, 1, 0),
        ({2: 1}, 0, 0),
    ],
}
RICCATI_INITIAL = {"A": 1, "B": 0}


@dataclass(frozen=True)
class SeriesCoeffs:
    ode: str
    coefficients: tuple[int, ...]


def _product_coeff(factors: list[list[int]], m: int) -> int:
    """Coefficient of x^m in the product of truncated series."""
    if not factors:
        return 1 if m == 0 else 0
    if len(factors) == 1:
        return factors[0][m] if m < len(factors[0]) else 0
    if len(factors) == 2:
        a, b = factors
        return sum(a[i] * b[m - i] for i in range(max(0, m - len(b) + 1), min(m, len(a) - 1) + 1))
    acc = [1]
    for f in factors:
        acc = [
            sum(acc[i] * f[j - i] for i in range(len(acc)) if 0 <= j - i < len(f))
            for j in range(m + 1)
        ]
    return acc[m]


def _residue_coeff(ode: list, series: list[int], m: int) -> int:
    deriv = [(i + 1) * series[i + 1] for i in range(len(series) - 1)]
    total = 0
    for poly, p, q in ode:
        for power, c in poly.items():
            if power <= m:
                total += c * _product_coeff([series] * p + [deriv] * q, m - power)
    return total


def riccati_coeffs(ode: str, n_max: int) -> SeriesCoeffs:
    """Series coefficients c_0..c_N forced by the ODE, by equating coefficients.

    At degree n the residue is affine in the unknown c_n; probing it at
    c_n = 0, 1, 2 gives the slope and confirms linearity.
    """
    terms = RICCATI[ode]
    series: list[int] = []
    for n in range(n_max + 1):
        probes = []
        for trial in (0, 1, 2):
            probes.append(_residue_coeff(terms, series + [trial, 0], n))
        r0, r1, r2 = probes
        slope = r1 - r0
        if r2 - r1 != slope:
            raise ArithmeticError(f"ODE {ode} is not linear in c_{n}")
        if slope == 0:
            raise ArithmeticError(f"ODE {ode} leaves c_{n} undetermined")
        c = Fraction(-r0, slope)
        if c.denominator != 1:
            raise ArithmeticError(f"ODE {ode} forces non-integral c_{n} = {c}")
        series.append(int(c))
    if n_max >= 0 and series[0] != RICCATI_INITIAL[ode]:
        raise ArithmeticError(f"ODE {ode} contradicts its initial value")
    return SeriesCoeffs(ode, tuple(series))


def riccati_residue(ode: str, coefficients: Iterable[int]) -> list[int]:
    """Residue coefficients at degrees 0..N of the truncated series."""
    series = list(coefficients)
    return [_residue_coeff(RICCATI[ode], series + [0], m) for m in range(len(series))]
