"""Membership tests for the formula classes and exhaustive censuses."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from enum import Enum
from typing import Iterable, Mapping, Optional

import numpy as np

from .errors import ResourceLimitError
from .formula import (
    DEFAULT_ENUM_CAP,
    Decomposition,
    Formula,
    Imp,
    Var,
    decompose,
    enumerate_formulas,
    enumerate_shapes,
    formula_size,
    goal_of,
    max_variable,
    occurrences,
)

MAX_TRUTH_TABLE_VARS = 20
MAX_PROVER_CENSUS = (2, 12)

Valuation = dict[int, bool]


class ClassLabel(str, Enum):
    CL = "CL"
    INT = "INT"
    PEIRCE = "PEIRCE"
    BCK = "BCK"
    BCI = "BCI"
    G = "G"
    EVEN = "EVEN"
    SN = "SN"
    LN = "LN"
    OTHER_NONTAUT = "OTHER_NONTAUT"


CSV_COLUMNS = ("k", "n", "total", "G", "SN", "LN", "EVEN", "CL", "INT", "BCK", "BCI", "PEIRCE")
_PROVER_LABELS = (ClassLabel.INT, ClassLabel.BCK, ClassLabel.BCI, ClassLabel.PEIRCE)


# ---------------------------------------------------------------- semantics


def evaluate(f: Formula, valuation: Mapping[int, bool]) -> bool:
    if isinstance(f, Var):
        return valuation[f.index]
    return (not evaluate(f.left, valuation)) or evaluate(f.right, valuation)


@lru_cache(maxsize=None)
def _columns(k: int) -> tuple[int, ...]:
    # bit v of column i is set when bit i of v is set
    rows = 1 << k
    out = []
    for i in range(k):
        block = ((1 << (1 << i)) - 1) << (1 << i)
        col = 0
        for start in range(0, rows, 1 << (i + 1)):
            col |= block << start
        out.append(col)
    return tuple(out)


def truth_table(f: Formula, k: int) -> int:
    """Bitmask over all 2^k valuations; bit v is set when valuation v satisfies f.

    Variable a_i is true in valuation v when bit i-1 of v is set.
    """
    columns = _columns(k)
    full = (1 << (1 << k)) - 1

    def go(g: Formula) -> int:
        if isinstance(g, Var):
            return columns[g.index - 1]
        return (~go(g.left) | go(g.right)) & full

    return go(f)


def _check_vars(f: Formula, k: int) -> None:
    if k > MAX_TRUTH_TABLE_VARS:
        raise ResourceLimitError(f"truth table over {k} variables exceeds {MAX_TRUTH_TABLE_VARS}")
    if max_variable(f) > k:
        raise ValueError(f"formula uses a variable beyond a{k}")


def is_classical_tautology(f: Formula, k: int) -> bool:
    _check_vars(f, k)
    return truth_table(f, k) == (1 << (1 << k)) - 1


# ---------------------------------------------------------------- syntactic classes


def _simple_taut(d: Decomposition) -> bool:
    return any(isinstance(p, Var) and p.index == d.goal for p in d.premises)


def _simple_nontaut(d: Decomposition) -> bool:
    return bool(d.premises) and all(goal_of(p) != d.goal for p in d.premises)


def _ln_witness(top: Decomposition) -> Optional[tuple[int, int]]:
    g = top.goal
    for i, c in enumerate(top.premises):
        if not isinstance(c, Imp) or goal_of(c) != g:
            continue
        inner = decompose(c.left)
        d = inner.goal
        if d == g:
            continue
        bad = (g, d)
        if any(goal_of(b) in bad for j, b in enumerate(top.premises) if j != i):
            continue
        if any(goal_of(x) in bad for x in inner.premises):
            continue
        return g, d
    return None


def is_simple_tautology(f: Formula) -> bool:
    return _simple_taut(decompose(f))


def is_simple_nontautology(f: Formula) -> bool:
    return _simple_nontaut(decompose(f))


def is_less_simple_nontautology(f: Formula, k: Optional[int] = None) -> Optional[Valuation]:
    """Falsifying valuation if ``f`` has the less-simple-non-tautology shape.

    The shape is B_1..C..B_p -> g with C = C_1..C_q -> g (q >= 1) and
    C_1 = D_1..D_r -> d, d != g, where no r(B_j) or r(D_j) lies in {g, d}.
    The first premise position admitting it wins.  g and d are set false,
    every other variable true.
    """
    found = _ln_witness(decompose(f))
    if found is None:
        return None
    k = max_variable(f) if k is None else k
    valuation = {v: True for v in range(1, k + 1)}
    for v in found:
        valuation[v] = False
    return valuation


def simple_nontautology_valuation(f: Formula, k: Optional[int] = None) -> Valuation:
    """Goal false, everything else true: falsifies every simple non-tautology."""
    k = max_variable(f) if k is None else k
    valuation = {v: True for v in range(1, k + 1)}
    valuation[goal_of(f)] = False
    return valuation


def is_even(f: Formula, k: Optional[int] = None) -> bool:
    """Every variable occurs an even number of times (zero included)."""
    return all(c % 2 == 0 for c in occurrences(f).values())


# ---------------------------------------------------------------- labels and census


def labels(f: Formula, k: int, provers: Optional[Mapping[str, object]] = None) -> frozenset[ClassLabel]:
    """All class labels of ``f``; prover classes only when ``provers`` is given.

    ``provers`` maps ``"bci"``, ``"bck"``, ``"int"`` to objects with an
    ``is_provable(formula)`` method.
    """
    out = set()
    d = decompose(f)
    cl = is_classical_tautology(f, k)
    if cl:
        out.add(ClassLabel.CL)
    if _simple_taut(d):
        out.add(ClassLabel.G)
    if is_even(f, k):
        out.add(ClassLabel.EVEN)
    if _simple_nontaut(d):
        out.add(ClassLabel.SN)
    if _ln_witness(d) is not None:
        out.add(ClassLabel.LN)
    if not cl and not out & {ClassLabel.SN, ClassLabel.LN}:
        out.add(ClassLabel.OTHER_NONTAUT)
    if provers is not None:
        if provers["int"].is_provable(f):
            out.add(ClassLabel.INT)
        elif cl:
            out.add(ClassLabel.PEIRCE)
        if provers["bck"].is_provable(f):
            out.add(ClassLabel.BCK)
        if provers["bci"].is_provable(f):
            out.add(ClassLabel.BCI)
    return frozenset(out)


@dataclass
class CensusRow:
    k: int
    n: int
    total: int = 0
    counts: dict[ClassLabel, int] = field(default_factory=dict)
    with_provers: bool = False

    def __getitem__(self, label: ClassLabel | str) -> Optional[int]:
        label = ClassLabel(label)
        if label in _PROVER_LABELS and not self.with_provers:
            return None
        return self.counts.get(label, 0)

    def as_dict(self) -> dict[str, Optional[int]]:
        out: dict[str, Optional[int]] = {"k": self.k, "n": self.n, "total": self.total}
        for col in CSV_COLUMNS[3:]:
            out[col] = self[col]
        return out

    def csv_line(self) -> str:
        return ",".join("" if v is None else str(v) for v in self.as_dict().values())


def census(
    k: int,
    n: int,
    with_provers: bool = False,
    provers: Optional[Mapping[str, object]] = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> CensusRow:
    """Classify every formula of size ``n`` over ``k`` variables."""
    if with_provers:
        if k > MAX_PROVER_CENSUS[0] or n > MAX_PROVER_CENSUS[1]:
            raise ResourceLimitError(
                f"census with provers is limited to k <= {MAX_PROVER_CENSUS[0]}, n <= {MAX_PROVER_CENSUS[1]}"
            )
        if provers is None:
            from .prover import default_prover

            provers = {name: default_prover(name) for name in ("bci", "bck", "int")}
    row = CensusRow(k, n, with_provers=with_provers)
    for f in enumerate_formulas(k, n, cap):
        row.total += 1
        for label in labels(f, k, provers if with_provers else None):
            row.counts[label] = row.counts.get(label, 0) + 1
    return row


def census_members(k: int, n: int, label: ClassLabel, cap: int = DEFAULT_ENUM_CAP) -> Iterable[Formula]:
    """Formulas of size ``n`` carrying a non-prover ``label``."""
    for f in enumerate_formulas(k, n, cap):
        if label in labels(f, k):
            yield f


# ---------------------------------------------------------------- labelled census


def _labelings(k: int, n: int) -> np.ndarray:
    # every leaf labelling, one row each, columns = leaves left to right
    grids = np.indices((k,) * n, dtype=np.int8).reshape(n, -1).T
    return grids + 1


def _premise_leaf_positions(shape: Formula) -> tuple[tuple[int, ...], int]:
    """Leaf indices of the premises that are single leaves, and the goal leaf index."""
    positions = []
    offset = 0
    g = shape
    while isinstance(g, Imp):
        size = formula_size(g.left)
        if size == 1:
            positions.append(offset)
        offset += size
        g = g.right
    return tuple(positions), offset


def labelled_census(k: int, n: int, cap: int = DEFAULT_ENUM_CAP) -> dict[str, int]:
    """Exhaustive G and EVEN counts over every (shape, labelling) pair.

    Shapes are enumerated one by one; for each shape the simple-tautology
    test runs vectorized over all k^n labellings.  Shapes with the same
    premise-leaf positions give the same count, so that count is reused.
    """
    if n > cap:
        raise ResourceLimitError(f"size {n} exceeds enumeration cap {cap}")
    grid = _labelings(k, n)
    counts = np.stack([(grid == v).sum(axis=1) for v in range(1, k + 1)], axis=1)
    even_per_shape = int(np.all(counts % 2 == 0, axis=1).sum())
    memo: dict[tuple[int, ...], int] = {}
    total = simple = even = 0
    for shape in enumerate_shapes(n, cap):
        positions, goal = _premise_leaf_positions(shape)
        if positions not in memo:
            if positions:
                hit = (grid[:, list(positions)] == grid[:, [goal]]).any(axis=1)
                memo[positions] = int(hit.sum())
            else:
                memo[positions] = 0
        simple += memo[positions]
        even += even_per_shape
        total += grid.shape[0]
    return {"total": total, "G": simple, "EVEN": even}
