"""Self-check suites run by ``bcilab verify``.

Each suite returns a :class:`SuiteOutcome`; one violated property is
enough to fail it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .classify import ClassLabel, census, labels, labelled_census
from .counting import (
    count_all_formulas,
    count_bci_terms,
    count_bck_terms,
    count_even_formulas,
    count_simple_tautologies,
    ogr_rhs,
    riccati_coeffs,
    riccati_residue,
    table,
)
from .formula import enumerate_formulas
from .lam import enumerate_closed_terms, is_bci_term, is_bck_term
from .prover import Prover, check_witness


@dataclass
class SuiteOutcome:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checks} checks"
        if self.failures:
            line += f", {len(self.failures)} failed; first: {self.failures[0]}"
        return line


def brute_force_term_counts(n: int) -> tuple[int, int, int]:
    """(all closed, linear, affine) closed-term counts at size ``n`` by enumeration."""
    total = linear = affine = 0
    for t in enumerate_closed_terms(n, cap=n):
        total += 1
        if is_bck_term(t):
            affine += 1
            if is_bci_term(t):
                linear += 1
    return total, linear, affine


def suite_recurrences(n_max: Optional[int] = None) -> SuiteOutcome:
    out = SuiteOutcome("recurrences")
    term_max = 11 if n_max is None else n_max
    for n in range(0, term_max + 1):
        _, linear, affine = brute_force_term_counts(n)
        out.check(linear == count_bci_terms(n), f"a_{n}: enumeration {linear} vs recurrence {count_bci_terms(n)}")
        out.check(affine == count_bck_terms(n), f"b_{n}: enumeration {affine} vs recurrence {count_bck_terms(n)}")
    formula_max = min(8, term_max)
    for k in (1, 2):
        for n in range(1, formula_max + 1):
            row = census(k, n)
            out.check(row.total == count_all_formulas(k, n), f"F^{k}_{n}")
            out.check(row["G"] == count_simple_tautologies(k, n), f"G^{k}_{n}")
            out.check(row["EVEN"] == count_even_formulas(k, n), f"EVEN^{k}_{n}")
    for k in (1, 2, 3):
        for n in range(1, min(12, term_max + 1) + 1):
            row = labelled_census(k, n)
            out.check(row["total"] == count_all_formulas(k, n), f"labelled F^{k}_{n}")
            out.check(row["G"] == count_simple_tautologies(k, n), f"labelled G^{k}_{n}")
            out.check(row["EVEN"] == count_even_formulas(k, n), f"labelled EVEN^{k}_{n}")
    return out


def suite_riccati(n_max: Optional[int] = None) -> SuiteOutcome:
    out = SuiteOutcome("riccati")
    n_max = 200 if n_max is None else n_max
    a = riccati_coeffs("A", n_max)
    b = riccati_coeffs("B", n_max)
    out.check(list(a.coefficients) == table("bci-terms-star").prefix(n_max), "A coefficients vs a* recurrence")
    out.check(list(b.coefficients) == table("bck-terms").prefix(n_max), "B coefficients vs b recurrence")
    out.check(not any(riccati_residue("A", a.coefficients)), "A residue vanishes")
    out.check(not any(riccati_residue("B", b.coefficients)), "B residue vanishes")
    return out


def suite_ogr(n_max: Optional[int] = None) -> SuiteOutcome:
    out = SuiteOutcome("ogr-inequality")
    n_max = 40 if n_max is None else n_max
    for k in range(n_max + 1):
        b, rhs = count_bck_terms(3 * k + 2), ogr_rhs(k)
        out.check(b >= rhs, f"b_{3 * k + 2} = {b} < {rhs}")
    if n_max >= 1:
        out.check(count_bck_terms(5) == 9 and ogr_rhs(1) == 6, "k=1 pinned as 9 > 6")
    return out


def _label_violations(lab: frozenset) -> list[str]:
    L = ClassLabel
    bad = []
    chain = [(L.G, L.BCK), (L.BCK, L.INT), (L.INT, L.CL), (L.BCI, L.BCK), (L.BCI, L.EVEN)]
    for small, big in chain:
        if small in lab and big not in lab:
            bad.append(f"{small.value} not within {big.value}")
    if (L.PEIRCE in lab) != (L.CL in lab and L.INT not in lab):
        bad.append("PEIRCE != CL minus INT")
    if L.CL in lab and (L.SN in lab or L.LN in lab):
        bad.append("SN/LN formula is a tautology")
    if L.SN in lab and L.LN in lab:
        bad.append("SN and LN overlap")
    return bad


def suite_inclusions(n_max: Optional[int] = None) -> SuiteOutcome:
    out = SuiteOutcome("inclusions")
    n_max = 6 if n_max is None else n_max
    # BCI without the balance pruning, so BCI within EVEN is not built in
    provers = {"bci": Prover("bci", prune=False), "bck": Prover("bck"), "int": Prover("int")}
    for k in (1, 2):
        for n in range(1, n_max + 1):
            for f in enumerate_formulas(k, n):
                bad = _label_violations(labels(f, k, provers))
                out.check(not bad, f"{f}: {'; '.join(bad)}")
    return out


def suite_witnesses(n_max: Optional[int] = None) -> SuiteOutcome:
    out = SuiteOutcome("witnesses")
    n_max = 6 if n_max is None else n_max
    provers = [Prover(name) for name in ("bci", "bck", "int")]
    for k in (1, 2):
        for n in range(1, n_max + 1):
            for f in enumerate_formulas(k, n):
                for p in provers:
                    r = p.prove(f)
                    if r.provable:
                        out.check(check_witness(r.witness, f, p.logic), f"{p.logic.value} witness for {f}")
    return out


SUITES: dict[str, Callable[[Optional[int]], SuiteOutcome]] = {
    "recurrences": suite_recurrences,
    "riccati": suite_riccati,
    "ogr-inequality": suite_ogr,
    "inclusions": suite_inclusions,
    "witnesses": suite_witnesses,
}
