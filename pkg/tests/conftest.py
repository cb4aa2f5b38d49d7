import pytest
from hypothesis import strategies as st

from bcilab.formula import Imp, Var
from bcilab.lam import App, BVar, Lam


def formulas(k: int = 3, max_leaves: int = 12):
    return st.recursive(
        st.integers(1, k).map(Var),
        lambda sub: st.tuples(sub, sub).map(lambda p: Imp(*p)),
        max_leaves=max_leaves,
    )


@st.composite
def _open_term(draw, depth: int, budget: int):
    # terms whose free indices are at most ``depth``
    options = ["lam"] + (["var"] if depth else []) + (["app"] if budget > 2 else [])
    kind = draw(st.sampled_from(options)) if budget > 1 else ("var" if depth else "lam")
    if kind == "var" or budget <= 1 and depth:
        return BVar(draw(st.integers(1, depth)))
    if kind == "lam" or budget <= 2:
        return Lam(draw(_open_term(depth + 1, budget - 1)))
    left = draw(st.integers(1, budget - 2))
    return App(draw(_open_term(depth, left)), draw(_open_term(depth, budget - 1 - left)))


def closed_terms(max_size: int = 12):
    return st.integers(2, max_size).flatmap(lambda n: _open_term(0, n))


# ---------------------------------------------------------------- acceptance report

_CRITERIA: list[str] = []


@pytest.fixture
def report():
    def record(line: str) -> None:
        _CRITERIA.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
