"""Implicational formulas over the variables a1..ak.

A formula is a binary tree: leaves are variables, internal nodes are
implications.  Size is the number of leaves.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

from .errors import FormulaSyntaxError, ResourceLimitError

DEFAULT_ENUM_CAP = 20

# sub-size lists are cached only while they stay this small
_LIST_CACHE_LIMIT = 250_000


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True, slots=True)
class Imp:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render_formula(self)


Formula = Union[Var, Imp]


@dataclass(frozen=True, slots=True)
class Decomposition:
    """``premises -> goal`` view of a formula, premises in left-to-right order."""

    premises: tuple[Formula, ...]
    goal: int


def chain(*parts: Formula) -> Formula:
    """Right-nested implication ``parts[0] -> (parts[1] -> ... parts[-1])``."""
    if not parts:
        raise ValueError("chain() needs at least one formula")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Imp(p, out)
    return out


# ---------------------------------------------------------------- parsing


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens: list[tuple[str, object, int]] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, None, i))
            i += 1
        elif text.startswith("->", i):
            tokens.append(("->", None, i))
            i += 2
        elif c == "→":
            tokens.append(("->", None, i))
            i += 1
        elif c == "a" and i + 1 < len(text) and text[i + 1].isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("var", int(text[i + 1 : j]), i))
            i = j
        elif "a" <= c <= "z":
            tokens.append(("var", ord(c) - ord("a") + 1, i))
            i += 1
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r}", i)
    return tokens


def parse_formula(text: str, k: int) -> Formula:
    """Parse ``text`` into a formula over ``k`` variables.

    ``->`` is right-associative.  Variables are written ``a1``, ``a2``, ...;
    single letters ``a``..``z`` are shorthand for ``a1``..``a26``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None, len(text))

    def formula() -> Formula:
        nonlocal pos
        left = atom()
        if peek()[0] == "->":
            pos += 1
            return Imp(left, formula())
        return left

    def atom() -> Formula:
        nonlocal pos
        kind, value, at = peek()
        if kind == "var":
            pos += 1
            if not 1 <= value <= k:
                raise FormulaSyntaxError(f"variable a{value} outside a1..a{k}", at)
            return Var(value)
        if kind == "(":
            pos += 1
            inner = formula()
            if peek()[0] != ")":
                raise FormulaSyntaxError("expected ')'", peek()[2])
            pos += 1
            return inner
        raise FormulaSyntaxError(f"expected variable or '(' but found {kind!r}", at)

    result = formula()
    if pos != len(tokens):
        raise FormulaSyntaxError("trailing input", peek()[2])
    return result


def render_formula(f: Formula) -> str:
    """Text form with the fewest parentheses; inverse of :func:`parse_formula`."""
    if isinstance(f, Var):
        return f"a{f.index}"
    left = render_formula(f.left)
    if isinstance(f.left, Imp):
        left = f"({left})"
    return f"{left}->{render_formula(f.right)}"


# ---------------------------------------------------------------- structure


def formula_size(f: Formula) -> int:
    """Number of leaves (variable occurrences)."""
    if isinstance(f, Var):
        return 1
    return formula_size(f.left) + formula_size(f.right)


def goal_of(f: Formula) -> int:
    """Index of the rightmost variable."""
    while isinstance(f, Imp):
        f = f.right
    return f.index


def decompose(f: Formula) -> Decomposition:
    premises = []
    while isinstance(f, Imp):
        premises.append(f.left)
        f = f.right
    return Decomposition(tuple(premises), f.index)


def reassemble(d: Decomposition) -> Formula:
    return chain(*d.premises, Var(d.goal))


def occurrences(f: Formula) -> Counter:
    """Occurrence count per variable index."""
    counts: Counter = Counter()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            counts[g.index] += 1
        else:
            stack.append(g.left)
            stack.append(g.right)
    return counts


def max_variable(f: Formula) -> int:
    return max(occurrences(f))


def leaves(f: Formula) -> list[int]:
    """Variable indices of the leaves, left to right."""
    out: list[int] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.append(g.index)
        else:
            stack.append(g.right)
            stack.append(g.left)
    return out


def relabel(shape: Formula, labels: Sequence[int]) -> Formula:
    """Replace the leaves of ``shape`` left to right by ``labels``."""
    it = iter(labels)

    def go(g: Formula) -> Formula:
        if isinstance(g, Var):
            return Var(next(it))
        return Imp(go(g.left), go(g.right))

    return go(shape)


# ---------------------------------------------------------------- enumeration


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ResourceLimitError(f"size {n} exceeds enumeration cap {cap}")


@lru_cache(maxsize=None)
def _cached_list(k: int, n: int) -> tuple[Formula, ...]:
    return tuple(_generate(k, n))


def _count(k: int, n: int) -> int:
    from .counting import count_all_formulas

    return count_all_formulas(k, n)


def _sub(k: int, n: int) -> Iterator[Formula]:
    if _count(k, n) <= _LIST_CACHE_LIMIT:
        return iter(_cached_list(k, n))
    return _generate(k, n)


def _generate(k: int, n: int) -> Iterator[Formula]:
    if n == 1:
        for i in range(1, k + 1):
            yield Var(i)
        return
    for i in range(1, n):
        for left in _sub(k, i):
            for right in _sub(k, n - i):
                yield Imp(left, right)


def enumerate_formulas(k: int, n: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Formula]:
    """Every formula of size ``n`` over ``k`` variables, each exactly once.

    Order: left-subtree size ascending, then left subtree in this same order,
    then right subtree in this same order; leaves by variable index ascending.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    _check_cap(n, cap)
    return _sub(k, n)


def enumerate_shapes(n: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Formula]:
    """Unlabelled binary trees with ``n`` leaves (all leaves carry ``a1``)."""
    return enumerate_formulas(1, n, cap)
