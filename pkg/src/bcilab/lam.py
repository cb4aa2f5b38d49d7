"""Lambda terms in nameless (de Bruijn) form.

``BVar(i)`` refers to the ``i``-th enclosing binder, counting from 1 at the
innermost.  Because names are gone, alpha-equivalent terms are equal as
values.  Size counts every node: variables, binders and applications.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import count
from typing import Iterator, Optional, Union

from .errors import FormulaSyntaxError, ResourceLimitError
from .formula import Formula, Imp, Var

DEFAULT_TERM_CAP = 14
DEFAULT_FUEL = 10_000

_LIST_CACHE_LIMIT = 200_000


@dataclass(frozen=True, slots=True)
class BVar:
    index: int

    def __str__(self) -> str:
        return render_term(self)


@dataclass(frozen=True, slots=True)
class Lam:
    body: Term

    def __str__(self) -> str:
        return render_term(self)


@dataclass(frozen=True, slots=True)
class App:
    fun: Term
    arg: Term

    def __str__(self) -> str:
        return render_term(self)


Term = Union[BVar, Lam, App]


def lams(n: int, body: Term) -> Term:
    for _ in range(n):
        body = Lam(body)
    return body


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


# the four combinators
I = Lam(BVar(1))
K = Lam(Lam(BVar(2)))
B = lams(3, App(BVar(3), App(BVar(2), BVar(1))))
C = lams(3, App(App(BVar(3), BVar(1)), BVar(2)))


# ---------------------------------------------------------------- syntax


def render_term(t: Term) -> str:
    r"""Concrete syntax: ``\.`` binds, ``#i`` is an index, applications are parenthesized.

    lambda x y. x y renders as ``\.\.(#2 #1)``.
    """
    if isinstance(t, BVar):
        return f"#{t.index}"
    if isinstance(t, Lam):
        return "\\." + render_term(t.body)
    fun = render_term(t.fun)
    if isinstance(t.fun, Lam):
        fun = f"({fun})"
    return f"({fun} {render_term(t.arg)})"


def parse_term(text: str) -> Term:
    """Inverse of :func:`render_term`; juxtaposition associates to the left."""
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def term() -> Term:
        skip()
        items = []
        while True:
            skip()
            if pos >= len(text) or text[pos] == ")":
                break
            items.append(atom())
        if not items:
            raise FormulaSyntaxError("expected a term", pos)
        return apps(*items)

    def atom() -> Term:
        nonlocal pos
        c = text[pos]
        if c == "#":
            j = pos + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == pos + 1:
                raise FormulaSyntaxError("expected index digits after '#'", pos)
            value = int(text[pos + 1 : j])
            if value < 1:
                raise FormulaSyntaxError("indices start at 1", pos)
            pos = j
            return BVar(value)
        if c in "\\λ":
            pos += 1
            if pos < len(text) and text[pos] == ".":
                pos += 1
            return Lam(term())
        if c == "(":
            pos += 1
            inner = term()
            skip()
            if pos >= len(text) or text[pos] != ")":
                raise FormulaSyntaxError("expected ')'", pos)
            pos += 1
            return inner
        raise FormulaSyntaxError(f"unexpected character {c!r}", pos)

    result = term()
    skip()
    if pos != len(text):
        raise FormulaSyntaxError("trailing input", pos)
    return result


# ---------------------------------------------------------------- structure


def term_size(t: Term) -> int:
    if isinstance(t, BVar):
        return 1
    if isinstance(t, Lam):
        return 1 + term_size(t.body)
    return 1 + term_size(t.fun) + term_size(t.arg)


def _binder_uses(t: Term) -> tuple[list[int], int]:
    """Occurrence count of every binder, and the number of free occurrences."""
    counts: list[int] = []
    free = 0

    def go(u: Term, env: list[int]) -> None:
        nonlocal free
        if isinstance(u, BVar):
            if u.index > len(env):
                free += 1
            else:
                counts[env[-u.index]] += 1
        elif isinstance(u, Lam):
            counts.append(0)
            env.append(len(counts) - 1)
            go(u.body, env)
            env.pop()
        else:
            go(u.fun, env)
            go(u.arg, env)

    go(t, [])
    return counts, free


def is_closed(t: Term) -> bool:
    return _binder_uses(t)[1] == 0


def is_bci_term(t: Term) -> bool:
    """Closed, and every binder binds exactly one occurrence."""
    counts, free = _binder_uses(t)
    return free == 0 and all(c == 1 for c in counts)


def is_bck_term(t: Term) -> bool:
    """Closed, and every binder binds at most one occurrence."""
    counts, free = _binder_uses(t)
    return free == 0 and all(c <= 1 for c in counts)


# ---------------------------------------------------------------- enumeration


@lru_cache(maxsize=None)
def _open_count(n: int, depth: int) -> int:
    if n == 1:
        return depth
    total = _open_count(n - 1, depth + 1)
    for i in range(1, n - 1):
        total += _open_count(i, depth) * _open_count(n - 1 - i, depth)
    return total


@lru_cache(maxsize=None)
def _open_list(n: int, depth: int) -> tuple[Term, ...]:
    return tuple(_open_terms(n, depth))


def _open_sub(n: int, depth: int) -> Iterator[Term]:
    if _open_count(n, depth) <= _LIST_CACHE_LIMIT:
        return iter(_open_list(n, depth))
    return _open_terms(n, depth)


def _open_terms(n: int, depth: int) -> Iterator[Term]:
    # variables, then binders, then applications by ascending function size
    if n == 1:
        for i in range(1, depth + 1):
            yield BVar(i)
        return
    for body in _open_sub(n - 1, depth + 1):
        yield Lam(body)
    for i in range(1, n - 1):
        for fun in _open_sub(i, depth):
            for arg in _open_sub(n - 1 - i, depth):
                yield App(fun, arg)


def enumerate_closed_terms(n: int, cap: int = DEFAULT_TERM_CAP) -> Iterator[Term]:
    """Each closed term of size ``n`` once (Lam before App, splits ascending)."""
    if n > cap:
        raise ResourceLimitError(f"size {n} exceeds term enumeration cap {cap}")
    if n < 1:
        return iter(())
    return _open_sub(n, 0)


def closed_term_count(n: int) -> int:
    """Closed-term count from the size/depth recursion (no enumeration)."""
    return _open_count(n, 0) if n >= 1 else 0


@lru_cache(maxsize=None)
def _resource_terms(n: int, free: tuple[int, ...], affine: bool) -> tuple[Term, ...]:
    # terms of size n whose free indices are exactly `free`, each used once
    if n < 1:
        return ()
    out: list[Term] = []
    if n == 1:
        if len(free) == 1:
            out.append(BVar(free[0]))
        return tuple(out)
    shifted = tuple(i + 1 for i in free)
    for body in _resource_terms(n - 1, (1,) + shifted, affine):
        out.append(Lam(body))
    if affine:
        for body in _resource_terms(n - 1, shifted, affine):
            out.append(Lam(body))
    m = len(free)
    for i in range(1, n - 1):
        for mask in range(1 << m):
            left = tuple(free[j] for j in range(m) if mask >> j & 1)
            right = tuple(free[j] for j in range(m) if not mask >> j & 1)
            for fun in _resource_terms(i, left, affine):
                for arg in _resource_terms(n - 1 - i, right, affine):
                    out.append(App(fun, arg))
    return tuple(out)


def enumerate_bci_terms(n: int) -> Iterator[Term]:
    """Linear closed terms of size ``n``, generated directly."""
    return iter(_resource_terms(n, (), False))


def enumerate_bck_terms(n: int) -> Iterator[Term]:
    """Affine closed terms of size ``n``, generated directly."""
    return iter(_resource_terms(n, (), True))


# ---------------------------------------------------------------- reduction


def shift(t: Term, by: int, cutoff: int = 1) -> Term:
    if isinstance(t, BVar):
        return BVar(t.index + by) if t.index >= cutoff else t
    if isinstance(t, Lam):
        return Lam(shift(t.body, by, cutoff + 1))
    return App(shift(t.fun, by, cutoff), shift(t.arg, by, cutoff))


def _subst(t: Term, j: int, s: Term) -> Term:
    # replace index j by s, where s is valid at the depth of t's root
    if isinstance(t, BVar):
        if t.index == j:
            return shift(s, j - 1)
        return BVar(t.index - 1) if t.index > j else t
    if isinstance(t, Lam):
        return Lam(_subst(t.body, j + 1, s))
    return App(_subst(t.fun, j, s), _subst(t.arg, j, s))


def beta_contract(redex: App) -> Term:
    """(\\. body) arg  ->  body[1 := arg]."""
    return _subst(redex.fun.body, 1, redex.arg)


def beta_step(t: Term) -> Optional[Term]:
    """One leftmost-outermost step, or None for a normal form."""
    if isinstance(t, App):
        if isinstance(t.fun, Lam):
            return beta_contract(t)
        f = beta_step(t.fun)
        if f is not None:
            return App(f, t.arg)
        a = beta_step(t.arg)
        return None if a is None else App(t.fun, a)
    if isinstance(t, Lam):
        b = beta_step(t.body)
        return None if b is None else Lam(b)
    return None


def reduction_sequence(t: Term, fuel: int = DEFAULT_FUEL) -> Iterator[Term]:
    """Successive leftmost-outermost reducts of ``t`` (excluding ``t``), at most ``fuel``."""
    for _ in range(fuel):
        nxt = beta_step(t)
        if nxt is None:
            return
        yield nxt
        t = nxt


def beta_normalize(t: Term, fuel: int = DEFAULT_FUEL) -> Optional[Term]:
    """Normal form of ``t``, or None if ``fuel`` steps do not reach one."""
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    for _ in range(fuel):
        nxt = beta_step(t)
        if nxt is None:
            return t
        t = nxt
    return t if beta_step(t) is None else None


# ---------------------------------------------------------------- types


@dataclass(frozen=True, slots=True)
class TVar:
    id: int

    def __str__(self) -> str:
        return render_type(self)


@dataclass(frozen=True, slots=True)
class Arrow:
    left: TypeExpr
    right: TypeExpr

    def __str__(self) -> str:
        return render_type(self)


TypeExpr = Union[TVar, Arrow]


def render_type(t: TypeExpr) -> str:
    if isinstance(t, TVar):
        return f"t{t.id}"
    left = render_type(t.left)
    if isinstance(t.left, Arrow):
        left = f"({left})"
    return f"{left}->{render_type(t.right)}"


class _Unifier:
    def __init__(self) -> None:
        self.subst: dict[int, TypeExpr] = {}
        self._fresh = count(1)

    def fresh(self) -> TVar:
        return TVar(next(self._fresh))

    def resolve(self, t: TypeExpr) -> TypeExpr:
        while isinstance(t, TVar) and t.id in self.subst:
            t = self.subst[t.id]
        return t

    def occurs(self, v: int, t: TypeExpr) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t.id == v
        return self.occurs(v, t.left) or self.occurs(v, t.right)

    def unify(self, a: TypeExpr, b: TypeExpr) -> bool:
        a, b = self.resolve(a), self.resolve(b)
        if isinstance(a, TVar):
            if isinstance(b, TVar) and b.id == a.id:
                return True
            if self.occurs(a.id, b):
                return False
            self.subst[a.id] = b
            return True
        if isinstance(b, TVar):
            return self.unify(b, a)
        return self.unify(a.left, b.left) and self.unify(a.right, b.right)

    def apply(self, t: TypeExpr) -> TypeExpr:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t
        return Arrow(self.apply(t.left), self.apply(t.right))


def canonical_type(t: TypeExpr) -> TypeExpr:
    """Renumber type variables 1, 2, ... by first occurrence, left to right."""
    names: dict[int, int] = {}

    def go(u: TypeExpr) -> TypeExpr:
        if isinstance(u, TVar):
            if u.id not in names:
                names[u.id] = len(names) + 1
            return TVar(names[u.id])
        left = go(u.left)
        return Arrow(left, go(u.right))

    return go(t)


def principal_type(t: Term) -> Optional[TypeExpr]:
    """Most general simple type of a closed term, or None if untypable or open."""
    u = _Unifier()

    def infer(term: Term, env: list[TypeExpr]) -> Optional[TypeExpr]:
        if isinstance(term, BVar):
            if term.index > len(env):
                return None
            return env[-term.index]
        if isinstance(term, Lam):
            a = u.fresh()
            env.append(a)
            body = infer(term.body, env)
            env.pop()
            return None if body is None else Arrow(a, body)
        f = infer(term.fun, env)
        if f is None:
            return None
        x = infer(term.arg, env)
        if x is None:
            return None
        r = u.fresh()
        if not u.unify(f, Arrow(x, r)):
            return None
        return r

    ty = infer(t, [])
    if ty is None:
        return None
    return canonical_type(u.apply(ty))


def instantiate(t: TypeExpr, mapping: dict[int, Formula]) -> Formula:
    """Formula obtained by replacing each type variable via ``mapping``."""
    if isinstance(t, TVar):
        return mapping[t.id]
    return Imp(instantiate(t.left, mapping), instantiate(t.right, mapping))


def match_type(pattern: TypeExpr, f: Formula) -> Optional[dict[int, Formula]]:
    """Substitution making ``pattern`` equal to ``f`` (variables of f are constants)."""
    found: dict[int, Formula] = {}
    stack = [(pattern, f)]
    while stack:
        p, g = stack.pop()
        if isinstance(p, TVar):
            if p.id in found:
                if found[p.id] != g:
                    return None
            else:
                found[p.id] = g
        elif isinstance(g, Imp):
            stack.append((p.left, g.left))
            stack.append((p.right, g.right))
        else:
            return None
    return found


def has_type(t: Term, f: Formula) -> bool:
    """Whether the closed term ``t`` can be assigned the formula ``f`` as a type."""
    pt = principal_type(t)
    return pt is not None and match_type(pt, f) is not None


def type_of_formula(f: Formula) -> TypeExpr:
    """Read a formula as a type, variable ``a_i`` becoming ``t_i``."""
    if isinstance(f, Var):
        return TVar(f.index)
    return Arrow(type_of_formula(f.left), type_of_formula(f.right))
