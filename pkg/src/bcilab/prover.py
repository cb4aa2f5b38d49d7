"""Decision procedures for BCI, BCK and intuitionistic implication.

BCI and BCK use goal-directed sequent search: implications in the goal
are introduced first (the right rule is invertible), then for an atomic
goal ``q`` a hypothesis ``A1 -> ... -> Am -> q`` is chosen and the rest of
the context is split among the ``Ai``.  In BCI the split is an exact
partition and the axiom needs a singleton context.  In BCK the axiom
absorbs weakening; since weakening is then admissible everywhere, exact
partitions still suffice.  Every step removes an implication symbol, so
the search terminates.

INT uses Dyckhoff's contraction-free calculus, which terminates because
each premise is smaller in his multiset ordering on formula weights.

Each procedure records a plan per sequent; witnesses are rebuilt from the
plans afterwards, as named terms converted to nameless form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import count, product
from typing import Iterator, Optional

from .errors import ResourceLimitError
from .formula import Formula, Imp, Var, formula_size, render_formula
from .lam import BVar, Lam, App, Term, has_type, is_bci_term, is_bck_term, is_closed

DEFAULT_PROVER_CAP = 16


class Logic(str, Enum):
    BCI = "bci"
    BCK = "bck"
    INT = "int"


class SearchCapExceeded(ResourceLimitError):
    pass


@dataclass
class ProofStats:
    nodes_expanded: int = 0
    cache_hits: int = 0


@dataclass
class ProofResult:
    provable: bool
    witness: Optional[Term]
    stats: ProofStats = field(default_factory=ProofStats)


class _Interner:
    """Hash-consed formulas: each distinct formula gets a small integer id."""

    def __init__(self) -> None:
        self._ids: dict[object, int] = {}
        self.left: list[int] = []  # -1 for atoms
        self.right: list[int] = []  # atom index for atoms
        self.goal: list[int] = []
        self.key: list[tuple[int, str]] = []
        self.polarity: list[dict[int, int]] = []

    def is_atom(self, fid: int) -> bool:
        return self.left[fid] < 0

    def intern(self, f: Formula) -> int:
        if isinstance(f, Var):
            k: object = ("v", f.index)
        else:
            k = (self.intern(f.left), self.intern(f.right))
        fid = self._ids.get(k)
        if fid is not None:
            return fid
        fid = len(self.left)
        if isinstance(f, Var):
            self.left.append(-1)
            self.right.append(f.index)
            self.goal.append(f.index)
            self.polarity.append({f.index: 1})
        else:
            l, r = k
            self.left.append(l)
            self.right.append(r)
            self.goal.append(self.goal[r])
            pol = dict(self.polarity[r])
            for a, v in self.polarity[l].items():
                pol[a] = pol.get(a, 0) - v
            self.polarity.append({a: v for a, v in pol.items() if v})
        self.key.append((formula_size(f), render_formula(f)))
        self._ids[k] = fid
        return fid

    def imp(self, l: int, r: int) -> int:
        fid = self._ids.get((l, r))
        if fid is None:
            fid = self.intern(Imp(self.formula(l), self.formula(r)))
        return fid

    def formula(self, fid: int) -> Formula:
        if self.is_atom(fid):
            return Var(self.right[fid])
        return Imp(self.formula(self.left[fid]), self.formula(self.right[fid]))

    def premises(self, fid: int) -> list[int]:
        out = []
        while not self.is_atom(fid):
            out.append(self.left[fid])
            fid = self.right[fid]
        return out


# ---------------------------------------------------------------- named terms
# ('v', name) | ('l', name, body) | ('a', fun, arg); names are ints


def _to_nameless(t: tuple, env: list[int]) -> Term:
    tag = t[0]
    if tag == "v":
        for depth in range(len(env) - 1, -1, -1):
            if env[depth] == t[1]:
                return BVar(len(env) - depth)
        raise ValueError(f"free name {t[1]} in witness")
    if tag == "l":
        env.append(t[1])
        body = _to_nameless(t[2], env)
        env.pop()
        return Lam(body)
    return App(_to_nameless(t[1], env), _to_nameless(t[2], env))


def _subst_named(t: tuple, name: int, s: tuple) -> tuple:
    # binder names are globally fresh, so no capture is possible
    tag = t[0]
    if tag == "v":
        return s if t[1] == name else t
    if tag == "l":
        return ("l", t[1], _subst_named(t[2], name, s))
    return ("a", _subst_named(t[1], name, s), _subst_named(t[2], name, s))


def _wrap(binders: list[int], body: tuple) -> tuple:
    for b in reversed(binders):
        body = ("l", b, body)
    return body


# ---------------------------------------------------------------- provers


class Prover:
    """Memoizing decision procedure for one logic.

    The memo is keyed on canonical sequents and shared by every call on the
    same instance.  ``prune`` enables the atom-balance test for BCI (every
    atom must occur equally often positively and negatively); it is sound
    but can be switched off to obtain the unpruned search.
    """

    def __init__(self, logic: Logic | str, cap: int = DEFAULT_PROVER_CAP, prune: bool = True):
        self.logic = Logic(logic)
        self.cap = cap
        self.prune = prune and self.logic is Logic.BCI
        self._f = _Interner()
        self._plans: dict[tuple[tuple[int, ...], int], object] = {}
        self._stats = ProofStats()

    # -- public

    def prove(self, f: Formula, witness: bool = True) -> ProofResult:
        size = formula_size(f)
        if size > self.cap:
            raise SearchCapExceeded(f"formula size {size} exceeds prover cap {self.cap}")
        self._stats = ProofStats()
        goal = self._f.intern(f)
        plan = self._solve((), goal)
        stats = self._stats
        if plan is None:
            return ProofResult(False, None, stats)
        term = None
        if witness:
            self._fresh = count()
            if self.logic is Logic.INT:
                named = self._extract_int({}, goal)
            else:
                named = self._extract_linear([], goal)
            term = _to_nameless(named, [])
        return ProofResult(True, term, stats)

    def is_provable(self, f: Formula) -> bool:
        return self.prove(f, witness=False).provable

    # -- shared helpers

    def _canon(self, ids) -> tuple[int, ...]:
        if self.logic is Logic.INT:
            ids = set(ids)
        return tuple(sorted(ids, key=self._f.key.__getitem__))

    def _solve(self, ctx: tuple[int, ...], goal: int):
        key = (ctx, goal)
        if key in self._plans:
            self._stats.cache_hits += 1
            return self._plans[key]
        self._stats.nodes_expanded += 1
        if not self._f.is_atom(goal):
            inner = self._canon(ctx + (self._f.left[goal],))
            plan = "intro" if self._solve(inner, self._f.right[goal]) is not None else None
        elif self.logic is Logic.INT:
            plan = self._solve_int_atom(ctx, goal)
        else:
            plan = self._solve_linear_atom(ctx, goal)
        return self._plans.setdefault(key, plan)

    # -- BCI / BCK

    def _balanced(self, ctx, goal: int) -> bool:
        total = dict(self._f.polarity[goal])
        for h in ctx:
            for a, v in self._f.polarity[h].items():
                total[a] = total.get(a, 0) - v
        return not any(total.values())

    def _solve_linear_atom(self, ctx: tuple[int, ...], q: int):
        if self.prune and not self._balanced(ctx, q):
            return None
        if q in ctx and (self.logic is Logic.BCK or len(ctx) == 1):
            return ("ax",)
        tried = set()
        for pos, h in enumerate(ctx):
            if h in tried or self._f.is_atom(h) or self._f.goal[h] != self._f.right[q]:
                continue
            tried.add(h)
            rest = ctx[:pos] + ctx[pos + 1 :]
            parts = self._distribute(self._f.premises(h), rest)
            if parts is not None:
                return ("bc", h, parts)
        return None

    def _distribute(self, premises: list[int], pool: tuple[int, ...]):
        """Split ``pool`` into one sub-context per premise, each provable."""
        if len(premises) == 1:
            return (pool,) if self._solve(pool, premises[0]) is not None else None
        first = premises[0]
        for part, rest in _submultisets(pool):
            if self.prune and not self._balanced(part, first):
                continue
            if self._solve(part, first) is None:
                continue
            tail = self._distribute(premises[1:], rest)
            if tail is not None:
                return (part,) + tail
        return None

    def _extract_linear(self, hyps: list[tuple[int, int]], goal: int) -> tuple:
        binders = []
        hyps = list(hyps)
        while not self._f.is_atom(goal):
            name = next(self._fresh)
            binders.append(name)
            hyps.append((name, self._f.left[goal]))
            goal = self._f.right[goal]
        ctx = self._canon(h for _, h in hyps)
        plan = self._plans[(ctx, goal)]
        if plan[0] == "ax":
            name = next(n for n, h in hyps if h == goal)
            return _wrap(binders, ("v", name))
        _, head, parts = plan
        pool = list(hyps)
        head_name = _take(pool, head)
        term: tuple = ("v", head_name)
        for premise, part in zip(self._f.premises(head), parts):
            sub = [(_take(pool, h), h) for h in part]
            term = ("a", term, self._extract_linear(sub, premise))
        return _wrap(binders, term)

    # -- INT (contraction-free)

    def _solve_int_atom(self, ctx: tuple[int, ...], q: int):
        F = self._f
        if q in ctx:
            return ("ax",)
        present = set(ctx)
        for h in ctx:
            if not F.is_atom(h) and F.left[h] in present and F.is_atom(F.left[h]):
                # invertible: p, p->B  becomes  p, B
                new = self._canon([x for x in ctx if x != h] + [F.right[h]])
                return ("l0", h) if self._solve(new, q) is not None else None
        for h in ctx:
            if F.is_atom(h) or F.is_atom(F.left[h]):
                continue
            a, b, c = F.left[F.left[h]], F.right[F.left[h]], F.right[h]
            others = [x for x in ctx if x != h]
            # the right premise is invertible, so its failure is final
            if self._solve(self._canon(others + [c]), q) is None:
                return None
            if self._solve(self._canon(others + [F.imp(b, c)]), F.left[h]) is not None:
                return ("l2", h)
        return None

    def _extract_int(self, env: dict[int, int], goal: int) -> tuple:
        F = self._f
        binders = []
        env = dict(env)
        while not F.is_atom(goal):
            name = next(self._fresh)
            binders.append(name)
            env[F.left[goal]] = name
            goal = F.right[goal]
        plan = self._plans[(self._canon(env), goal)]
        if plan[0] == "ax":
            return _wrap(binders, ("v", env[goal]))
        h = plan[1]
        y = env[h]
        rest = {x: n for x, n in env.items() if x != h}
        if plan[0] == "l0":
            z = next(self._fresh)
            body = self._extract_int({**rest, F.right[h]: z}, goal)
            arg = ("a", ("v", y), ("v", env[F.left[h]]))
            return _wrap(binders, _subst_named(body, z, arg))
        b, c = F.right[F.left[h]], F.right[h]
        w = next(self._fresh)
        m = self._extract_int({**rest, F.imp(b, c): w}, F.left[h])
        v, u = next(self._fresh), next(self._fresh)
        # B -> C from (A -> B) -> C:  \v. y (\u. v)
        m = _subst_named(m, w, ("l", v, ("a", ("v", y), ("l", u, ("v", v)))))
        z = next(self._fresh)
        body = self._extract_int({**rest, c: z}, goal)
        return _wrap(binders, _subst_named(body, z, ("a", ("v", y), m)))


def _take(pool: list[tuple[int, int]], fid: int) -> int:
    for i, (name, h) in enumerate(pool):
        if h == fid:
            del pool[i]
            return name
    raise KeyError(fid)


def _submultisets(pool: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(part, rest) for each sub-multiset of a canonically ordered pool."""
    groups: list[tuple[int, int]] = []
    for h in pool:
        if groups and groups[-1][0] == h:
            groups[-1] = (h, groups[-1][1] + 1)
        else:
            groups.append((h, 1))
    for counts in product(*(range(c + 1) for _, c in groups)):
        part: list[int] = []
        rest: list[int] = []
        for (h, c), t in zip(groups, counts):
            part.extend([h] * t)
            rest.extend([h] * (c - t))
        yield tuple(part), tuple(rest)


# ---------------------------------------------------------------- module API

_DEFAULT: dict[Logic, Prover] = {}


def default_prover(logic: Logic | str) -> Prover:
    logic = Logic(logic)
    if logic not in _DEFAULT:
        _DEFAULT[logic] = Prover(logic)
    return _DEFAULT[logic]


def prove(logic: Logic | str, f: Formula, cap: int = DEFAULT_PROVER_CAP) -> ProofResult:
    """Decide ``|- f`` in ``logic``; on success the result carries a witness term."""
    p = default_prover(logic)
    if cap != p.cap:
        p = Prover(logic, cap=cap)
    return p.prove(f)


def check_witness(t: Term, f: Formula, logic: Logic | str) -> bool:
    """Closed, typable with ``f``, and obeying the binder discipline of ``logic``."""
    logic = Logic(logic)
    if not is_closed(t) or not has_type(t, f):
        return False
    if logic is Logic.BCI:
        return is_bci_term(t)
    if logic is Logic.BCK:
        return is_bck_term(t)
    return True
