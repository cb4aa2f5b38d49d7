import itertools

import pytest
from hypothesis import given, settings

from bcilab.classify import is_classical_tautology, is_even, is_simple_tautology
from bcilab.formula import Imp, Var, chain, enumerate_formulas, formula_size, parse_formula
from bcilab.lam import (
    BVar,
    I,
    K,
    TVar,
    enumerate_bck_terms,
    enumerate_bci_terms,
    enumerate_closed_terms,
    instantiate,
    lams,
    principal_type,
)
from bcilab.prover import Logic, Prover, SearchCapExceeded, check_witness, prove

from conftest import formulas

PEIRCE = parse_formula("((a1->a2)->a1)->a1", 2)


@pytest.fixture(scope="module")
def provers():
    return {
        "bci": Prover("bci"),
        "bci_raw": Prover("bci", prune=False),
        "bck": Prover("bck"),
        "int": Prover("int"),
    }


def _instances(scheme, arity, k=3):
    for vs in itertools.product(range(1, k + 1), repeat=arity):
        yield scheme(*map(Var, vs))


def _b(p, q, r):
    return chain(Imp(p, q), Imp(r, p), r, q)


def _c(p, q, r):
    return chain(chain(p, q, r), q, p, r)


def _i(p):
    return Imp(p, p)


def _k(p, q):
    return chain(p, q, p)


@pytest.mark.parametrize("scheme, arity", [(_b, 3), (_c, 3), (_i, 1)])
def test_bci_axiom_instances(provers, scheme, arity):
    for f in _instances(scheme, arity):
        for name in ("bci", "bci_raw", "bck", "int"):
            assert provers[name].is_provable(f), (name, f)


def test_k_instances(provers):
    for f in _instances(_k, 2):
        assert provers["bck"].is_provable(f)
        assert not provers["bci"].is_provable(f)
        assert not provers["bci_raw"].is_provable(f)


def test_examples():
    r = prove("bci", parse_formula("a1->a1", 1))
    assert r.provable and r.witness == I
    assert not prove("bci", parse_formula("a1->a2->a1", 2)).provable
    r = prove("bck", parse_formula("a1->a2->a1", 2))
    assert r.provable and r.witness == K


def test_peirce():
    assert is_classical_tautology(PEIRCE, 2)
    assert not prove("int", PEIRCE).provable
    assert not prove("bck", PEIRCE).provable


@pytest.mark.parametrize(
    "t, text, logic, expected",
    [
        (I, "a1->a1", "bci", True),
        (K, "a1->a2->a1", "bci", False),
        (K, "a1->a2->a1", "bck", True),
        (K, "a1->a2->a2", "bck", False),
        (lams(2, BVar(1)), "a1->a2->a2", "int", True),
    ],
)
def test_check_witness(t, text, logic, expected):
    assert check_witness(t, parse_formula(text, 2), logic) is expected


def test_cap():
    with pytest.raises(SearchCapExceeded):
        Prover("int", cap=4).prove(parse_formula("a1->a1->a1->a1->a1", 1))


def test_simple_tautologies_are_bck_provable(provers):
    for k, n_max in ((1, 10), (2, 8)):
        for n in range(2, n_max + 1):
            for f in enumerate_formulas(k, n):
                if is_simple_tautology(f):
                    assert provers["bck"].is_provable(f), f


@pytest.mark.parametrize("k, n_max", [(1, 10), (2, 7)])
def test_inclusions_and_witnesses(provers, k, n_max):
    for n in range(1, n_max + 1):
        for f in enumerate_formulas(k, n):
            results = {name: p.prove(f) for name, p in provers.items()}
            bci, bck, intu = results["bci"].provable, results["bck"].provable, results["int"].provable
            assert results["bci_raw"].provable == bci
            assert not bci or (bck and is_even(f, k))
            assert not bck or intu
            assert not intu or is_classical_tautology(f, k)
            for name, logic in (("bci", Logic.BCI), ("bck", Logic.BCK), ("int", Logic.INT)):
                r = results[name]
                if r.provable:
                    assert check_witness(r.witness, f, logic), (name, f)


def test_one_variable_int_equals_classical(provers):
    # every one-variable implication is equivalent to a1 or a1->a1
    for n in range(1, 11):
        for f in enumerate_formulas(1, n):
            assert provers["int"].is_provable(f) == is_classical_tautology(f, 1)


def _types_of(terms, k=2):
    # each principal type instantiated with variables a1..ak in every way
    for t in terms:
        ty = principal_type(t)
        if ty is None:
            continue
        tvars = sorted(_tvars(ty))
        for vs in itertools.product(range(1, k + 1), repeat=len(tvars)):
            yield t, instantiate(ty, {tv: Var(v) for tv, v in zip(tvars, vs)})


def _tvars(ty):
    if isinstance(ty, TVar):
        return {ty.id}
    return _tvars(ty.left) | _tvars(ty.right)


@pytest.mark.parametrize(
    "logic, terms",
    [
        ("bci", lambda n: enumerate_bci_terms(n)),
        ("bck", lambda n: enumerate_bck_terms(n)),
        ("int", lambda n: enumerate_closed_terms(n)),
    ],
)
def test_completeness_against_typed_terms(provers, logic, terms):
    size_max = 11 if logic == "bci" else 9
    for n in range(1, size_max + 1):
        for t, f in _types_of(terms(n)):
            if formula_size(f) <= 16:
                assert provers[logic].is_provable(f), (logic, f)


# ---------------------------------------------------------------- Kripke oracle


def _rooted_posets(m):
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        le = {(i, i) for i in range(m)} | {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in le for i, j in le if i != j):
            continue
        if any((i, k) not in le for i, j in le for j2, k in le if j == j2):
            continue
        if all((0, j) in le for j in range(m)):
            yield le


def _upsets(m, le):
    for bits in itertools.product((False, True), repeat=m):
        s = {i for i in range(m) if bits[i]}
        if all(j in s for i, j in le if i in s):
            yield frozenset(s)


def _models(max_worlds, k):
    for m in range(1, max_worlds + 1):
        for le in _rooted_posets(m):
            ups = list(_upsets(m, le))
            for val in itertools.product(ups, repeat=k):
                yield m, le, val


def _forces(f, w, le, val, m):
    if isinstance(f, Var):
        return w in val[f.index - 1]
    return all(
        not _forces(f.left, v, le, val, m) or _forces(f.right, v, le, val, m)
        for v in range(m)
        if (w, v) in le
    )


MODELS = list(_models(3, 2))


def _kripke_valid(f):
    return all(_forces(f, 0, le, val, m) for m, le, val in MODELS)


def test_kripke_peirce():
    assert not _kripke_valid(PEIRCE)


@pytest.mark.parametrize("n", range(1, 7))
def test_int_matches_small_kripke_models(provers, n):
    for f in enumerate_formulas(2, n):
        assert provers["int"].is_provable(f) == _kripke_valid(f), f


@settings(max_examples=150, deadline=None)
@given(formulas(k=2, max_leaves=12))
def test_int_sound_for_kripke_models(f):
    if prove("int", f).provable:
        assert _kripke_valid(f)


@settings(max_examples=150, deadline=None)
@given(formulas(k=3, max_leaves=12))
def test_random_witnesses(f):
    for logic in Logic:
        r = prove(logic, f)
        if r.provable:
            assert check_witness(r.witness, f, logic)


def test_stats_and_memo():
    p = Prover("int")
    f = parse_formula("((a1->a2)->a1->a2)->(a1->a2)->a1->a2", 2)
    first = p.prove(f)
    again = p.prove(f)
    assert first.provable and again.provable
    assert again.stats.nodes_expanded <= first.stats.nodes_expanded
