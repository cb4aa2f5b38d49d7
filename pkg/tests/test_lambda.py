import pytest
from hypothesis import given

from bcilab.formula import parse_formula
from bcilab.lam import (
    B,
    C,
    I,
    K,
    App,
    Arrow,
    BVar,
    Lam,
    TVar,
    apps,
    beta_normalize,
    beta_step,
    closed_term_count,
    enumerate_bck_terms,
    enumerate_bci_terms,
    enumerate_closed_terms,
    has_type,
    is_bci_term,
    is_bck_term,
    is_closed,
    lams,
    match_type,
    parse_term,
    principal_type,
    reduction_sequence,
    render_term,
    render_type,
    shift,
    term_size,
)

from conftest import closed_terms

XX = Lam(App(BVar(1), BVar(1)))
APPLY = lams(2, App(BVar(2), BVar(1)))
FLIP_APPLY = lams(2, App(BVar(1), BVar(2)))


@pytest.mark.parametrize("t, size", [(I, 2), (APPLY, 5), (BVar(1), 1), (K, 3)])
def test_size(t, size):
    assert term_size(t) == size


@pytest.mark.parametrize("n, expected", [(1, []), (2, [I]), (3, [lams(2, BVar(1)), K])])
def test_enumerate_small(n, expected):
    assert sorted(enumerate_closed_terms(n), key=render_term) == sorted(expected, key=render_term)


def test_enumeration_is_duplicate_free_and_closed():
    for n in range(1, 10):
        ts = list(enumerate_closed_terms(n))
        assert len(ts) == len(set(ts)) == closed_term_count(n)
        assert all(is_closed(t) and term_size(t) == n for t in ts)


def test_closed_term_counts_pinned():
    assert [closed_term_count(n) for n in range(1, 11)] == [0, 1, 2, 4, 13, 42, 139, 506, 1915, 7558]


@pytest.mark.parametrize("t, expected", [(FLIP_APPLY, True), (K, False), (XX, False), (I, True)])
def test_bci(t, expected):
    assert is_bci_term(t) is expected


@pytest.mark.parametrize("t, expected", [(K, True), (XX, False), (APPLY, True)])
def test_bck(t, expected):
    assert is_bck_term(t) is expected


def test_direct_generators_match_filter():
    for n in range(0, 11):
        every = list(enumerate_closed_terms(n, cap=max(n, 1)))
        assert sorted(enumerate_bci_terms(n), key=render_term) == sorted(filter(is_bci_term, every), key=render_term)
        assert sorted(enumerate_bck_terms(n), key=render_term) == sorted(filter(is_bck_term, every), key=render_term)


def test_ck_k_is_identity():
    t = App(App(C, K), K)
    steps = list(reduction_sequence(t, fuel=10))
    assert steps[-1] == I
    assert len(steps) - 1 <= 10
    assert beta_normalize(t) == I


def test_beta_examples():
    assert beta_normalize(I) == I
    assert beta_normalize(App(I, I)) == I
    assert beta_step(I) is None


def test_fuel_exhausted():
    omega = App(XX, XX)
    assert beta_normalize(omega, fuel=50) is None


def test_leftmost_outermost():
    # (\x.\y.y) omega reduces to \y.y only under normal order
    t = App(lams(2, BVar(1)), App(XX, XX))
    assert beta_normalize(t, fuel=5) == I


def test_shift():
    assert shift(Lam(App(BVar(1), BVar(2))), 2) == Lam(App(BVar(1), BVar(4)))


@pytest.mark.parametrize(
    "t, expected",
    [
        (I, "t1->t1"),
        (K, "t1->t2->t1"),
        (B, "(t1->t2)->(t3->t1)->t3->t2"),
        (C, "(t1->t2->t3)->t2->t1->t3"),
    ],
)
def test_principal_type(t, expected):
    assert render_type(principal_type(t)) == expected


def test_untypable():
    assert principal_type(XX) is None


def test_has_type():
    assert has_type(I, parse_formula("a1->a1", 1))
    assert has_type(I, parse_formula("(a1->a2)->a1->a2", 2))
    assert has_type(K, parse_formula("a1->a2->a1", 2))
    assert not has_type(K, parse_formula("a1->a2->a2", 2))
    assert not has_type(XX, parse_formula("a1->a1", 1))


def test_match_type_is_consistent():
    pattern = Arrow(TVar(1), TVar(1))
    assert match_type(pattern, parse_formula("a1->a2", 2)) is None
    assert match_type(pattern, parse_formula("a2->a2", 2)) == {1: parse_formula("a2", 2)}


@given(closed_terms())
def test_render_parse_roundtrip(t):
    assert parse_term(render_term(t)) == t


@given(closed_terms())
def test_predicates_nest(t):
    assert is_closed(t)
    if is_bci_term(t):
        assert is_bck_term(t)


@given(closed_terms(10))
def test_affine_terms_are_typable_and_normalize(t):
    if is_bck_term(t):
        ty = principal_type(t)
        assert ty is not None
        nf = beta_normalize(t)
        assert nf is not None
        assert principal_type(nf) is not None


def test_apps_helper():
    assert apps(BVar(1), BVar(2), BVar(3)) == App(App(BVar(1), BVar(2)), BVar(3))
