import pytest
from hypothesis import given

from bkernel.terms import (
    MACHINE,
    EBig,
    EPair,
    EVar,
    PAll,
    PEq,
    PNot,
    Var,
    check_namespace,
    depth,
    ev,
    subterms,
    term_eq,
)
from strategies import terms


def test_term_eq_examples():
    a = PAll(PEq(ev("^", 0), ev("^", 0)))
    assert term_eq(a, PAll(PEq(ev("^", 0), ev("^", 0))))
    assert not term_eq(ev("u", 0), ev("v", 0))


def test_depth_examples():
    assert depth(EBig) == 1
    assert depth(PEq(ev("u", 0), ev("u", 1))) == 2
    assert depth(PAll(PNot(PEq(EBig, EBig)))) == 4


def test_var_order_and_machine_namespace():
    assert Var("^", 3) != Var("u", 3)
    assert sorted([Var("u", 1), Var("^", 2), Var("u", 0)]) == [Var("^", 2), Var("u", 0), Var("u", 1)]
    assert Var(MACHINE, 0).is_machine and not Var("u", 0).is_machine


@pytest.mark.parametrize("bad", ["", "a-b", "x y", "::"])
def test_bad_namespaces(bad):
    with pytest.raises(ValueError):
        check_namespace(bad)


def test_terms_are_immutable():
    t = EPair(EBig, EBig)
    with pytest.raises(AttributeError):
        t.l = EVar(Var("u", 0))
    assert hash(t) == hash(EPair(EBig, EBig))


@given(terms(6))
def test_depth_decreases_into_subterms(t):
    d = depth(t)
    assert d >= 1
    for s in subterms(t):
        if s is not t:
            assert depth(s) < d


@given(terms(5), terms(5))
def test_term_eq_is_an_equivalence(a, b):
    assert term_eq(a, a)
    assert term_eq(a, b) == term_eq(b, a)
