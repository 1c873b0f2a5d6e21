import pytest
from hypothesis import given

from bkernel.binders import free_vars
from bkernel.syntax import (
    ParseError,
    SymbolTable,
    UnboundNamespaceToken,
    parse_expr,
    parse_pred,
    parse_term,
    print_expr,
    print_pred,
    print_term,
)
from bkernel.terms import (
    EBig,
    EChoice,
    ECmp,
    EPair,
    EPow,
    EProd,
    EVar,
    PAll,
    PAnd,
    PEq,
    PImp,
    PIn,
    PNot,
    Pred,
    Var,
)
from strategies import terms


def u(i):
    return EVar(Var("u", i))


def m(i):
    return EVar(Var("^", i))


def test_parse_forall_example():
    p, table = parse_pred("!x.(x : S => x = x)")
    assert p == PAll(PImp(PIn(m(0), u(0)), PEq(m(0), m(0))))
    assert table.entries == {("u", "S"): Var("u", 0)}


def test_alpha_variants_agree():
    assert parse_pred("!x.(x = x)")[0] == parse_pred("!y.(y = y)")[0]


def test_substitution_sugar():
    assert parse_pred("[x := BIG] (x = x)")[0] == PEq(EBig, EBig)
    p = parse_pred("[x := a] !y.(x = y)")[0]
    assert p == PAll(PEq(u(0), m(0)))


def test_expression_forms():
    assert parse_expr("BIG |-> BIG")[0] == EPair(EBig, EBig)
    assert parse_expr("a |-> b |-> c")[0] == EPair(u(0), EPair(u(1), u(2)))
    assert parse_expr("a * b * c")[0] == EProd(EProd(u(0), u(1)), u(2))
    assert parse_expr("POW(CHOICE(a))")[0] == EPow(EChoice(u(0)))
    assert parse_expr("{x : S | x : x}")[0] == ECmp(u(0), PIn(m(0), m(0)))
    assert parse_expr("(a |-> b) * c")[0] == EProd(EPair(u(0), u(1)), u(2))


def test_comprehension_binds_body_only():
    # the x in the domain is the free identifier, not the bound one
    e, table = parse_expr("{x : x | x = x}")
    assert e == ECmp(u(0), PEq(m(0), m(0)))
    assert table.entries == {("u", "x"): Var("u", 0)}


def test_connective_precedence():
    a, b, c = (PEq(u(i), u(i)) for i in range(3))
    p = parse_pred("a = a & b = b => c = c")[0]
    assert p == PImp(PAnd(a, b), c)
    assert parse_pred("a = a => b = b => c = c")[0] == PImp(a, PImp(b, c))
    assert parse_pred("a = a or b = b")[0] == PImp(PNot(a), b)
    assert parse_pred("a = a <=> b = b")[0] == PAnd(PImp(a, b), PImp(b, a))
    assert parse_pred("not a = a & b = b")[0] == PAnd(PNot(a), b)
    assert parse_pred("#x.(x : a)")[0] == PNot(PAll(PNot(PIn(m(0), u(0)))))


def test_namespaced_identifiers():
    p, table = parse_pred("w::a = a & w::b = w::a")
    assert p == PAnd(PEq(EVar(Var("w", 0)), u(0)), PEq(EVar(Var("w", 1)), EVar(Var("w", 0))))
    assert table.names()[Var("w", 1)] == "w::b"


def test_shared_table_and_determinism():
    table = SymbolTable()
    parse_pred("a = b", table)
    p = parse_pred("b = c", table)[0]
    assert p == PEq(u(1), u(2))
    assert parse_pred("a = b & c : d") == parse_pred("a = b & c : d")


@pytest.mark.parametrize(
    "text, start",
    [
        ("a = ", 4),
        ("!x,y.(x = y)", 2),
        ("a = b &", 7),
        ("a ? b", 2),
        ("x0 = a", 0),
        ("_bnd::a = a", 0),
    ],
)
def test_syntax_errors(text, start):
    with pytest.raises(ParseError) as info:
        parse_pred(text)
    assert info.value.kind == "SyntaxError"
    assert info.value.span.start == start
    assert info.value.span.start <= info.value.span.end


def test_machine_token_rejected():
    with pytest.raises(UnboundNamespaceToken):
        parse_pred("^0 = a")
    with pytest.raises(UnboundNamespaceToken):
        parse_expr("^::a")
    assert parse_expr("^0 |-> a", allow_machine=True)[0] == EPair(m(0), u(0))


def test_comments_are_skipped():
    assert parse_pred("a = a // trailing note")[0] == PEq(u(0), u(0))


def test_print_examples():
    assert print_pred(PAll(PEq(m(0), m(0)))) == "!x0.(x0 = x0)"
    assert print_expr(EBig) == "BIG"
    assert print_pred(PImp(PNot(PEq(EBig, EBig)), PEq(EBig, EBig))) == "not BIG = BIG => BIG = BIG"
    nested = PAll(PAll(PEq(m(1), m(0))))
    assert print_pred(nested) == "!x0.(!x1.(x0 = x1))"


def test_print_with_source_names():
    p, table = parse_pred("!x.(x : S) & w::t = T")
    assert print_pred(p, table.names()) == "!x0.(x0 : S) & w::t = T"
    assert print_pred(p) == "!x0.(x0 : v0) & w::v0 = v1"


@given(terms(8, namespaces=("u",), machine=False))
def test_round_trip(t):
    table = SymbolTable.canonical(sorted(free_vars(t)))
    text = print_term(t)
    back = (parse_pred if isinstance(t, Pred) else parse_expr)(text, table)[0]
    assert back == t


@given(terms(6, namespaces=("u", "w"), machine=False))
def test_round_trip_other_namespaces(t):
    table = SymbolTable.canonical(sorted(free_vars(t)))
    assert parse_term(print_term(t), table)[0] == t


def test_print_parse_idempotent():
    for text in ["!x.(x : {y : S | y = x}) => a |-> b : POW(S * T)", "#z.(z = CHOICE(a)) or not a = a"]:
        once = print_pred(parse_pred(text)[0])
        assert print_pred(parse_pred(once)[0]) == once
