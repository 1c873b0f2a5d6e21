"""ASCII surface syntax for B predicates and expressions.

Grammar, loosest binding first::

    P ::= P "<=>" P | P "=>" P | P "or" P | P "&" P | "not" P
        | "!" id "." "(" P ")" | "#" id "." "(" P ")" | "[" id ":=" E "]" P
        | E "=" E | E ":" E | "(" P ")"
    E ::= E "|->" E | E "*" E | id | ns "::" id | "BIG" | "POW" "(" E ")"
        | "CHOICE" "(" E ")" | "{" id ":" E "|" P "}" | "(" E ")"

``=>`` and ``|->`` associate to the right, the other binary operators to the
left.  Binders are elaborated through :func:`mk_forall`, :func:`mk_exists`
and :func:`mk_cmp`, so bound names never survive parsing.  Free names are
interned into a :class:`SymbolTable`; plain names live in namespace ``u``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .binders import app, apply_forall, mk_cmp, mk_exists, mk_forall, open_binder
from .terms import (
    MACHINE,
    USER,
    EBig,
    EBigT,
    EChoice,
    ECmp,
    EPair,
    EPow,
    EProd,
    EVar,
    Expr,
    PAll,
    PAnd,
    PEq,
    PImp,
    PIn,
    PNot,
    Pred,
    Term,
    Var,
)

BOUND_NS = "_bnd"
DISPLAY_NS = "_dsp"
KEYWORDS = {"or", "not", "BIG", "POW", "CHOICE"}
_RESERVED_NAME = re.compile(r"x[0-9]+\Z")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<op><=>|=>|\|->|::|:=|[&!\#.()\[\]{}|=:*,^])
  | (?P<name>[A-Za-z0-9_]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(Exception):
    kind = "SyntaxError"

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} at {span.start}..{span.end}")
        self.message = message
        self.span = span


class UnboundNamespaceToken(ParseError):
    kind = "UnboundNamespaceToken"


@dataclass
class SymbolTable:
    """Free identifiers seen so far, keyed by ``(namespace, name)``."""

    entries: dict[tuple[str, str], Var] = field(default_factory=dict)

    @classmethod
    def canonical(cls, vars) -> "SymbolTable":
        """Table matching the printer's naming of free variables."""
        table = cls()
        for v in vars:
            table.entries[(v.ns, f"v{v.idx}")] = v
        return table

    def intern(self, ns: str, name: str) -> Var:
        key = (ns, name)
        v = self.entries.get(key)
        if v is None:
            used = [w.idx for w in self.entries.values() if w.ns == ns]
            v = Var(ns, max(used) + 1 if used else 0)
            self.entries[key] = v
        return v

    def names(self) -> dict[Var, str]:
        out = {}
        for (ns, name), v in self.entries.items():
            out[v] = name if ns == USER else f"{ns}::{name}"
        return out

    def __repr__(self):
        body = ", ".join(f"{n} -> {v!r}" for v, n in sorted((v, n) for v, n in self.names().items()))
        return "{" + body + "}"


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            b = len(text[:pos].encode())
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(b, b + len(text[pos].encode())))
        if m.lastgroup != "ws":
            kind = m.lastgroup
            if kind == "name" and m.group() in KEYWORDS:
                kind = "op"
            toks.append(_Tok(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


_EXPR_FOLLOW = {"=", ":", "|->", "*"}


class _Parser:
    def __init__(self, text: str, table: SymbolTable, allow_machine: bool = False):
        self.text = text
        self.allow_machine = allow_machine
        self.toks = _tokenize(text)
        self.i = 0
        self.table = table
        self.scope: list[tuple[str, Var]] = []
        self.nbound = 0

    # -- token helpers

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None, cls=ParseError):
        tok = tok or self.tok
        b = len(self.text[: tok.start].encode())
        e = b + len(tok.text.encode())
        raise cls(message, SourceSpan(b, e))

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def take(self, text: str) -> _Tok:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def name(self) -> _Tok:
        if self.tok.kind != "name":
            found = self.tok.text or "end of input"
            self.error(f"expected an identifier, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def finish(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")

    # -- binders

    def bind(self) -> tuple[str, Var]:
        t = self.name()
        if self.at(","):
            self.error("binders take a single variable; nest one binder per variable")
        v = Var(BOUND_NS, self.nbound)
        self.nbound += 1
        return t.text, v

    def under(self, binding, parse):
        self.scope.append(binding)
        try:
            return parse()
        finally:
            self.scope.pop()

    # -- predicates

    def pred(self) -> Pred:
        left = self.imp()
        while self.at("<=>"):
            self.i += 1
            right = self.imp()
            left = PAnd(PImp(left, right), PImp(right, left))
        return left

    def imp(self) -> Pred:
        left = self.disj()
        if self.at("=>"):
            self.i += 1
            return PImp(left, self.imp())
        return left

    def disj(self) -> Pred:
        left = self.conj()
        while self.at("or"):
            self.i += 1
            left = PImp(PNot(left), self.conj())
        return left

    def conj(self) -> Pred:
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = PAnd(left, self.unary())
        return left

    def unary(self) -> Pred:
        if self.at("not"):
            self.i += 1
            return PNot(self.unary())
        if self.at("!") or self.at("#"):
            quant = self.tok.text
            self.i += 1
            binding = self.bind()
            self.take(".")
            self.take("(")
            body = self.under(binding, self.pred)
            self.take(")")
            return mk_forall(binding[1], body) if quant == "!" else mk_exists(binding[1], body)
        if self.at("["):
            self.i += 1
            binding = self.bind()
            self.take(":=")
            e = self.expr()
            self.take("]")
            body = self.under(binding, self.unary)
            return apply_forall(mk_forall(binding[1], body), e)
        if self.at("(") and not self._paren_is_expr():
            self.i += 1
            p = self.pred()
            self.take(")")
            return p
        return self.relation()

    def _paren_is_expr(self) -> bool:
        depth = 0
        for j in range(self.i, len(self.toks)):
            t = self.toks[j]
            if t.kind == "op" and t.text == "(":
                depth += 1
            elif t.kind == "op" and t.text == ")":
                depth -= 1
                if depth == 0:
                    nxt = self.toks[j + 1]
                    return nxt.kind == "op" and nxt.text in _EXPR_FOLLOW
        return False

    def relation(self) -> Pred:
        left = self.expr()
        if self.at("="):
            self.i += 1
            return PEq(left, self.expr())
        if self.at(":"):
            self.i += 1
            return PIn(left, self.expr())
        found = self.tok.text or "end of input"
        self.error(f"expected '=' or ':' after an expression, found {found!r}")

    # -- expressions

    def expr(self) -> Expr:
        left = self.product()
        if self.at("|->"):
            self.i += 1
            return EPair(left, self.expr())
        return left

    def product(self) -> Expr:
        left = self.eatom()
        while self.at("*"):
            self.i += 1
            left = EProd(left, self.eatom())
        return left

    def eatom(self) -> Expr:
        t = self.tok
        if self.at("BIG"):
            self.i += 1
            return EBig
        if self.at("POW") or self.at("CHOICE"):
            self.i += 1
            self.take("(")
            e = self.expr()
            self.take(")")
            return EPow(e) if t.text == "POW" else EChoice(e)
        if self.at("("):
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        if self.at("{"):
            self.i += 1
            binding = self.bind()
            self.take(":")
            dom = self.expr()
            self.take("|")
            body = self.under(binding, self.pred)
            self.take("}")
            return mk_cmp(binding[1], dom, body)
        if self.at("^"):
            if self.allow_machine:
                self.i += 1
                n = self.name()
                if not n.text.isdigit():
                    self.error("expected a ^ index", n)
                return EVar(Var(MACHINE, int(n.text)))
            self.error("the machinery namespace '^' cannot be written in source", cls=UnboundNamespaceToken)
        if t.kind == "name":
            return EVar(self.variable())
        found = t.text or "end of input"
        self.error(f"expected an expression, found {found!r}")

    def variable(self) -> Var:
        t = self.name()
        if self.at("::"):
            self.i += 1
            if self.at("^"):
                self.error("the machinery namespace '^' cannot be written in source", cls=UnboundNamespaceToken)
            n = self.name()
            if t.text.startswith("_"):
                self.error(f"namespace {t.text!r} is reserved", t)
            return self.table.intern(t.text, n.text)
        if self.at("^"):
            self.error("the machinery namespace '^' cannot be written in source", cls=UnboundNamespaceToken)
        for name, v in reversed(self.scope):
            if name == t.text:
                return v
        if _RESERVED_NAME.match(t.text):
            self.error(f"{t.text!r} is reserved for bound variables; bind it or rename it", t)
        return self.table.intern(USER, t.text)


def parse_pred(text: str, table: SymbolTable | None = None) -> tuple[Pred, SymbolTable]:
    table = SymbolTable() if table is None else table
    p = _Parser(text, table)
    out = p.pred()
    p.finish()
    return out, table


def parse_expr(
    text: str, table: SymbolTable | None = None, allow_machine: bool = False
) -> tuple[Expr, SymbolTable]:
    """Parse an expression.  ``allow_machine`` admits raw ``^N`` leaves, for
    tools that need to build dangling indexes on purpose."""
    table = SymbolTable() if table is None else table
    p = _Parser(text, table, allow_machine)
    out = p.expr()
    p.finish()
    return out, table


def parse_term(text: str, table: SymbolTable | None = None) -> tuple[Term, SymbolTable]:
    """Predicate if the text reads as one, otherwise an expression."""
    table = SymbolTable() if table is None else table
    snapshot = dict(table.entries)
    try:
        return parse_pred(text, table)
    except ParseError as as_pred:
        table.entries = dict(snapshot)
        try:
            return parse_expr(text, table)
        except ParseError as as_expr:
            table.entries = snapshot
            raise max(as_pred, as_expr, key=lambda err: err.span.start) from None


def parse_var(text: str, table: SymbolTable) -> Var:
    p = _Parser(text, table)
    v = p.variable()
    p.finish()
    return v


# -- printing -----------------------------------------------------------------

_IFF, _IMP, _AND, _UNARY = 1, 2, 4, 5
_PAIR, _PROD, _EATOM = 1, 2, 3


def _var_name(v: Var, names=None) -> str:
    if names and v in names:
        return names[v]
    if v.ns == DISPLAY_NS:
        return f"x{v.idx}"
    if v.ns == USER:
        return f"v{v.idx}"
    if v.ns == MACHINE:
        return f"^{v.idx}"
    return f"{v.ns}::v{v.idx}"


def _is_iff(p: Pred) -> bool:
    return (
        isinstance(p, PAnd)
        and isinstance(p.l, PImp)
        and isinstance(p.r, PImp)
        and p.l.l == p.r.r
        and p.l.r == p.r.l
    )


def _wrap(s: str, level: int, need: int) -> str:
    return s if level >= need else f"({s})"


def _open(body: Pred, k: int) -> tuple[Pred, int]:
    return open_binder(PAll(body), Var(DISPLAY_NS, k)), k + 1


def _pp(p: Pred, k: int, names=None) -> tuple[str, int]:
    if _is_iff(p):
        a, b = p.l.l, p.l.r
        return f"{_wrap(*_pp(a, k, names), _IFF)} <=> {_wrap(*_pp(b, k, names), _IMP)}", _IFF
    if isinstance(p, PImp):
        return f"{_wrap(*_pp(p.l, k, names), _IMP + 1)} => {_wrap(*_pp(p.r, k, names), _IMP)}", _IMP
    if isinstance(p, PAnd):
        return f"{_wrap(*_pp(p.l, k, names), _AND)} & {_wrap(*_pp(p.r, k, names), _UNARY)}", _AND
    if isinstance(p, PNot):
        if isinstance(p.p, PAll) and isinstance(p.p.body, PNot):
            inner, k2 = _open(p.p.body.p, k)
            return f"#x{k}.({_pp(inner, k2, names)[0]})", _UNARY
        return f"not {_wrap(*_pp(p.p, k, names), _UNARY)}", _UNARY
    if isinstance(p, PAll):
        inner, k2 = _open(p.body, k)
        return f"!x{k}.({_pp(inner, k2, names)[0]})", _UNARY
    if isinstance(p, PEq):
        return f"{_pe(p.l, k, names)[0]} = {_pe(p.r, k, names)[0]}", _UNARY
    if isinstance(p, PIn):
        return f"{_pe(p.e, k, names)[0]} : {_pe(p.s, k, names)[0]}", _UNARY
    raise TypeError(f"not a predicate: {p!r}")


def _pe(e: Expr, k: int, names=None) -> tuple[str, int]:
    if isinstance(e, EVar):
        return _var_name(e.v, names), _EATOM
    if isinstance(e, EBigT):
        return "BIG", _EATOM
    if isinstance(e, EPair):
        return f"{_wrap(*_pe(e.l, k, names), _PROD)} |-> {_wrap(*_pe(e.r, k, names), _PAIR)}", _PAIR
    if isinstance(e, EProd):
        return f"{_wrap(*_pe(e.l, k, names), _PROD)} * {_wrap(*_pe(e.r, k, names), _EATOM)}", _PROD
    if isinstance(e, EPow):
        return f"POW({_pe(e.s, k, names)[0]})", _EATOM
    if isinstance(e, EChoice):
        return f"CHOICE({_pe(e.s, k, names)[0]})", _EATOM
    if isinstance(e, ECmp):
        inner = app(EVar(Var(DISPLAY_NS, k)), 0, e.body)
        return f"{{x{k} : {_pe(e.dom, k, names)[0]} | {_pp(inner, k + 1, names)[0]}}}", _EATOM
    raise TypeError(f"not an expression: {e!r}")


def print_pred(p: Pred, names: dict[Var, str] | None = None) -> str:
    """``names`` overrides the default ``v<idx>`` spelling of free variables."""
    return _pp(p, 0, names)[0]


def print_expr(e: Expr, names: dict[Var, str] | None = None) -> str:
    return _pe(e, 0, names)[0]


def print_term(t: Term, names: dict[Var, str] | None = None) -> str:
    return print_pred(t, names) if isinstance(t, Pred) else print_expr(t, names)
