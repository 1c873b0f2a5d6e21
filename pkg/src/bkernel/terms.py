"""B terms over namespaced de Bruijn variables.

Predicates and expressions are two mutually recursive families of frozen
dataclasses.  Variables are ``(namespace, index)`` pairs; binders (``PAll`` and
the body of ``ECmp``) only capture variables of the machinery namespace ``^``.
Every other namespace holds eternally free names.

Because bound variables carry no names, structural equality is
alpha-equivalence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

MACHINE = "^"
USER = "u"

_NS_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def check_namespace(ns: str) -> str:
    if ns != MACHINE and not _NS_RE.match(ns):
        raise ValueError(f"invalid namespace token {ns!r}")
    return ns


@dataclass(frozen=True, order=True, slots=True)
class Var:
    ns: str
    idx: int

    def __post_init__(self):
        check_namespace(self.ns)
        if self.idx < 0:
            raise ValueError(f"negative variable index {self.idx}")

    @property
    def is_machine(self) -> bool:
        return self.ns == MACHINE

    def __repr__(self):
        return f"({self.ns},{self.idx})"


def mvar(idx: int) -> Var:
    """Variable of the machinery namespace."""
    return Var(MACHINE, idx)


class Expr:
    __slots__ = ()


class Pred:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class EVar(Expr):
    v: Var

    def __repr__(self):
        return f"EVar{self.v!r}"


@dataclass(frozen=True, slots=True)
class EPair(Expr):
    l: Expr
    r: Expr


@dataclass(frozen=True, slots=True)
class EChoice(Expr):
    s: Expr


@dataclass(frozen=True, slots=True)
class EBigT(Expr):
    def __repr__(self):
        return "EBig"


EBig = EBigT()


@dataclass(frozen=True, slots=True)
class EPow(Expr):
    s: Expr


@dataclass(frozen=True, slots=True)
class EProd(Expr):
    l: Expr
    r: Expr


@dataclass(frozen=True, slots=True)
class ECmp(Expr):
    """Comprehension ``{x : dom | body}``; binds one ``^`` variable in body only."""

    dom: Expr
    body: Pred


@dataclass(frozen=True, slots=True)
class PAnd(Pred):
    l: Pred
    r: Pred


@dataclass(frozen=True, slots=True)
class PImp(Pred):
    l: Pred
    r: Pred


@dataclass(frozen=True, slots=True)
class PNot(Pred):
    p: Pred


@dataclass(frozen=True, slots=True)
class PAll(Pred):
    body: Pred


@dataclass(frozen=True, slots=True)
class PEq(Pred):
    l: Expr
    r: Expr


@dataclass(frozen=True, slots=True)
class PIn(Pred):
    e: Expr
    s: Expr


Term = Union[Pred, Expr]


def ev(ns: str, idx: int) -> EVar:
    return EVar(Var(ns, idx))


def term_eq(a: Term, b: Term) -> bool:
    return a == b


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (EVar, EBigT)):
        return ()
    if isinstance(t, (EPair, EProd, PAnd, PImp, PEq)):
        return (t.l, t.r)
    if isinstance(t, (EChoice, EPow)):
        return (t.s,)
    if isinstance(t, ECmp):
        return (t.dom, t.body)
    if isinstance(t, PNot):
        return (t.p,)
    if isinstance(t, PAll):
        return (t.body,)
    if isinstance(t, PIn):
        return (t.e, t.s)
    raise TypeError(f"not a term: {t!r}")


def depth(t: Term) -> int:
    kids = children(t)
    if not kids:
        return 1
    return 1 + max(depth(k) for k in kids)


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order walk over ``t`` and all its proper subterms."""
    yield t
    for k in children(t):
        yield from subterms(k)


def is_machine_free(t: Term) -> bool:
    """True when no variable of ``^`` occurs in ``t`` at all (bound or not)."""
    return not any(isinstance(s, EVar) and s.v.is_machine for s in subterms(t))
