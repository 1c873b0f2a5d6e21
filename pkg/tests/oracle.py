"""Named-variable reference semantics, used to cross-check the index code.

A term is decoded into a tree where every binder carries a unique name and
every bound occurrence points at that name.  Replacement on such trees needs
no index arithmetic at all; encoding back assigns indexes from scratch.
Free ``^`` variables are kept as names relative to the root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from bkernel.terms import (
    MACHINE,
    EBigT,
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
    Var,
)

_ids = itertools.count()


@dataclass(frozen=True)
class Bound:
    n: int


@dataclass(frozen=True)
class NVar:
    name: object  # Bound or a free Var


@dataclass(frozen=True)
class NAll:
    name: Bound
    body: object


@dataclass(frozen=True)
class NCmp:
    dom: object
    name: Bound
    body: object


@dataclass(frozen=True)
class NNode:
    tag: type
    kids: tuple


def decode(t, stack=()):
    """``stack[0]`` names the innermost enclosing binder."""
    if isinstance(t, EVar):
        v = t.v
        if v.ns == MACHINE:
            if v.idx < len(stack):
                return NVar(stack[v.idx])
            return NVar(Var(MACHINE, v.idx - len(stack)))
        return NVar(v)
    if isinstance(t, PAll):
        b = Bound(next(_ids))
        return NAll(b, decode(t.body, (b,) + stack))
    if isinstance(t, ECmp):
        b = Bound(next(_ids))
        return NCmp(decode(t.dom, stack), b, decode(t.body, (b,) + stack))
    if isinstance(t, EBigT):
        return NNode(EBigT, ())
    if isinstance(t, (PAnd, PImp, PEq, EPair, EProd)):
        return NNode(type(t), (decode(t.l, stack), decode(t.r, stack)))
    if isinstance(t, PIn):
        return NNode(PIn, (decode(t.e, stack), decode(t.s, stack)))
    if isinstance(t, PNot):
        return NNode(PNot, (decode(t.p, stack),))
    if isinstance(t, (EChoice, EPow)):
        return NNode(type(t), (decode(t.s, stack),))
    raise TypeError(t)


def encode(n, stack=()):
    if isinstance(n, NVar):
        x = n.name
        if isinstance(x, Bound):
            return EVar(Var(MACHINE, stack.index(x)))
        if x.ns == MACHINE:
            return EVar(Var(MACHINE, x.idx + len(stack)))
        return EVar(x)
    if isinstance(n, NAll):
        return PAll(encode(n.body, (n.name,) + stack))
    if isinstance(n, NCmp):
        return ECmp(encode(n.dom, stack), encode(n.body, (n.name,) + stack))
    if n.tag is EBigT:
        return EBigT()
    return n.tag(*(encode(k, stack) for k in n.kids))


def replace(n, f, stack=()):
    """Rebuild ``n``; ``f(free_name, stack)`` returns a replacement tree or None."""
    if isinstance(n, NVar):
        if isinstance(n.name, Bound):
            return n
        out = f(n.name, stack)
        return n if out is None else out
    if isinstance(n, NAll):
        return NAll(n.name, replace(n.body, f, (n.name,) + stack))
    if isinstance(n, NCmp):
        return NCmp(replace(n.dom, f, stack), n.name, replace(n.body, f, (n.name,) + stack))
    return NNode(n.tag, tuple(replace(k, f, stack) for k in n.kids))


def free_names(n) -> set:
    if isinstance(n, NVar):
        return set() if isinstance(n.name, Bound) else {n.name}
    if isinstance(n, NAll):
        return free_names(n.body)
    if isinstance(n, NCmp):
        return free_names(n.dom) | free_names(n.body)
    out = set()
    for k in n.kids:
        out |= free_names(k)
    return out


# -- reference operations, all at height 0 ------------------------------------


def free_vars(t) -> set:
    return free_names(decode(t))


def subst(v, e, t):
    ne = decode(e)
    return encode(replace(decode(t), lambda x, st: ne if x == v else None))


def graft(v, e, t):
    # e is read in the scope of the occurrence, so binders above it capture
    return encode(replace(decode(t), lambda x, st: decode(e, st) if x == v else None))


def lift0(t):
    def bump(x, st):
        if x.ns == MACHINE:
            return NVar(Var(MACHINE, x.idx + 1))
        return None

    return encode(replace(decode(t), bump))


def forall(v, p):
    """The universal closure of ``p`` over ``v`` (``mk_forall``)."""
    b = Bound(next(_ids))
    body = replace(decode(p), lambda x, st: NVar(b) if x == v else None)
    return encode(NAll(b, body))


def instantiate(body, e):
    """``app(e, 0, body)`` for a binder body."""
    b = Bound(next(_ids))
    nb = decode(body, (b,))
    ne = decode(e)
    return encode(replace_bound(nb, b, ne))


def replace_bound(n, b, r):
    if isinstance(n, NVar):
        return r if n.name == b else n
    if isinstance(n, NAll):
        return NAll(n.name, replace_bound(n.body, b, r))
    if isinstance(n, NCmp):
        return NCmp(replace_bound(n.dom, b, r), n.name, replace_bound(n.body, b, r))
    return NNode(n.tag, tuple(replace_bound(k, b, r) for k in n.kids))
