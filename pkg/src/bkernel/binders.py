"""Context-aware de Bruijn toolbox.

Every operation threads the height ``d``: the number of ``^`` binders crossed
since the public entry point, where ``d`` is 0.  Crossing a binder means
entering ``PAll.body`` or ``ECmp.body``; ``ECmp.dom`` stays at the outer
height.
"""

from __future__ import annotations

from typing import Callable, TypeVar

from .errors import NotAComprehension, NotAForall, NotFresh
from .terms import (
    MACHINE,
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
    children,
    mvar,
)

T = TypeVar("T", Pred, Expr)


def _walk(t, d: int, st, leaf: Callable, enter: Callable):
    """Rebuild ``t``; ``leaf(var, d, st)`` replaces variables and
    ``enter(d, st)`` gives the height and state used under a binder."""
    if isinstance(t, EVar):
        return leaf(t.v, d, st)
    if isinstance(t, EBigT):
        return t
    if isinstance(t, EPair):
        return EPair(_walk(t.l, d, st, leaf, enter), _walk(t.r, d, st, leaf, enter))
    if isinstance(t, EProd):
        return EProd(_walk(t.l, d, st, leaf, enter), _walk(t.r, d, st, leaf, enter))
    if isinstance(t, EChoice):
        return EChoice(_walk(t.s, d, st, leaf, enter))
    if isinstance(t, EPow):
        return EPow(_walk(t.s, d, st, leaf, enter))
    if isinstance(t, ECmp):
        d2, st2 = enter(d, st)
        return ECmp(_walk(t.dom, d, st, leaf, enter), _walk(t.body, d2, st2, leaf, enter))
    if isinstance(t, PAll):
        d2, st2 = enter(d, st)
        return PAll(_walk(t.body, d2, st2, leaf, enter))
    if isinstance(t, PAnd):
        return PAnd(_walk(t.l, d, st, leaf, enter), _walk(t.r, d, st, leaf, enter))
    if isinstance(t, PImp):
        return PImp(_walk(t.l, d, st, leaf, enter), _walk(t.r, d, st, leaf, enter))
    if isinstance(t, PNot):
        return PNot(_walk(t.p, d, st, leaf, enter))
    if isinstance(t, PEq):
        return PEq(_walk(t.l, d, st, leaf, enter), _walk(t.r, d, st, leaf, enter))
    if isinstance(t, PIn):
        return PIn(_walk(t.e, d, st, leaf, enter), _walk(t.s, d, st, leaf, enter))
    raise TypeError(f"not a term: {t!r}")


def lift_var(d: int, v: Var) -> Var:
    """``↑_d`` on a variable probe: only dangling ``^`` indexes move."""
    if v.ns == MACHINE and v.idx >= d:
        return Var(MACHINE, v.idx + 1)
    return v


def lift(ns: str, d: int, t: T) -> T:
    def leaf(v, d, _):
        if v.ns == ns and v.idx >= d:
            return EVar(Var(ns, v.idx + 1))
        return EVar(v)

    if ns == MACHINE:
        return _walk(t, d, None, leaf, lambda d, st: (d + 1, st))
    return _walk(t, d, None, leaf, lambda d, st: (d, st))


def free(v: Var, d: int, t: Term) -> bool:
    if isinstance(t, EVar):
        return t.v == v
    if isinstance(t, EBigT):
        return False
    if isinstance(t, PAll):
        return free(lift_var(d, v), d + 1, t.body)
    if isinstance(t, ECmp):
        return free(v, d, t.dom) or free(lift_var(d, v), d + 1, t.body)
    if isinstance(t, (EPair, EProd, PAnd, PImp, PEq)):
        return free(v, d, t.l) or free(v, d, t.r)
    if isinstance(t, (EChoice, EPow)):
        return free(v, d, t.s)
    if isinstance(t, PNot):
        return free(v, d, t.p)
    if isinstance(t, PIn):
        return free(v, d, t.e) or free(v, d, t.s)
    raise TypeError(f"not a term: {t!r}")


def free_vars(t: Term) -> set[Var]:
    """All variables free in ``t`` at height 0, with ``^`` indexes re-based
    to the root (a leaf ``(^,k)`` under ``d`` binders is free iff ``k >= d``)."""
    out: set[Var] = set()

    def go(t, d):
        if isinstance(t, EVar):
            v = t.v
            if v.ns != MACHINE:
                out.add(v)
            elif v.idx >= d:
                out.add(Var(MACHINE, v.idx - d))
        elif isinstance(t, PAll):
            go(t.body, d + 1)
        elif isinstance(t, ECmp):
            go(t.dom, d)
            go(t.body, d + 1)
        else:
            for k in children(t):
                go(k, d)

    go(t, 0)
    return out


def abstract(v: Var, d: int, t: T) -> T:
    def leaf(w, d, v):
        if w == v:
            return EVar(mvar(d))
        return EVar(lift_var(d, w))

    return _walk(t, d, v, leaf, lambda d, v: (d + 1, lift_var(d, v)))


def app(e: Expr, d: int, body: T) -> T:
    def leaf(w, d, e):
        if w.ns != MACHINE:
            return EVar(w)
        if w.idx > d:
            return EVar(mvar(w.idx - 1))
        if w.idx == d:
            return e
        return EVar(w)

    return _walk(body, d, e, leaf, lambda d, e: (d + 1, lift(MACHINE, d, e)))


def subst(v: Var, e: Expr, d: int, t: T) -> T:
    def leaf(w, d, st):
        return st[1] if w == st[0] else EVar(w)

    def enter(d, st):
        return d + 1, (lift_var(d, st[0]), lift(MACHINE, d, st[1]))

    return _walk(t, d, (v, e), leaf, enter)


def graft(v: Var, e: Expr, d: int, t: T) -> T:
    """Like :func:`subst` but ``e`` is never lifted, so binders may capture it."""

    def leaf(w, d, v):
        return e if w == v else EVar(w)

    return _walk(t, d, v, leaf, lambda d, v: (d + 1, lift_var(d, v)))


def rename_free(v: Var, v2: Var, t: T) -> T:
    return subst(v, EVar(v2), 0, t)


def mk_forall(v: Var, p: Pred) -> Pred:
    return PAll(abstract(v, 0, p))


def mk_exists(v: Var, p: Pred) -> Pred:
    return PNot(mk_forall(v, PNot(p)))


def mk_cmp(v: Var, dom: Expr, p: Pred) -> Expr:
    return ECmp(dom, abstract(v, 0, p))


def apply_forall(t: Pred, e: Expr) -> Pred:
    if not isinstance(t, PAll):
        raise NotAForall(f"expected a universal, got {type(t).__name__}")
    return app(e, 0, t.body)


def apply_cmp(t: Expr, e: Expr) -> Pred:
    if not isinstance(t, ECmp):
        raise NotAComprehension(f"expected a comprehension, got {type(t).__name__}")
    return PAnd(PIn(e, t.dom), app(e, 0, t.body))


def open_binder(t: Pred, v: Var) -> Pred:
    if not isinstance(t, PAll):
        raise NotAForall(f"expected a universal, got {type(t).__name__}")
    if free(v, 0, t):
        raise NotFresh(f"{v!r} occurs free in the binder")
    return apply_forall(t, EVar(v))
