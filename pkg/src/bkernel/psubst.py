"""Parallel substitutions: total maps from variables to expressions.

Maps are a closed set of builtin kinds rather than host callables.  They
expose no equality; compare them only by what :func:`papply` does.
"""

from __future__ import annotations

from typing import Mapping

from .binders import _walk, lift
from .terms import MACHINE, EVar, Expr, Term, Var


class ParallelSubst:
    __slots__ = ()

    def image(self, v: Var) -> Expr:
        raise NotImplementedError

    @property
    def support(self) -> list[Var] | None:
        """Variables the map may move (debugging view; never consulted)."""
        return None


class Identity(ParallelSubst):
    __slots__ = ()

    def image(self, v):
        return EVar(v)

    def __repr__(self):
        return "Identity"


class Shift(ParallelSubst):
    __slots__ = ("ns", "d")

    def __init__(self, ns: str, d: int = 0):
        self.ns = ns
        self.d = d

    def image(self, v):
        if v.ns == self.ns and v.idx >= self.d:
            return EVar(Var(v.ns, v.idx + 1))
        return EVar(v)

    def __repr__(self):
        return f"Shift({self.ns},{self.d})"


class Table(ParallelSubst):
    """Finite overrides; every other variable maps to itself."""

    __slots__ = ("overrides",)

    def __init__(self, overrides: Mapping[Var, Expr]):
        self.overrides = dict(overrides)

    def image(self, v):
        e = self.overrides.get(v)
        return EVar(v) if e is None else e

    @property
    def support(self):
        return sorted(self.overrides)

    def __repr__(self):
        return f"Table({self.overrides!r})"


class Single(Table):
    __slots__ = ()

    def __init__(self, v: Var, e: Expr):
        super().__init__({v: e})

    def __repr__(self):
        ((v, e),) = self.overrides.items()
        return f"Single({v!r},{e!r})"


class Compose(ParallelSubst):
    """``outer`` after ``inner``."""

    __slots__ = ("outer", "inner")

    def __init__(self, outer: ParallelSubst, inner: ParallelSubst):
        self.outer = outer
        self.inner = inner

    def image(self, v):
        return papply(self.outer, self.inner.image(v))

    def __repr__(self):
        return f"Compose({self.outer!r},{self.inner!r})"


def compose(outer: ParallelSubst, inner: ParallelSubst) -> ParallelSubst:
    return Compose(outer, inner)


def _lift_n(e: Expr, n: int) -> Expr:
    for _ in range(n):
        e = lift(MACHINE, 0, e)
    return e


def papply(s: ParallelSubst, t: Term) -> Term:
    # Under k binders, ^-indexes below k are bound and left alone; everything
    # else is looked up at its root-relative name and its image lifted k times.
    def leaf(v, k, _):
        if v.ns == MACHINE:
            if v.idx < k:
                return EVar(v)
            return _lift_n(s.image(Var(MACHINE, v.idx - k)), k)
        return _lift_n(s.image(v), k)

    return _walk(t, 0, None, leaf, lambda k, st: (k + 1, st))
