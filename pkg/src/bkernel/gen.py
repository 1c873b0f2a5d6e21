"""Seeded random term generation for property checks and ``selftest``."""

from __future__ import annotations

import random

from .terms import (
    MACHINE,
    EBig,
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
    Var,
)


class TermGen:
    """Random terms of bounded depth.

    ``namespaces`` are the user namespaces free variables are drawn from.
    With ``dangling`` set, ``^`` leaves may point past every enclosing binder;
    otherwise they are always bound, so the only free variables are user ones.
    """

    def __init__(
        self,
        seed: int = 0,
        max_depth: int = 8,
        namespaces: tuple[str, ...] = ("u", "w"),
        max_idx: int = 3,
        dangling: bool = True,
    ):
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.namespaces = namespaces
        self.max_idx = max_idx
        self.dangling = dangling

    def var(self, binders: int = 0) -> Var:
        rng = self.rng
        if rng.random() < 0.5 and (binders or self.dangling):
            top = binders + self.max_idx if self.dangling else binders - 1
            return Var(MACHINE, rng.randint(0, top))
        return Var(rng.choice(self.namespaces), rng.randint(0, self.max_idx))

    def expr(self, budget: int | None = None, binders: int = 0) -> Expr:
        rng = self.rng
        if budget is None:
            budget = rng.randint(1, self.max_depth)
        if budget <= 1 or rng.random() < 0.15:
            return EBig if rng.random() < 0.15 else EVar(self.var(binders))
        b = budget - 1
        kind = rng.randrange(6 if b >= 2 else 5)
        if kind == 0:
            return EPair(self.expr(b, binders), self.expr(b, binders))
        if kind == 1:
            return EProd(self.expr(b, binders), self.expr(b, binders))
        if kind == 2:
            return EChoice(self.expr(b, binders))
        if kind == 3:
            return EPow(self.expr(b, binders))
        if kind == 4:
            return EVar(self.var(binders))
        return ECmp(self.expr(b, binders), self.pred(b, binders + 1))

    def pred(self, budget: int | None = None, binders: int = 0) -> Pred:
        rng = self.rng
        if budget is None:
            budget = rng.randint(max(2, self.max_depth // 2), self.max_depth)
        b = budget - 1
        if budget <= 2 or rng.random() < 0.1:
            e1, e2 = self.expr(b, binders), self.expr(b, binders)
            return PEq(e1, e2) if rng.random() < 0.5 else PIn(e1, e2)
        kind = rng.randrange(6)
        if kind == 0:
            return PAnd(self.pred(b, binders), self.pred(b, binders))
        if kind == 1:
            return PImp(self.pred(b, binders), self.pred(b, binders))
        if kind == 2:
            return PNot(self.pred(b, binders))
        if kind == 3:
            return PAll(self.pred(b, binders + 1))
        if kind == 4:
            return PEq(self.expr(b, binders), self.expr(b, binders))
        return PIn(self.expr(b, binders), self.expr(b, binders))

    def term(self, budget: int | None = None):
        return self.pred(budget) if self.rng.random() < 0.6 else self.expr(budget)
