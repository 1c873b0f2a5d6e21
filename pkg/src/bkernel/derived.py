"""Rules derived from the kernel.

Nothing here can forge a theorem: every function composes kernel rules, so a
bug can only make a derivation fail, never make a false statement provable.
"""

from __future__ import annotations

from typing import Callable, Sequence

from . import kernel as K
from .binders import app, free_vars, graft, mk_exists, mk_forall, subst
from .env import EMPTY, ProofEnv, disjoint_n0, env_free_vars
from .errors import (
    EnvMismatch,
    KernelError,
    NotSyntacticallyEqual,
    PatternMismatch,
    ShapeMismatch,
    SideConditionViolated,
)
from .kernel import Theorem
from .terms import (
    MACHINE,
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

FRESH_NS = "fr"


def mk_or(p: Pred, q: Pred) -> Pred:
    return PImp(PNot(p), q)


def mk_iff(p: Pred, q: Pred) -> Pred:
    return PAnd(PImp(p, q), PImp(q, p))


def mk_subset(s: Expr, t: Expr) -> Pred:
    return PIn(s, EPow(t))


class FreshSupply:
    """Hands out distinct variables of one namespace, avoiding a taken set."""

    def __init__(self, ns: str = FRESH_NS, avoid: Sequence[Term] = (), env: ProofEnv = EMPTY):
        self.ns = ns
        taken = env_free_vars(env)
        for t in avoid:
            taken |= free_vars(t)
        self._taken = {v.idx for v in taken if v.ns == ns}
        self._next = 0

    def avoid(self, v: Var) -> None:
        if v.ns == self.ns:
            self._taken.add(v.idx)

    def __call__(self) -> Var:
        while self._next in self._taken:
            self._next += 1
        v = Var(self.ns, self._next)
        self._next += 1
        return v


def _at(t: Theorem, env: ProofEnv) -> Theorem:
    return t if t.env == env else K.weaken(t, env)


def _fresh_for(*terms: Term) -> Var:
    return FreshSupply(avoid=terms)()


# -- propositional lemmas -----------------------------------------------------


def imp_by(env: ProofEnv, a: Pred, f: Callable[[ProofEnv, Theorem], Theorem]) -> Theorem:
    """``env |- a => b`` given ``f(env + {a}, |-a)`` proving ``b`` there."""
    h = env.add(a)
    return _at(K.imp_i(a, _at(f(h, K.ax(h, a)), h)), env)


def imp_refl(env: ProofEnv, p: Pred) -> Theorem:
    return imp_by(env, p, lambda h, tp: tp)


def iff_refl(env: ProofEnv, p: Pred) -> Theorem:
    t = imp_refl(env, p)
    return K.and_i(t, t)


def iff_sym(t: Theorem) -> Theorem:
    return K.and_i(K.and_e2(t), K.and_e1(t))


def iff_mp(t_iff: Theorem, t_p: Theorem) -> Theorem:
    return K.imp_e(K.and_e1(t_iff), t_p)


def imp_trans(t_pq: Theorem, t_qr: Theorem) -> Theorem:
    env = K._same_env(t_pq, t_qr)

    def chain(h, tp):
        return K.imp_e(_at(t_qr, h), K.imp_e(_at(t_pq, h), tp))

    return imp_by(env, t_pq.concl.l, chain)


def iff_trans(t1: Theorem, t2: Theorem) -> Theorem:
    fwd = imp_trans(K.and_e1(t1), K.and_e1(t2))
    bwd = imp_trans(K.and_e2(t2), K.and_e2(t1))
    return K.and_i(fwd, bwd)


def _both_ways(direction, *ts: Theorem) -> Theorem:
    return K.and_i(direction(*ts), direction(*map(iff_sym, ts)))


def _and_dir(t1, t2):
    env = K._same_env(t1, t2)
    lhs = PAnd(t1.concl.l.l, t2.concl.l.l)

    def f(h, th):
        left = iff_mp(_at(t1, h), K.and_e1(th))
        right = iff_mp(_at(t2, h), K.and_e2(th))
        return K.and_i(left, right)

    return imp_by(env, lhs, f)


def iff_and(t1: Theorem, t2: Theorem) -> Theorem:
    """From ``p <=> p'`` and ``q <=> q'`` derive ``p & q <=> p' & q'``."""
    return _both_ways(_and_dir, t1, t2)


def _imp_dir(t1, t2):
    env = K._same_env(t1, t2)
    p, p2 = t1.concl.l.l, t1.concl.l.r
    q = t2.concl.l.l
    back = iff_sym(t1)

    def f(h, th_imp):
        def g(h2, th_p2):
            tp = iff_mp(_at(back, h2), th_p2)
            return iff_mp(_at(t2, h2), K.imp_e(_at(th_imp, h2), tp))

        return imp_by(h, p2, g)

    return imp_by(env, PImp(p, q), f)


def iff_imp(t1: Theorem, t2: Theorem) -> Theorem:
    """From ``p <=> p'`` and ``q <=> q'`` derive ``(p => q) <=> (p' => q')``."""
    return _both_ways(_imp_dir, t1, t2)


def _not_dir(t):
    p, p2 = t.concl.l.l, t.concl.l.r
    back = iff_sym(t)

    def f(h, th_np):
        h2 = h.add(p2)
        tp = iff_mp(_at(back, h2), K.ax(h2, p2))
        return _at(K.not_i(tp, _at(th_np, h2), p2), h)

    return imp_by(t.env, PNot(p), f)


def iff_not(t: Theorem) -> Theorem:
    return _both_ways(_not_dir, t)


def _forall_dir(x: Var, t: Theorem, a1: Pred, a2: Pred) -> Theorem:
    def f(h, th_a1):
        inst = K.forall_e(th_a1, EVar(x))
        out = K.forall_i(x, iff_mp(_at(t, h), inst))
        if out.concl != a2:
            raise KernelError("binder reopening did not restore the quantified body")
        return out

    return imp_by(t.env, a1, f)


def iff_forall(x: Var, t: Theorem, a1: Pred, a2: Pred) -> Theorem:
    """From ``G |- b1[x] <=> b2[x]`` (``x`` fresh) derive ``G |- a1 <=> a2``
    where ``a1``/``a2`` are the universals opened at ``x`` to ``b1``/``b2``."""
    return K.and_i(_forall_dir(x, t, a1, a2), _forall_dir(x, iff_sym(t), a2, a1))


# -- equality lemmas ----------------------------------------------------------


def eq_sym(t: Theorem) -> Theorem:
    if not isinstance(t.concl, PEq):
        raise ShapeMismatch("expected an equality")
    a = t.concl.l
    z = _fresh_for(t.concl)
    return K.eq_leibniz(t, z, PEq(EVar(z), a), K.eq_refl(t.env, a))


def eq_trans(t1: Theorem, t2: Theorem) -> Theorem:
    if not (isinstance(t1.concl, PEq) and isinstance(t2.concl, PEq)):
        raise ShapeMismatch("expected equalities")
    if t1.concl.r != t2.concl.l:
        raise PatternMismatch("middle terms differ")
    z = _fresh_for(t1.concl, t2.concl)
    return K.eq_leibniz(t2, z, PEq(t1.concl.l, EVar(z)), t1)


def _rewrite_holes(start: Theorem, wrap, build, eqs: Sequence[Theorem], supply) -> Theorem:
    # start proves wrap(build(*lefts)); rewrite each argument position in turn.
    args = [t.concl.l for t in eqs]
    out = start
    for i, te in enumerate(eqs):
        a, b = te.concl.l, te.concl.r
        if a == b:
            continue
        z = supply()
        holed = args[:i] + [EVar(z)] + args[i + 1:]
        out = K.eq_leibniz(te, z, wrap(build(*holed)), out)
        args[i] = b
    return out


def congr_expr(env: ProofEnv, build, eqs: Sequence[Theorem], supply=None) -> Theorem:
    """``env |- build(a..) = build(b..)`` from ``env |- a_i = b_i``.

    ``build`` must not place its arguments under a binder.
    """
    lhs = build(*(t.concl.l for t in eqs))
    supply = supply or FreshSupply(avoid=[t.concl for t in eqs])
    return _rewrite_holes(K.eq_refl(env, lhs), lambda r: PEq(lhs, r), build, eqs, supply)


def congr_pred(env: ProofEnv, build, eqs: Sequence[Theorem], supply=None) -> Theorem:
    """``env |- build(a..) <=> build(b..)`` from ``env |- a_i = b_i``."""
    lhs = build(*(t.concl.l for t in eqs))
    supply = supply or FreshSupply(avoid=[t.concl for t in eqs])
    return _rewrite_holes(iff_refl(env, lhs), lambda r: mk_iff(lhs, r), build, eqs, supply)


# -- host/guest bridges -------------------------------------------------------


def and_split(t: Theorem) -> tuple[Theorem, Theorem]:
    return K.and_e1(t), K.and_e2(t)


def forall_inst(t: Theorem, e: Expr) -> Theorem:
    return K.forall_e(t, e)


def or_i_left(t: Theorem, q: Pred) -> Theorem:
    """``G |- p`` gives ``G |- p or q``."""
    p = t.concl

    def f(h, th_np):
        h2 = h.add(PNot(q))
        refuted = K.absurd_i(_at(t, h2), _at(th_np, h2), q)
        return _at(refuted, h)

    return imp_by(t.env, PNot(p), f)


def or_i_right(p: Pred, t: Theorem) -> Theorem:
    """``G |- q`` gives ``G |- p or q``."""
    return imp_by(t.env, PNot(p), lambda h, _: _at(t, h))


def exists_i(v: Var, p: Pred, witness: Expr, t: Theorem) -> Theorem:
    if t.concl != subst(v, witness, 0, p):
        raise PatternMismatch("premise is not the body instantiated at the witness")
    hyp = mk_forall(v, PNot(p))
    h = t.env.add(hyp)
    counter = K.forall_e(K.ax(h, hyp), witness)
    out = _at(K.not_i(_at(t, h), counter, hyp), t.env)
    assert out.concl == mk_exists(v, p)
    return out


def eq_of_syntactic(env: ProofEnv, e1: Expr, e2: Expr) -> Theorem:
    if e1 != e2:
        raise NotSyntacticallyEqual("expressions are not structurally equal")
    return K.eq_refl(env, e1)


def excluded_middle(env: ProofEnv, p: Pred) -> Theorem:
    """``env |- p or not p``, which unfolds to ``not p => not p``."""
    return imp_refl(env, PNot(p))


# -- congruence under binders -------------------------------------------------


class _GraftCongruence:
    """Builds ``G |- graft(v,e1,P) <=> graft(v,e2,P)`` from ``G |- e1 = e2``.

    Every binder on the way down is opened with a fresh variable.  Opening
    also changes what the grafted copies of ``e_i`` look like below it: a
    copy whose ``^`` index pointed at an opened binder now mentions that
    binder's fresh variable.  ``stack`` (innermost first) records those
    variables, so a copy reached after opening is ``e_i`` with ``(^,m)``
    replaced by ``stack[m]`` and ``(^,m)`` re-based past the stack otherwise.
    The matching equality instance comes from the universal closure of the
    premise over its free ``^`` variables.
    """

    def __init__(self, teq: Theorem, v: Var, target: Term):
        self.env = teq.env
        self.v = v
        self.e1, self.e2 = teq.concl.l, teq.concl.r
        self.fresh = FreshSupply(avoid=[teq.concl, target], env=self.env)
        self.fresh.avoid(v)
        self.binders = sorted(w for w in free_vars(teq.concl) if w.ns == MACHINE)
        closure = teq
        names = []
        for w in self.binders:
            y = self.fresh()
            closure = K.forall_e(K.forall_i(w, closure), EVar(y))
            names.append(y)
        for y in reversed(names):
            closure = K.forall_i(y, closure)
        self.closure = closure

    def instance(self, stack: list[Var], a1: Expr, a2: Expr) -> Theorem:
        t = self.closure
        for w in self.binders:
            if w.idx < len(stack):
                img = EVar(stack[w.idx])
            else:
                img = EVar(Var(MACHINE, w.idx - len(stack)))
            t = K.forall_e(t, img)
        if t.concl != PEq(a1, a2):
            raise KernelError("grafted copies do not match the equality instance")
        return t

    def expr(self, q: Expr, a1: Expr, a2: Expr, stack: list[Var]) -> Theorem:
        env = self.env
        if a1 == a2:
            return K.eq_refl(env, a1)
        if isinstance(q, EVar):
            if q.v != self.v:
                raise KernelError("mismatch outside a graft position")
            return self.instance(stack, a1, a2)
        if isinstance(q, (EPair, EProd)):
            ts = [self.expr(q.l, a1.l, a2.l, stack), self.expr(q.r, a1.r, a2.r, stack)]
            return congr_expr(env, type(q), ts, self.fresh)
        if isinstance(q, (EChoice, EPow)):
            ts = [self.expr(q.s, a1.s, a2.s, stack)]
            return congr_expr(env, type(q), ts, self.fresh)
        if isinstance(q, ECmp):
            return self.comprehension(q, a1, a2, stack)
        raise KernelError(f"unexpected expression {q!r}")

    def comprehension(self, q: ECmp, a1: ECmp, a2: ECmp, stack) -> Theorem:
        env = self.env
        body1 = a1.body
        t_dom = self.expr(q.dom, a1.dom, a2.dom, stack)
        step = congr_expr(env, lambda d: ECmp(d, body1), [t_dom], self.fresh)
        if a1.body == a2.body:
            return step
        x = self.fresh()
        ex = EVar(x)
        t_body = self.pred(app(ex, 0, q.body), app(ex, 0, a1.body), app(ex, 0, a2.body), [x] + stack)
        c1, c2 = ECmp(a2.dom, a1.body), a2
        m1 = K.mem_cmp(env, ex, c1)
        m2 = K.mem_cmp(env, ex, c2)
        mid = iff_and(iff_refl(env, PIn(ex, a2.dom)), t_body)
        members = K.forall_i(x, iff_trans(iff_trans(m1, mid), iff_sym(m2)))
        same = K.imp_e(K.set_ext(env, c1, c2, x), members)
        return eq_trans(step, same)

    def pred(self, q: Pred, a1: Pred, a2: Pred, stack: list[Var]) -> Theorem:
        env = self.env
        if a1 == a2:
            return iff_refl(env, a1)
        if isinstance(q, PAnd):
            return iff_and(self.pred(q.l, a1.l, a2.l, stack), self.pred(q.r, a1.r, a2.r, stack))
        if isinstance(q, PImp):
            return iff_imp(self.pred(q.l, a1.l, a2.l, stack), self.pred(q.r, a1.r, a2.r, stack))
        if isinstance(q, PNot):
            return iff_not(self.pred(q.p, a1.p, a2.p, stack))
        if isinstance(q, PEq):
            ts = [self.expr(q.l, a1.l, a2.l, stack), self.expr(q.r, a1.r, a2.r, stack)]
            return congr_pred(env, PEq, ts, self.fresh)
        if isinstance(q, PIn):
            ts = [self.expr(q.e, a1.e, a2.e, stack), self.expr(q.s, a1.s, a2.s, stack)]
            return congr_pred(env, PIn, ts, self.fresh)
        if isinstance(q, PAll):
            x = self.fresh()
            ex = EVar(x)
            t = self.pred(app(ex, 0, q.body), app(ex, 0, a1.body), app(ex, 0, a2.body), [x] + stack)
            return iff_forall(x, t, a1, a2)
        raise KernelError(f"unexpected predicate {q!r}")

    def run(self, target: Term) -> Theorem:
        g1 = graft(self.v, self.e1, 0, target)
        g2 = graft(self.v, self.e2, 0, target)
        if isinstance(target, Pred):
            return self.pred(target, g1, g2, [])
        return self.expr(target, g1, g2, [])


def graft_cong_ns(teq: Theorem, v: Var, target: Term) -> Theorem:
    """``G |- e1 = e2`` with no ``^`` variable shared between ``G`` and the
    equality gives ``G |- graft(v,e1,P) <=> graft(v,e2,P)`` (or ``=`` when the
    target is an expression)."""
    if not isinstance(teq.concl, PEq):
        raise ShapeMismatch("premise is not an equality")
    if not disjoint_n0(teq.env, teq.concl):
        raise SideConditionViolated("environment and equality share a free ^ variable")
    return _GraftCongruence(teq, v, target).run(target)


def graft_cong_closed(teq: Theorem, v: Var, target: Term, env: ProofEnv = EMPTY) -> Theorem:
    """Congruence for an equality proved without hypotheses, stated under ``env``."""
    if not isinstance(teq.concl, PEq):
        raise ShapeMismatch("premise is not an equality")
    if len(teq.env):
        raise EnvMismatch("the equality must be proved in the empty environment")
    return K.weaken(graft_cong_ns(teq, v, target), env)


DERIVED = (
    "and_split", "forall_inst", "or_i_left", "or_i_right", "exists_i",
    "eq_of_syntactic", "excluded_middle", "graft_cong_closed", "graft_cong_ns",
    "eq_sym", "eq_trans", "iff_refl", "iff_sym", "iff_trans", "iff_mp",
)
