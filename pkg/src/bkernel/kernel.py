"""The trusted core.

:class:`Theorem` values can only be produced by the rule functions of this
module.  A theorem records its environment and conclusion, nothing more; the
derivation itself is not stored.

``p <=> q`` is never primitive: rules that state an equivalence produce
``PAnd(PImp(p, q), PImp(q, p))``.
"""

from __future__ import annotations

from .binders import app, apply_cmp, apply_forall, free, lift, mk_exists, mk_forall, subst
from .env import ProofEnv, env_free
from .errors import (
    EnvMismatch,
    NotAComprehension,
    NotAForall,
    NotFresh,
    NotInEnv,
    PatternMismatch,
    SameVariable,
    ShapeMismatch,
)
from .terms import (
    MACHINE,
    EBig,
    EPair,
    EPow,
    EProd,
    EChoice,
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

_KEY = object()


class Theorem:
    __slots__ = ("_env", "_concl")

    def __init__(self, env, concl, *, _key=None):
        if _key is not _KEY:
            raise TypeError("theorems are only built by kernel rules")
        object.__setattr__(self, "_env", env)
        object.__setattr__(self, "_concl", concl)

    def __setattr__(self, name, value):
        raise AttributeError("Theorem is immutable")

    def __reduce__(self):
        raise TypeError("theorems cannot be serialized")

    @property
    def env(self) -> ProofEnv:
        return self._env

    @property
    def concl(self) -> Pred:
        return self._concl

    def __repr__(self):
        return f"Theorem({self._env!r} |- {self._concl!r})"


def _thm(env: ProofEnv, concl: Pred) -> Theorem:
    return Theorem(env, concl, _key=_KEY)


def thm_env(t: Theorem) -> ProofEnv:
    return t.env


def thm_concl(t: Theorem) -> Pred:
    return t.concl


def _iff(p: Pred, q: Pred) -> Pred:
    return PAnd(PImp(p, q), PImp(q, p))


def _same_env(*ts: Theorem) -> ProofEnv:
    env = ts[0].env
    for t in ts[1:]:
        if t.env != env:
            raise EnvMismatch("premises are proved under different environments")
    return env


def _user_fresh(v: Var, *terms) -> None:
    if v.ns == MACHINE:
        raise NotFresh(f"{v!r} lies in the machinery namespace")
    for t in terms:
        if free(v, 0, t):
            raise NotFresh(f"{v!r} occurs free in the instance")


# -- structural rules ---------------------------------------------------------


def ax(env: ProofEnv, p: Pred) -> Theorem:
    if not env.member(p):
        raise NotInEnv("hypothesis is not in the environment")
    return _thm(env, p)


def weaken(t: Theorem, env: ProofEnv) -> Theorem:
    """Monotonicity: a theorem stays valid under a larger environment."""
    if not t.env <= env:
        raise EnvMismatch("target environment does not contain the premise environment")
    return _thm(env, t.concl)


# -- propositional rules ------------------------------------------------------


def and_i(t1: Theorem, t2: Theorem) -> Theorem:
    env = _same_env(t1, t2)
    return _thm(env, PAnd(t1.concl, t2.concl))


def and_e1(t: Theorem) -> Theorem:
    if not isinstance(t.concl, PAnd):
        raise ShapeMismatch("expected a conjunction")
    return _thm(t.env, t.concl.l)


def and_e2(t: Theorem) -> Theorem:
    if not isinstance(t.concl, PAnd):
        raise ShapeMismatch("expected a conjunction")
    return _thm(t.env, t.concl.r)


def imp_i(p: Pred, t: Theorem) -> Theorem:
    if not t.env.member(p):
        raise NotInEnv("discharged hypothesis is not in the environment")
    return _thm(t.env.remove(p), PImp(p, t.concl))


def imp_e(t1: Theorem, t2: Theorem) -> Theorem:
    c = t1.concl
    if not isinstance(c, PImp):
        raise ShapeMismatch("major premise is not an implication")
    if c.l != t2.concl:
        raise ShapeMismatch("minor premise does not match the antecedent")
    env = _same_env(t1, t2)
    return _thm(env, c.r)


def _refutation(tq: Theorem, tnq: Theorem, hyp: Pred) -> ProofEnv:
    env = _same_env(tq, tnq)
    if tnq.concl != PNot(tq.concl):
        raise ShapeMismatch("second premise must be the negation of the first")
    if not env.member(hyp):
        raise NotInEnv("discharged hypothesis is not in the environment")
    return env.remove(hyp)


def not_i(tq: Theorem, tnq: Theorem, p: Pred) -> Theorem:
    """From ``G, p |- q`` and ``G, p |- not q`` conclude ``G |- not p``."""
    return _thm(_refutation(tq, tnq, p), PNot(p))


def absurd_i(tq: Theorem, tnq: Theorem, p: Pred) -> Theorem:
    """From ``G, not p |- q`` and ``G, not p |- not q`` conclude ``G |- p``."""
    return _thm(_refutation(tq, tnq, PNot(p)), p)


# -- quantifier rules ---------------------------------------------------------


def forall_i(v: Var, t: Theorem) -> Theorem:
    if env_free(v, t.env):
        raise NotFresh(f"{v!r} occurs free in the environment")
    return _thm(t.env, mk_forall(v, t.concl))


def forall_e(t: Theorem, e: Expr) -> Theorem:
    try:
        return _thm(t.env, apply_forall(t.concl, e))
    except NotAForall as exc:
        raise ShapeMismatch(str(exc)) from None


# -- equality -----------------------------------------------------------------


def eq_refl(env: ProofEnv, e: Expr) -> Theorem:
    return _thm(env, PEq(e, e))


def eq_leibniz(teq: Theorem, v: Var, p: Pred, tp: Theorem) -> Theorem:
    """From ``G |- e = f`` and ``G |- [v:=e]p`` conclude ``G |- [v:=f]p``."""
    if not isinstance(teq.concl, PEq):
        raise ShapeMismatch("first premise is not an equality")
    env = _same_env(teq, tp)
    e, f = teq.concl.l, teq.concl.r
    if tp.concl != subst(v, e, 0, p):
        raise PatternMismatch("second premise is not the pattern instantiated at the left side")
    return _thm(env, subst(v, f, 0, p))


# -- set axioms ---------------------------------------------------------------


def mem_cmp(env: ProofEnv, e: Expr, c: Expr) -> Theorem:
    try:
        rhs = apply_cmp(c, e)
    except NotAComprehension as exc:
        raise ShapeMismatch(str(exc)) from None
    return _thm(env, _iff(PIn(e, c), rhs))


def mem_pow(env: ProofEnv, s: Expr, t: Expr, v: Var) -> Theorem:
    _user_fresh(v, s, t)
    x = EVar(v)
    return _thm(env, _iff(PIn(s, EPow(t)), mk_forall(v, PImp(PIn(x, s), PIn(x, t)))))


def set_ext(env: ProofEnv, s: Expr, t: Expr, v: Var) -> Theorem:
    """Extensionality: ``G |- (!v.(v : s <=> v : t)) => s = t``."""
    _user_fresh(v, s, t)
    x = EVar(v)
    return _thm(env, PImp(mk_forall(v, _iff(PIn(x, s), PIn(x, t))), PEq(s, t)))


def choice_i(t: Theorem) -> Theorem:
    """From ``G |- #x.(x : s)`` (``x`` not free in ``s``) conclude ``G |- CHOICE(s) : s``."""
    c = t.concl
    if not (
        isinstance(c, PNot)
        and isinstance(c.p, PAll)
        and isinstance(c.p.body, PNot)
        and isinstance(c.p.body.p, PIn)
        and c.p.body.p.e == EVar(Var(MACHINE, 0))
    ):
        raise ShapeMismatch("expected an existential of the form #x.(x : S)")
    inner = c.p.body.p.s
    # The set must not mention the bound variable; recover it by dropping one level.
    s = app(EBig, 0, inner)
    if lift(MACHINE, 0, s) != inner:
        raise ShapeMismatch("the set mentions the bound variable")
    return _thm(t.env, PIn(EChoice(s), s))


def pair_eq_e(t: Theorem) -> tuple[Theorem, Theorem]:
    c = t.concl
    if not (isinstance(c, PEq) and isinstance(c.l, EPair) and isinstance(c.r, EPair)):
        raise ShapeMismatch("expected an equality between two pairs")
    return _thm(t.env, PEq(c.l.l, c.r.l)), _thm(t.env, PEq(c.l.r, c.r.r))


def prod_mem(env: ProofEnv, e: Expr, e1: Expr, e2: Expr, v1: Var, v2: Var) -> Theorem:
    """``G |- #v1.(v1 : e1 & #v2.(v2 : e2 & e = v1 |-> v2)) <=> e : e1 * e2``."""
    if v1 == v2:
        raise SameVariable("the two witnesses must be distinct variables")
    member = PIn(e, EProd(e1, e2))
    _user_fresh(v1, member)
    _user_fresh(v2, member)
    x1, x2 = EVar(v1), EVar(v2)
    inner = mk_exists(v2, PAnd(PIn(x2, e2), PEq(e, EPair(x1, x2))))
    lhs = mk_exists(v1, PAnd(PIn(x1, e1), inner))
    return _thm(env, _iff(lhs, member))


RULES = (
    "ax", "weaken", "and_i", "and_e1", "and_e2", "imp_i", "imp_e", "not_i",
    "absurd_i", "forall_i", "forall_e", "eq_refl", "eq_leibniz", "mem_cmp",
    "mem_pow", "set_ext", "choice_i", "pair_eq_e", "prod_mem",
)
