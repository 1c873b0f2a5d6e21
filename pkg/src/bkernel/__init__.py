"""A small LCF-style kernel for the B logic over namespaced de Bruijn terms."""

from .terms import (
    MACHINE,
    USER,
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
    Term,
    Var,
    depth,
    ev,
    mvar,
    term_eq,
)
from .binders import (
    abstract,
    app,
    apply_cmp,
    apply_forall,
    free,
    free_vars,
    graft,
    lift,
    mk_cmp,
    mk_exists,
    mk_forall,
    open_binder,
    rename_free,
    subst,
)
from .env import ProofEnv, Sequent, disjoint_n0, env_free, fresh
from .kernel import Theorem, thm_concl, thm_env
from .syntax import parse_expr, parse_pred, print_expr, print_pred

__version__ = "0.1.0"

__all__ = [
    "MACHINE",
    "USER",
    "EBig",
    "EChoice",
    "ECmp",
    "EPair",
    "EPow",
    "EProd",
    "EVar",
    "Expr",
    "PAll",
    "PAnd",
    "PEq",
    "PImp",
    "PIn",
    "PNot",
    "Pred",
    "Term",
    "Var",
    "depth",
    "ev",
    "mvar",
    "term_eq",
    "abstract",
    "app",
    "apply_cmp",
    "apply_forall",
    "free",
    "free_vars",
    "graft",
    "lift",
    "mk_cmp",
    "mk_exists",
    "mk_forall",
    "open_binder",
    "rename_free",
    "subst",
    "ProofEnv",
    "Sequent",
    "disjoint_n0",
    "env_free",
    "fresh",
    "Theorem",
    "thm_concl",
    "thm_env",
    "parse_expr",
    "parse_pred",
    "print_expr",
    "print_pred",
]
