"""Line-oriented proof scripts (``.bpf``) and their checker.

A script looks like::

    // comments run to the end of the line
    theorem and_twice
    env: A ; B
    s1: ax "A"
    s2: and_i s1 s1
    qed s2 : "A & A"

Each step is ``LABEL: RULE ARG...`` (or ``L1, L2: RULE ...`` for rules that
yield two theorems).  Arguments are step labels, formulas, expressions or
variables, as the rule's signature dictates; formulas may be quoted.  All
formulas of one script share a symbol table, so a name means the same
variable everywhere.

``ax P`` assumes ``P`` on top of the declared environment.  Rules that take
an environment (``eq_refl``, ``mem_cmp``, ...) use the declared one; use
``weaken`` to add hypotheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import derived as D
from . import kernel as K
from .env import ProofEnv
from .errors import KernelError
from .kernel import Theorem
from .syntax import (
    ParseError,
    SymbolTable,
    parse_expr,
    parse_pred,
    parse_term,
    parse_var,
    print_pred,
)


class ScriptError(Exception):
    def __init__(self, kind: str, message: str, line: int | None = None, label: str | None = None, span=None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.line = line
        self.label = label
        self.span = span


@dataclass
class Step:
    labels: tuple[str, ...]
    rule: str
    args: list[str]
    line: int


@dataclass
class ProofScript:
    name: str
    env_decl: list[str]
    steps: list[Step]
    goal: tuple[str, str]
    goal_line: int = 0
    env_line: int = 0


@dataclass
class CheckReport:
    path: str
    status: str
    theorem: str | None = None
    steps: int = 0
    failing_step: str | None = None
    line: int | None = None
    error_kind: str | None = None
    message: str | None = None
    span: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def render(self) -> str:
        if self.ok:
            return f"{self.path}: ok ({self.theorem}, {self.steps} steps)"
        where = []
        if self.failing_step:
            where.append(f"step {self.failing_step}")
        if self.line:
            where.append(f"line {self.line}")
        if self.span:
            where.append(f"offset {self.span[0]}..{self.span[1]}")
        loc = f" [{', '.join(where)}]" if where else ""
        return f"{self.path}: FAIL{loc} {self.error_kind}: {self.message}"


# -- script grammar -----------------------------------------------------------

_ARG = re.compile(r'"([^"]*)"|(\S+)')
_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _strip_comment(line: str) -> str:
    out, quoted = [], False
    i = 0
    while i < len(line):
        c = line[i]
        if c == '"':
            quoted = not quoted
        elif not quoted and line.startswith("//", i):
            break
        out.append(c)
        i += 1
    return "".join(out).strip()


def _unquote(text: str) -> str:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] == '"':
        return text[1:-1]
    return text


def load_script(text: str) -> ProofScript:
    name = None
    env_decl: list[str] | None = None
    env_line = 0
    steps: list[Step] = []
    goal = None
    goal_line = 0
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if goal is not None:
            raise ScriptError("ScriptSyntaxError", "content after qed", n)
        if line.startswith("theorem"):
            parts = line.split()
            if len(parts) != 2 or not _LABEL.match(parts[1]):
                raise ScriptError("ScriptSyntaxError", "expected 'theorem NAME'", n)
            if name is not None:
                raise ScriptError("ScriptSyntaxError", "one theorem per script", n)
            name = parts[1]
            continue
        if name is None:
            raise ScriptError("ScriptSyntaxError", "script must start with 'theorem NAME'", n)
        if line.startswith("env:"):
            if env_decl is not None or steps:
                raise ScriptError("ScriptSyntaxError", "env must be declared once, before the steps", n)
            body = line[4:].strip()
            env_decl = [_unquote(p) for p in body.split(";") if p.strip()]
            env_line = n
            continue
        if line.startswith("qed"):
            m = re.match(r"qed\s+(\S+)\s*:\s*(.+)\Z", line)
            if not m:
                raise ScriptError("ScriptSyntaxError", "expected 'qed LABEL : GOAL'", n)
            goal = (m.group(1), _unquote(m.group(2)))
            goal_line = n
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ScriptError("ScriptSyntaxError", "expected 'LABEL: RULE ARG...'", n)
        labels = tuple(s.strip() for s in head.split(","))
        if not all(_LABEL.match(s) for s in labels):
            raise ScriptError("ScriptSyntaxError", f"bad step label {head.strip()!r}", n)
        words = [m.group(1) if m.group(1) is not None else m.group(2) for m in _ARG.finditer(rest)]
        if not words:
            raise ScriptError("ScriptSyntaxError", "missing rule name", n)
        steps.append(Step(labels, words[0], words[1:], n))
    if name is None:
        raise ScriptError("ScriptSyntaxError", "no theorem declared")
    if goal is None:
        raise ScriptError("ScriptSyntaxError", "missing qed line")
    return ProofScript(name, env_decl or [], steps, goal, goal_line, env_line)


# -- rule registry ------------------------------------------------------------


@dataclass
class _Ctx:
    env: ProofEnv
    table: SymbolTable
    thms: dict[str, Theorem] = field(default_factory=dict)


def _rules():
    # kinds: L label, P predicate, E expression, V variable, T term, P* predicates
    return {
        "ax": ("P", lambda c, p: K.ax(c.env.add(p), p)),
        "weaken": ("L P*", lambda c, t, *ps: K.weaken(t, t.env.add(*ps))),
        "and_i": ("L L", lambda c, a, b: K.and_i(a, b)),
        "and_e1": ("L", lambda c, t: K.and_e1(t)),
        "and_e2": ("L", lambda c, t: K.and_e2(t)),
        "imp_i": ("P L", lambda c, p, t: K.imp_i(p, t)),
        "imp_e": ("L L", lambda c, a, b: K.imp_e(a, b)),
        "not_i": ("L L P", lambda c, a, b, p: K.not_i(a, b, p)),
        "absurd_i": ("L L P", lambda c, a, b, p: K.absurd_i(a, b, p)),
        "forall_i": ("V L", lambda c, v, t: K.forall_i(v, t)),
        "forall_e": ("L E", lambda c, t, e: K.forall_e(t, e)),
        "eq_refl": ("E", lambda c, e: K.eq_refl(c.env, e)),
        "eq_leibniz": ("L V P L", lambda c, teq, v, p, tp: K.eq_leibniz(teq, v, p, tp)),
        "mem_cmp": ("E E", lambda c, e, s: K.mem_cmp(c.env, e, s)),
        "mem_pow": ("E E V", lambda c, s, t, v: K.mem_pow(c.env, s, t, v)),
        "set_ext": ("E E V", lambda c, s, t, v: K.set_ext(c.env, s, t, v)),
        "choice_i": ("L", lambda c, t: K.choice_i(t)),
        "pair_eq_e": ("L", lambda c, t: K.pair_eq_e(t)),
        "prod_mem": ("E E E V V", lambda c, e, e1, e2, v1, v2: K.prod_mem(c.env, e, e1, e2, v1, v2)),
        "and_split": ("L", lambda c, t: D.and_split(t)),
        "forall_inst": ("L E", lambda c, t, e: D.forall_inst(t, e)),
        "or_i_left": ("L P", lambda c, t, q: D.or_i_left(t, q)),
        "or_i_right": ("P L", lambda c, p, t: D.or_i_right(p, t)),
        "exists_i": ("V P E L", lambda c, v, p, w, t: D.exists_i(v, p, w, t)),
        "eq_of_syntactic": ("E E", lambda c, a, b: D.eq_of_syntactic(c.env, a, b)),
        "excluded_middle": ("P", lambda c, p: D.excluded_middle(c.env, p)),
        "eq_sym": ("L", lambda c, t: D.eq_sym(t)),
        "eq_trans": ("L L", lambda c, a, b: D.eq_trans(a, b)),
        "iff_refl": ("P", lambda c, p: D.iff_refl(c.env, p)),
        "iff_sym": ("L", lambda c, t: D.iff_sym(t)),
        "iff_trans": ("L L", lambda c, a, b: D.iff_trans(a, b)),
        "iff_mp": ("L L", lambda c, a, b: D.iff_mp(a, b)),
        "graft_cong_closed": ("L V T", lambda c, t, v, x: D.graft_cong_closed(t, v, x, c.env)),
        "graft_cong_ns": ("L V T", lambda c, t, v, x: D.graft_cong_ns(t, v, x)),
    }


RULES = _rules()


def _arg(ctx: _Ctx, kind: str, text: str, step: Step):
    if kind == "L":
        if text not in ctx.thms:
            raise ScriptError("ScriptSyntaxError", f"unknown label {text!r}", step.line, step.labels[0])
        return ctx.thms[text]
    try:
        if kind == "P":
            return parse_pred(text, ctx.table)[0]
        if kind == "E":
            return parse_expr(text, ctx.table)[0]
        if kind == "V":
            return parse_var(text, ctx.table)
        return parse_term(text, ctx.table)[0]
    except ParseError as exc:
        raise ScriptError(exc.kind, f"in {text!r}: {exc.message}", step.line, step.labels[0],
                          (exc.span.start, exc.span.end)) from None


def _run_step(ctx: _Ctx, step: Step):
    if step.rule not in RULES:
        raise ScriptError("ScriptSyntaxError", f"unknown rule {step.rule!r}", step.line, step.labels[0])
    sig, fn = RULES[step.rule]
    kinds = sig.split()
    variadic = kinds[-1].endswith("*")
    fixed = kinds[:-1] if variadic else kinds
    if len(step.args) < len(fixed) or (not variadic and len(step.args) != len(fixed)):
        raise ScriptError("ScriptSyntaxError", f"{step.rule} expects arguments {sig}", step.line, step.labels[0])
    values = [_arg(ctx, k, a, step) for k, a in zip(fixed, step.args)]
    if variadic:
        values += [_arg(ctx, kinds[-1][:-1], a, step) for a in step.args[len(fixed):]]
    try:
        out = fn(ctx, *values)
    except KernelError as exc:
        raise ScriptError("StepError", f"{exc.kind}: {exc.message}", step.line, step.labels[0]) from None
    outs = out if isinstance(out, tuple) else (out,)
    if len(outs) != len(step.labels):
        raise ScriptError("ScriptSyntaxError", f"{step.rule} yields {len(outs)} theorem(s)", step.line, step.labels[0])
    for label, t in zip(step.labels, outs):
        if label in ctx.thms:
            raise ScriptError("ScriptSyntaxError", f"duplicate label {label!r}", step.line, label)
        ctx.thms[label] = t


def replay(script: ProofScript) -> Theorem:
    """Check every step and the goal; return the final theorem."""
    ctx = _Ctx(ProofEnv(), SymbolTable())
    env = []
    for text in script.env_decl:
        try:
            env.append(parse_pred(text, ctx.table)[0])
        except ParseError as exc:
            raise ScriptError(exc.kind, f"in {text!r}: {exc.message}", script.env_line,
                              span=(exc.span.start, exc.span.end)) from None
    ctx.env = ProofEnv(env)
    for step in script.steps:
        _run_step(ctx, step)
    label, goal_text = script.goal
    if label not in ctx.thms:
        raise ScriptError("ScriptSyntaxError", f"unknown label {label!r}", script.goal_line, label)
    try:
        goal = parse_pred(goal_text, ctx.table)[0]
    except ParseError as exc:
        raise ScriptError(exc.kind, f"in goal: {exc.message}", script.goal_line, label,
                          (exc.span.start, exc.span.end)) from None
    thm = ctx.thms[label]
    names = ctx.table.names()
    if thm.concl != goal:
        raise ScriptError("GoalMismatch", f"proved {print_pred(thm.concl, names)!r}, goal is {print_pred(goal, names)!r}",
                          script.goal_line, label)
    if thm.env != ctx.env:
        raise ScriptError("GoalMismatch", "theorem environment differs from the declared one",
                          script.goal_line, label)
    return thm


def check_text(text: str, path: str = "<string>") -> CheckReport:
    name = None
    try:
        script = load_script(text)
        name = script.name
        replay(script)
    except ScriptError as exc:
        return CheckReport(path, "fail", name, failing_step=exc.label, line=exc.line,
                           error_kind=exc.kind, message=exc.message, span=exc.span)
    return CheckReport(path, "ok", name, steps=len(script.steps))


def check_script(path) -> CheckReport:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return CheckReport(str(path), "fail", error_kind="IOError", message=str(exc))
    return check_text(text, str(path))
