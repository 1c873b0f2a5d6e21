"""Command line front end: ``bkernel check|parse|print|free|subst|graft|selftest``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import kernel as K
from .binders import abstract, app, free, free_vars, graft, lift, mk_forall, subst
from .derived import excluded_middle as _excluded_middle, graft_cong_closed, mk_iff, mk_or
from .env import EMPTY
from .gen import TermGen
from .psubst import Shift, Single, papply
from .script import RULES, ScriptError, check_script, load_script
from .syntax import (
    ParseError,
    SymbolTable,
    parse_expr,
    parse_pred,
    parse_term,
    parse_var,
    print_pred,
    print_term,
)
from .terms import MACHINE, EVar, PAll, PEq, PNot, Pred, Var


def cmd_check(args) -> int:
    ok = True
    for path in args.files:
        report = check_script(path)
        print(report.render())
        ok &= report.ok
    return 0 if ok else 1


def cmd_parse(args) -> int:
    table = SymbolTable()
    t = (parse_pred if args.pred else parse_expr)(args.text, table)[0]
    print(repr(t))
    print(f"table: {table!r}")
    return 0


def _format_arg(kind: str, text: str, table: SymbolTable) -> str:
    if kind in ("P", "P*"):
        return f'"{print_pred(parse_pred(text, table)[0], table.names())}"'
    if kind == "E":
        return f'"{print_term(parse_expr(text, table)[0], table.names())}"'
    if kind == "T":
        return f'"{print_term(parse_term(text, table)[0], table.names())}"'
    if kind == "V":
        v = parse_var(text, table)
        return table.names()[v]
    return text


def format_script(text: str) -> str:
    """Canonical rendering of a script; every formula is re-printed."""
    script = load_script(text)
    table = SymbolTable()
    names = lambda: table.names()  # noqa: E731
    env = [print_pred(parse_pred(p, table)[0], names()) for p in script.env_decl]
    out = [f"theorem {script.name}"]
    if env:
        out.append("env: " + " ; ".join(env))
    for step in script.steps:
        kinds = RULES[step.rule][0].split() if step.rule in RULES else []
        if kinds and kinds[-1].endswith("*"):
            kinds = kinds[:-1] + [kinds[-1]] * (len(step.args) - len(kinds) + 1)
        args = [_format_arg(k, a, table) for k, a in zip(kinds, step.args)] + step.args[len(kinds):]
        out.append(f"{', '.join(step.labels)}: {' '.join([step.rule, *args])}")
    label, goal = script.goal
    out.append(f'qed {label} : "{print_pred(parse_pred(goal, table)[0], names())}"')
    return "\n".join(out) + "\n"


def cmd_print(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    sys.stdout.write(format_script(text))
    return 0


def _var_and_text(args):
    table = SymbolTable()
    t = parse_term(args.text, table)[0]
    v = parse_var(args.var, table)
    return t, v, table


def cmd_free(args) -> int:
    t, v, _ = _var_and_text(args)
    print("true" if free(v, 0, t) else "false")
    return 0


def _replace(op, args) -> int:
    t, v, table = _var_and_text(args)
    e = parse_expr(args.expr, table, allow_machine=True)[0]
    out = op(v, e, 0, t)
    print(repr(out))
    print(print_term(out, table.names()))
    return 0


def cmd_subst(args) -> int:
    return _replace(subst, args)


def cmd_graft(args) -> int:
    return _replace(graft, args)


def run_selftest(count: int = 300, seed: int = 0, out=None) -> bool:
    out = out or sys.stdout

    gen = TermGen(seed, max_depth=8)
    closed = TermGen(seed + 1, max_depth=8, namespaces=("u",), dangling=False)
    v0 = Var("u", 0)

    def vars_():
        return gen.var(0) if gen.rng.random() < 0.7 else Var("u", gen.rng.randint(0, 3))

    def subst_is_app_abstr():
        t, v, e, d = gen.term(), vars_(), gen.expr(3), gen.rng.randint(0, 2)
        return subst(v, e, d, t) == app(e, d, abstract(v, d, t))

    def app_inverts_abstr():
        t, v, d = gen.term(), vars_(), gen.rng.randint(0, 2)
        return app(EVar(v), d, abstract(v, d, t)) == t

    def abstr_inverts_app():
        body, v, d = gen.pred(), vars_(), gen.rng.randint(0, 2)
        if free(v, d, PAll(body)):
            return True
        return abstract(v, d, app(EVar(v), d, body)) == body

    def lift_compose():
        t, n = gen.term(), gen.rng.randint(1, 5)
        a = b = t
        for i in range(n):
            a, b = lift(MACHINE, 0, a), lift(MACHINE, i, b)
        return a == b

    def fresh_after_abstr():
        p = gen.pred()
        v = Var(gen.rng.choice(gen.namespaces), gen.rng.randint(0, 3))
        return not free(v, 0, mk_forall(v, p))

    def shift_is_lift():
        t = gen.term()
        return papply(Shift(MACHINE, 0), t) == lift(MACHINE, 0, t)

    def single_is_subst():
        t, v, e = gen.term(), vars_(), gen.expr(3)
        return papply(Single(v, e), t) == subst(v, e, 0, t)

    def round_trip():
        t = closed.term()
        table = SymbolTable.canonical(sorted(free_vars(t)))
        back = (parse_pred if isinstance(t, Pred) else parse_expr)(print_term(t), table)[0]
        return back == t

    def excluded_middle():
        p = gen.pred()
        return _excluded_middle(EMPTY, p).concl == mk_or(p, PNot(p))

    def graft_congruence():
        e = closed.expr(3)
        t = closed.term()
        r = graft_cong_closed(K.eq_refl(EMPTY, e), v0, t)
        g = graft(v0, e, 0, t)
        return r.concl == (mk_iff(g, g) if isinstance(t, Pred) else PEq(g, g))

    checks = [
        ("subst = app . abstract", subst_is_app_abstr),
        ("app inverts abstract", app_inverts_abstr),
        ("abstract inverts app", abstr_inverts_app),
        ("lift composition", lift_compose),
        ("fresh after abstraction", fresh_after_abstr),
        ("shift map = lift", shift_is_lift),
        ("single map = subst", single_is_subst),
        ("parse . print round trip", round_trip),
        ("excluded middle", excluded_middle),
        ("graft congruence", graft_congruence),
    ]
    all_ok = True
    for name, check in checks:
        failures = sum(1 for _ in range(count) if not check())
        all_ok &= failures == 0
        print(f"{'PASS' if failures == 0 else 'FAIL'} {name} ({count - failures}/{count})", file=out)
    return all_ok


def cmd_selftest(args) -> int:
    return 0 if run_selftest(args.count, args.seed) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bkernel", description="B logic kernel tools")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check proof scripts")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("parse", help="parse a predicate or expression")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-p", dest="pred", action="store_true", help="parse a predicate")
    g.add_argument("-e", dest="expr", action="store_true", help="parse an expression")
    p.add_argument("text")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("print", help="re-print a script in canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_print)

    p = sub.add_parser("free", help="does a variable occur free?")
    p.add_argument("-v", dest="var", required=True, metavar="NS::NAME")
    p.add_argument("text")
    p.set_defaults(func=cmd_free)

    for name, fn in (("subst", cmd_subst), ("graft", cmd_graft)):
        p = sub.add_parser(name, help=f"{name} an expression for a variable")
        p.add_argument("-v", dest="var", required=True, metavar="NS::NAME")
        p.add_argument("-e", dest="expr", required=True, metavar="EXPR",
                       help="replacement; ^N denotes a raw machine variable here")
        p.add_argument("text")
        p.set_defaults(func=fn)

    p = sub.add_parser("selftest", help="run the embedded invariant suite")
    p.add_argument("--count", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
    except ScriptError as exc:
        where = f" (line {exc.line})" if exc.line else ""
        print(f"error: {exc.kind}{where}: {exc.message}", file=sys.stderr)
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
