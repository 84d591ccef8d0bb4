"""Command-line driver.

Exit status: 0 when the judgment holds, 1 when it is decided negatively
(ill-typed, not convertible, not a subtype), 2 for usage, parse, fuel and
internal errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from ..coe import CoeChecker, SubChecker
from ..errors import ErrorKind, TypingError
from ..reduction import DEFAULT_FUEL, FuelExhausted, whnf
from ..syntax import Context
from ..translations import Elaborator, NoRule, Translator, Untranslatable, erase
from ..typing_map import MapChecker
from .lexer import ParseError, Span
from .parser import Env, parse_program, parse_term
from .printer import show

JSON_SCHEMA_VERSION = 1

OK, NEGATIVE, ERROR = 0, 1, 2

CHECKERS = {"map": MapChecker, "coe": CoeChecker, "sub": SubChecker}


@dataclass
class Diagnostic:
    code: str
    message: str
    severity: str = "error"
    span: Span | None = None
    expected: str | None = None
    actual: str | None = None

    def as_dict(self):
        d = {"code": self.code, "severity": self.severity,
             "span": self.span.as_dict() if self.span else None, "message": self.message}
        if self.expected is not None:
            d["expected"] = self.expected
        if self.actual is not None:
            d["actual"] = self.actual
        return d

    def render(self, source="<input>"):
        where = f"{source}:{self.span.line}:{self.span.col}" if self.span else source
        out = f"{where}: {self.severity}: [{self.code}] {self.message}"
        if self.expected is not None:
            out += f"\n  expected: {self.expected}"
        if self.actual is not None:
            out += f"\n  actual:   {self.actual}"
        return out


@dataclass
class Report:
    """Collected output of one command."""
    command: str
    status: int = OK
    lines: list = field(default_factory=list)
    results: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def emit(self, text, **record):
        self.lines.append(text)
        self.results.append(record or {"text": text})

    def fail(self, diag: Diagnostic, status=NEGATIVE):
        self.diagnostics.append(diag)
        self.status = max(self.status, status)


class UsageError(Exception):
    pass


def _typing_diag(e: TypingError, names, span, fuel):
    def pretty(t):
        if t is None:
            return None
        try:
            t = whnf(t, fuel)
        except FuelExhausted:
            pass
        return show(t, names)
    msg = e.detail if not e.path else f"{e.detail} (at {'/'.join(map(str, e.path))})"
    return Diagnostic(e.kind.name, msg, span=span,
                      expected=pretty(e.expected), actual=pretty(e.actual))


def _status_of(e: TypingError):
    return ERROR if e.kind in (ErrorKind.FUEL_EXHAUSTED, ErrorKind.UNSUPPORTED) else NEGATIVE


def _expr_span(text):
    return Span(1, 1, len(text))


# ------------------------------------------------------------------ commands

def _load_env(path):
    if path is None:
        return Env()
    return parse_program(Path(path).read_text()).env


def _ctx(env, depth=None):
    types = env.var_types if depth is None else env.var_types[:depth]
    return Context(tuple(types))


def _names(env, depth=None):
    return env.var_names if depth is None else env.var_names[:depth]


def _one_expr(args, n=1):
    if not args.expr or len(args.expr) != n:
        raise UsageError(f"expected exactly {n} -e expression(s)")
    return args.expr


def cmd_check(args, rep):
    checker = CHECKERS[args.system](args.fuel)
    prog = parse_program(Path(args.file).read_text())
    for d in prog.decls:
        ctx = _ctx(prog.env, depth=d.depth)
        names = _names(prog.env, d.depth)
        try:
            checker.wf_type(ctx, d.ty)
            if d.kind == "def":
                checker.check(ctx, d.term, d.ty)
        except TypingError as e:
            rep.fail(_typing_diag(e, names, d.span, args.fuel), _status_of(e))
            continue
        rep.emit(f"{d.name} : {show(d.ty, names)}", name=d.name, kind=d.kind, ok=True)


def cmd_infer(args, rep):
    env = _load_env(args.ctx)
    (text,) = _one_expr(args)
    t = parse_term(text, env)
    ctx = _ctx(env)
    try:
        ty = CHECKERS[args.system](args.fuel).infer(ctx, t)
    except TypingError as e:
        rep.fail(_typing_diag(e, env.var_names, _expr_span(text), args.fuel), _status_of(e))
        return
    rep.emit(show(ty, env.var_names), type=show(ty, env.var_names))


def cmd_eval(args, rep):
    env = _load_env(args.ctx)
    (text,) = _one_expr(args)
    t = parse_term(text, env)
    try:
        v = whnf(t, args.fuel)
    except FuelExhausted:
        rep.fail(Diagnostic(ErrorKind.FUEL_EXHAUSTED.name, f"no weak-head normal form within {args.fuel} steps",
                            span=_expr_span(text)), ERROR)
        return
    rep.emit(show(v, env.var_names), whnf=show(v, env.var_names))


def cmd_conv(args, rep):
    env = _load_env(args.ctx)
    a_text, b_text = _one_expr(args, 2)
    a, b = parse_term(a_text, env), parse_term(b_text, env)
    ctx = _ctx(env)
    checker = CHECKERS[args.system](args.fuel)
    try:
        if args.at is not None:
            at = checker.wf_type(ctx, parse_term(args.at, env))
            a = checker.check(ctx, a, at)
            b = checker.check(ctx, b, at)
            ok = checker.conv_tm(ctx, a, b, at)
        else:
            a, b = checker.wf_type(ctx, a), checker.wf_type(ctx, b)
            ok = checker.conv_ty(ctx, a, b)
    except TypingError as e:
        rep.fail(_typing_diag(e, env.var_names, None, args.fuel), _status_of(e))
        return
    if ok:
        rep.emit("convertible", convertible=True)
    else:
        rep.fail(Diagnostic(ErrorKind.CONV_FAILED.name, "not convertible",
                            expected=show(whnf(b, args.fuel), env.var_names),
                            actual=show(whnf(a, args.fuel), env.var_names)))


def cmd_sub(args, rep):
    if args.system == "map":
        raise UsageError("subtyping needs --system=coe or --system=sub")
    env = _load_env(args.ctx)
    a_text, b_text = _one_expr(args, 2)
    ctx = _ctx(env)
    checker = CHECKERS[args.system](args.fuel)
    try:
        a = checker.wf_type(ctx, parse_term(a_text, env))
        b = checker.wf_type(ctx, parse_term(b_text, env))
        ok = checker.subtype(ctx, a, b)
    except TypingError as e:
        rep.fail(_typing_diag(e, env.var_names, None, args.fuel), _status_of(e))
        return
    if ok:
        rep.emit("subtype", subtype=True)
    else:
        rep.fail(Diagnostic(ErrorKind.SUBTYPE_FAILED.name, "not a subtype",
                            expected=show(b, env.var_names), actual=show(a, env.var_names)))


def _targets(args):
    """Yield ``(env, depth, names, label, ty_or_None, term, span)`` for the
    terms a translation command acts on: the ``-e`` expression, a term file
    read with ``--type``, or every definition of a program file."""
    if args.expr:
        env = _load_env(args.ctx or args.file)
        (text,) = _one_expr(args)
        ty = parse_term(args.type, env) if args.type else None
        yield env, len(env.var_names), env.var_names, None, ty, parse_term(text, env), _expr_span(text)
        return
    if args.file is None:
        raise UsageError("give a FILE or an -e expression")
    source = Path(args.file).read_text()
    if args.type is not None:
        env = _load_env(args.ctx)
        yield env, len(env.var_names), env.var_names, None, parse_term(args.type, env), \
            parse_term(source, env), None
        return
    prog = parse_program(source, _load_env(args.ctx) if args.ctx else None)
    for d in prog.defs():
        yield prog.env, d.depth, _names(prog.env, d.depth), d.name, d.ty, d.term, d.span


def _emit_def(rep, label, names, ty, term, **record):
    body = show(term, names)
    if label is None:
        rep.emit(body, term=body, **record)
    else:
        rep.emit(f"def {label} : {show(ty, names)} := {body}", name=label,
                 type=show(ty, names), term=body, **record)


def cmd_elaborate(args, rep):
    el = Elaborator(args.fuel)
    for env, depth, names, label, ty, t, span in _targets(args):
        try:
            ctx = el.wf_context(env.var_types[:depth])
            t2, ty2 = el.elaborate(ctx, t, ty)
        except TypingError as e:
            rep.fail(_typing_diag(e, names, span, args.fuel), _status_of(e))
            continue
        _emit_def(rep, label, names, ty2, t2)


def cmd_erase(args, rep):
    for env, depth, names, label, ty, t, span in _targets(args):
        _emit_def(rep, label, names, erase(ty) if ty is not None else None, erase(t))


def cmd_translate(args, rep):
    tr = Translator(args.fuel)
    checker = CoeChecker(args.fuel)
    for env, depth, names, label, ty, t, span in _targets(args):
        try:
            ctx = checker.wf_context(env.var_types[:depth])
            if ty is None:
                ty = checker.infer(ctx, t)
            else:
                checker.check(ctx, t, checker.wf_type(ctx, ty))
            out_t, out_ty = tr.term(ctx, t), tr.term(ctx, ty)
        except TypingError as e:
            rep.fail(_typing_diag(e, names, span, args.fuel), _status_of(e))
            continue
        except (NoRule, Untranslatable) as e:
            rep.fail(Diagnostic(ErrorKind.UNSUPPORTED.name, str(e), span=span), NEGATIVE)
            continue
        _emit_def(rep, label, names, out_ty, out_t)


COMMANDS = {
    "check": cmd_check, "infer": cmd_infer, "eval": cmd_eval, "conv": cmd_conv,
    "sub": cmd_sub, "elaborate": cmd_elaborate, "erase": cmd_erase, "translate": cmd_translate,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="reduction step budget")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", "-q", action="store_true", help="print nothing, report by exit status")
    common.add_argument("--ctx", metavar="FILE", help="program whose vars and defs are in scope")

    ap = argparse.ArgumentParser(prog="fmltt", description="Type checker for dependent type "
                                 "theory with definitional functor laws and record subtyping.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help, system="map", systems=("map", "coe", "sub")):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("--system", choices=systems, default=system)
        return p

    p = add("check", "type-check every declaration of a program")
    p.add_argument("file")
    for name, help in (("infer", "infer the type of an expression"),
                       ("eval", "print the weak-head normal form of an expression")):
        add(name, help).add_argument("-e", dest="expr", action="append", required=True)
    p = add("conv", "decide conversion of two types, or of two terms with --at")
    p.add_argument("-e", dest="expr", action="append", required=True)
    p.add_argument("--at", metavar="TYPE")
    p = add("sub", "decide subtyping of two types", system="coe", systems=("coe", "sub"))
    p.add_argument("-e", dest="expr", action="append", required=True)
    for name, help in (("elaborate", "insert explicit coercions into a subsumptive program"),
                       ("erase", "remove explicit coercions"),
                       ("translate", "translate an explicit-coercion program into the map system")):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("file", nargs="?")
        p.add_argument("-e", dest="expr", action="append")
        p.add_argument("--type", metavar="EXPR")
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    rep = Report(args.command)
    source = getattr(args, "file", None) or "<input>"
    try:
        COMMANDS[args.command](args, rep)
    except UsageError as e:
        rep.fail(Diagnostic("USAGE", str(e)), ERROR)
    except ParseError as e:
        rep.fail(Diagnostic("PARSE_ERROR", e.message, span=e.span), ERROR)
    except OSError as e:
        rep.fail(Diagnostic("IO_ERROR", str(e)), ERROR)
    except RecursionError:
        rep.fail(Diagnostic("INTERNAL", "recursion limit exceeded"), ERROR)
    if args.json:
        json.dump({"version": JSON_SCHEMA_VERSION, "command": rep.command, "status": rep.status,
                   "results": rep.results, "diagnostics": [d.as_dict() for d in rep.diagnostics]},
                  out, indent=2)
        out.write("\n")
    elif not args.quiet:
        for line in rep.lines:
            print(line, file=out)
        for d in rep.diagnostics:
            print(d.render(source), file=out if out is not sys.stdout else sys.stderr)
    return rep.status


def main():
    sys.exit(run())
