"""Render de Bruijn terms in the concrete syntax accepted by the parser."""
from __future__ import annotations

from ..syntax import (
    App, Bool, BoolInd, Coe, Cons, Empty, EmptyInd, FalseTm, Former, Fst, Id,
    IdInd, Inl, Inr, Lam, ListInd, ListTy, Map, Nil, Pair, Pi, Proj, RecordTm,
    RecordTy, Refl, Sigma, Snd, Sort, Sum, SumInd, Sup, Term, TrueTm, Unit,
    UnitInd, UnitTm, Var, W, WInd, subterms,
)
from .lexer import KEYWORDS

__all__ = ["show", "free_in"]

EXPR, ARROW, SUM, CONS, APP, ATOM, POSTFIX = range(7)


def free_in(t: Term, i: int = 0) -> bool:
    """Does ``Var(i)`` occur free in ``t``?"""
    if isinstance(t, Var):
        return t.index == i
    return any(free_in(c, i + k) for c, k in subterms(t))


def show(t: Term, names=()) -> str:
    """Print ``t`` with ``names`` naming the context (outermost first)."""
    return _Printer().go(t, list(names), EXPR)


class _Printer:
    def fresh(self, names, hint):
        base = hint.rstrip("0123456789'") or "x"
        cand, n = base, 0
        while cand in names or cand in KEYWORDS:
            n += 1
            cand = f"{base}{n}"
        return cand

    def bind(self, names, *hints):
        out = list(names)
        new = []
        for h in hints:
            v = self.fresh(out, h)
            out.append(v)
            new.append(v)
        return out, new

    def paren(self, s, prec, need):
        return f"({s})" if prec > need else s

    def go(self, t, names, prec):
        g = self.go
        match t:
            case Var(i):
                if i < len(names):
                    return names[-1 - i]
                return f"#{i}"
            case Sort(i):
                return f"Type {i}"
            case Empty():
                return "Empty"
            case Unit():
                return "Unit"
            case Bool():
                return "Bool"
            case TrueTm():
                return "tt"
            case FalseTm():
                return "ff"
            case UnitTm():
                return "()"
            case Pi(a, b) | Sigma(a, b):
                op = "->" if isinstance(t, Pi) else "**"
                if not free_in(b):
                    inner, _ = self.bind(names, "_")
                    s = f"{g(a, names, SUM)} {op} {g(b, inner, ARROW)}"
                    return self.paren(s, prec, ARROW)
                inner, (x,) = self.bind(names, "x")
                s = f"({x} : {g(a, names, EXPR)}) {op} {g(b, inner, EXPR)}"
                return self.paren(s, prec, EXPR)
            case Lam(a, body):
                inner, (x,) = self.bind(names, "x")
                return self.paren(f"fun ({x} : {g(a, names, EXPR)}) -> {g(body, inner, EXPR)}",
                                  prec, EXPR)
            case App(f, a):
                return self.paren(f"{g(f, names, APP)} {g(a, names, ATOM)}", prec, APP)
            case Pair(a, b, cod):
                inner, (x,) = self.bind(names, "x")
                return f"({g(a, names, EXPR)}, {g(b, names, EXPR)})@[{x}. {g(cod, inner, EXPR)}]"
            case Fst(p):
                return self.paren(f"fst {g(p, names, ATOM)}", prec, APP)
            case Snd(p):
                return self.paren(f"snd {g(p, names, ATOM)}", prec, APP)
            case ListTy(a):
                return self.paren(f"List {g(a, names, ATOM)}", prec, APP)
            case Nil(a):
                return self.paren(f"nil@{g(a, names, ATOM)}", prec, ATOM)
            case Cons(a, h, tl):
                s = f"{g(h, names, APP)} ::@{g(a, names, ATOM)} {g(tl, names, CONS)}"
                return self.paren(s, prec, CONS)
            case ListInd(a, s, p, n, c):
                pn, (z,) = self.bind(names, "l")
                cn, (x, y, ih) = self.bind(names, "h", "t", "ih")
                body = (f"ind_list@{g(a, names, ATOM)} {g(s, names, APP)} as {z} return "
                        f"{g(p, pn, ARROW)} | nil => {g(n, names, ARROW)} | "
                        f"cons {x} {y} {ih} => {g(c, cn, EXPR)}")
                return self.paren(body, prec, EXPR)
            case W(a, b):
                inner, (x,) = self.bind(names, "x")
                return self.paren(f"W ({x} : {g(a, names, EXPR)}). {g(b, inner, EXPR)}", prec, EXPR)
            case Sup(b, a, k):
                inner, (x,) = self.bind(names, "x")
                s = f"sup@[{x}. {g(b, inner, EXPR)}] {g(a, names, ATOM)} {g(k, names, ATOM)}"
                return self.paren(s, prec, APP)
            case WInd(a, b, s, p, c):
                bn, (x0,) = self.bind(names, "x")
                pn, (z,) = self.bind(names, "w")
                cn, (x, y, ih) = self.bind(names, "a", "k", "ih")
                body = (f"ind_W@{g(a, names, ATOM)}@[{x0}. {g(b, bn, EXPR)}] {g(s, names, APP)} "
                        f"as {z} return {g(p, pn, ARROW)} | sup {x} {y} {ih} => {g(c, cn, EXPR)}")
                return self.paren(body, prec, EXPR)
            case Id(a, x, y):
                return self.paren(f"Id {g(a, names, ATOM)} {g(x, names, ATOM)} {g(y, names, ATOM)}",
                                  prec, APP)
            case Refl(a, x):
                return self.paren(f"refl@{g(a, names, ATOM)} {g(x, names, ATOM)}", prec, APP)
            case IdInd(a, s, p, c):
                pn, (x, y, z) = self.bind(names, "x", "y", "e")
                cn, (x1,) = self.bind(names, "x")
                body = (f"ind_id@{g(a, names, ATOM)} {g(s, names, APP)} as {x} {y} {z} return "
                        f"{g(p, pn, ARROW)} | refl {x1} => {g(c, cn, EXPR)}")
                return self.paren(body, prec, EXPR)
            case Sum(a, b):
                return self.paren(f"{g(a, names, SUM)} + {g(b, names, CONS)}", prec, SUM)
            case Inl(b, v):
                return self.paren(f"inl@{g(b, names, ATOM)} {g(v, names, ATOM)}", prec, APP)
            case Inr(a, v):
                return self.paren(f"inr@{g(a, names, ATOM)} {g(v, names, ATOM)}", prec, APP)
            case SumInd(a, b, s, p, l, r):
                pn, (z,) = self.bind(names, "s")
                ln, (x,) = self.bind(names, "x")
                rn, (y,) = self.bind(names, "y")
                body = (f"ind_sum@{g(a, names, ATOM)}@{g(b, names, ATOM)} {g(s, names, APP)} "
                        f"as {z} return {g(p, pn, ARROW)} | inl {x} => {g(l, ln, ARROW)} | "
                        f"inr {y} => {g(r, rn, EXPR)}")
                return self.paren(body, prec, EXPR)
            case EmptyInd(s, p):
                return self.paren(f"ind_empty {g(s, names, APP)} return {g(p, names, EXPR)}",
                                  prec, EXPR)
            case UnitInd(s, p, c):
                pn, (z,) = self.bind(names, "u")
                body = (f"ind_unit {g(s, names, APP)} as {z} return {g(p, pn, ARROW)} | "
                        f"() => {g(c, names, EXPR)}")
                return self.paren(body, prec, EXPR)
            case BoolInd(s, p, x, y):
                pn, (z,) = self.bind(names, "b")
                body = (f"ind_bool {g(s, names, APP)} as {z} return {g(p, pn, ARROW)} | "
                        f"tt => {g(x, names, ARROW)} | ff => {g(y, names, EXPR)}")
                return self.paren(body, prec, EXPR)
            case RecordTy(rows):
                return "{" + ", ".join(f"{l} : {g(a, names, EXPR)}" for l, a in rows) + "}"
            case RecordTm(rows):
                if not rows:
                    return "{:=}"
                return "{" + ", ".join(f"{l} := {g(a, names, EXPR)}" for l, a in rows) + "}"
            case Proj(r, l):
                return f"{g(r, names, POSTFIX)}.{l}"
            case Map(former, src, dst, fn, arg):
                s = (f"map[{former.value}]{{{self.dom(src, names)} => {self.dom(dst, names)}}}"
                     f"({self.hom(fn, names)}) {g(arg, names, ATOM)}")
                return self.paren(s, prec, APP)
            case Coe(a, b, body):
                s = f"coe {{{g(a, names, EXPR)} => {g(b, names, EXPR)}}} {g(body, names, ATOM)}"
                return self.paren(s, prec, APP)
        raise TypeError(f"cannot print {t!r}")

    def dom(self, dom, names):
        g, p = self.go, dom.parts
        match dom.former:
            case Former.LIST:
                return g(p[0], names, ARROW)
            case Former.PI | Former.SIGMA | Former.W:
                inner, (x,) = self.bind(names, "x")
                return f"({x} : {g(p[0], names, EXPR)}, {g(p[1], inner, EXPR)})"
            case _:
                return "(" + ", ".join(g(q, names, EXPR) for q in p) + ")"

    def hom(self, hom, names):
        g, p = self.go, hom.parts
        if hom.former in (Former.PI, Former.SIGMA, Former.W):
            inner, (a,) = self.bind(names, "a")
            return f"{g(p[0], names, EXPR)}, {a}. {g(p[1], inner, EXPR)}"
        return ", ".join(g(q, names, EXPR) for q in p)
