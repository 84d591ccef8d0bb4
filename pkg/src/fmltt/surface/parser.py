"""Recursive-descent parser producing de Bruijn terms directly.

A program is a sequence of declarations::

    var A : Type 0
    def id : A -> A := fun (x : A) -> x

``var`` extends the typing context; ``def`` names a term that is inlined
(with the appropriate shift) wherever it is used later.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .. import syntax as S
from ..syntax import Former, shift
from .lexer import ParseError, Span, Token, tokenize

__all__ = ["Decl", "Program", "Env", "parse_program", "parse_term", "ParseError"]

_FORMERS = {f.value: f for f in Former}
_ATOM_KW = {"Type", "Empty", "Unit", "Bool", "tt", "ff", "nil"}


@dataclass
class Decl:
    kind: str            # "var" or "def"
    name: str
    ty: S.Term
    term: S.Term | None
    span: Span
    depth: int           # number of context variables in scope


@dataclass
class Env:
    """Global names: context variables (outermost first) and definitions."""
    var_names: list = field(default_factory=list)
    var_types: list = field(default_factory=list)
    defs: dict = field(default_factory=dict)      # name -> (ty, term, depth)

    def copy(self):
        return Env(list(self.var_names), list(self.var_types), dict(self.defs))


@dataclass
class Program:
    decls: list
    env: Env

    def defs(self):
        return [d for d in self.decls if d.kind == "def"]


def parse_program(text: str, env: Env | None = None) -> Program:
    p = _Parser(tokenize(text), env.copy() if env else Env())
    decls = p.program()
    return Program(decls, p.env)


def parse_term(text: str, env: Env | None = None, names=()) -> S.Term:
    """Parse one term in the context of ``env`` plus local ``names``."""
    p = _Parser(tokenize(text), env or Env())
    p.scope = list(names)
    t = p.expr()
    p.expect_kind("eof")
    return t


class _Parser:
    def __init__(self, toks: list[Token], env: Env):
        self.toks, self.pos, self.env = toks, 0, env
        self.scope: list[str] = []

    # -------------------------------------------------------------- tokens

    def peek(self, k=0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at(self, text, k=0):
        t = self.peek(k)
        return t.kind in ("sym", "kw") and t.text == text

    def accept(self, text):
        if self.at(text):
            return self.next()
        return None

    def expect(self, text):
        t = self.peek()
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.span)
        return self.next()

    def expect_kind(self, kind):
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.text or 'end of input'!r}", t.span)
        return self.next()

    def ident(self):
        return self.expect_kind("ident").text

    # ------------------------------------------------------------ scoping

    def under(self, names, fn):
        saved = self.scope
        self.scope = saved + list(names)
        try:
            return fn()
        finally:
            self.scope = saved

    def resolve(self, tok: Token) -> S.Term:
        name = tok.text
        for i, n in enumerate(reversed(self.scope)):
            if n == name:
                return S.Var(i)
        depth = len(self.scope)
        nvars = len(self.env.var_names)
        if name in self.env.defs:
            _, term, k = self.env.defs[name]
            if name not in self.env.var_names[k:]:
                return shift(term, nvars - k + depth)
        for j in range(nvars - 1, -1, -1):
            if self.env.var_names[j] == name:
                return S.Var(depth + nvars - 1 - j)
        raise ParseError(f"unbound name {name!r}", tok.span)

    # ---------------------------------------------------------- program

    def program(self):
        decls = []
        while self.peek().kind != "eof":
            start = self.peek()
            if self.accept("var"):
                name = self.ident()
                self.expect(":")
                ty = self.expr()
                decls.append(Decl("var", name, ty, None, start.span, len(self.env.var_names)))
                self.env.var_names.append(name)
                self.env.var_types.append(ty)
            elif self.accept("def"):
                name = self.ident()
                self.expect(":")
                ty = self.expr()
                self.expect(":=")
                term = self.expr()
                depth = len(self.env.var_names)
                decls.append(Decl("def", name, ty, term, start.span, depth))
                self.env.defs[name] = (ty, term, depth)
            else:
                raise ParseError(f"expected 'var' or 'def', found {start.text!r}", start.span)
        return decls

    # ------------------------------------------------------------ terms

    def binder_group_ahead(self):
        if not self.at("("):
            return False
        k = 1
        while self.peek(k).kind == "ident":
            k += 1
        return k > 1 and self.at(":", k)

    def binder_groups(self):
        """``(x y : A) (z : B) ...`` -> list of (name, type) in scope order."""
        out = []
        while self.binder_group_ahead():
            self.expect("(")
            names = []
            while self.peek().kind == "ident":
                names.append(self.ident())
            self.expect(":")
            ty = self.under([m for m, _ in out], self.expr)
            for i, n in enumerate(names):
                out.append((n, shift(ty, i)))
            self.expect(")")
        return out

    def expr(self) -> S.Term:
        t = self.peek()
        if self.accept("fun"):
            groups = self.binder_groups()
            if not groups:
                raise ParseError("expected a binder after 'fun'", t.span)
            self.expect("->")
            body = self.under([n for n, _ in groups], self.expr)
            for _, ty in reversed(groups):
                body = S.Lam(ty, body)
            return body
        if self.binder_group_ahead():
            groups = self.binder_groups()
            op = self.peek()
            if not (self.at("->") or self.at("**")):
                raise ParseError("expected '->' or '**' after binder", op.span)
            self.next()
            cls = S.Pi if op.text == "->" else S.Sigma
            body = self.under([n for n, _ in groups], self.expr)
            for _, ty in reversed(groups):
                body = cls(ty, body)
            return body
        if self.accept("W"):
            (x, a), = self.single_binder()
            self.expect(".")
            return S.W(a, self.under([x], self.expr))
        if t.kind == "kw" and t.text.startswith("ind_"):
            return self.eliminator()
        if self.accept("if"):
            self.expect("@")
            motive = self.atom()
            s = self.app()
            self.expect("then")
            x = self.expr()
            self.expect("else")
            y = self.expr()
            return S.BoolInd(s, shift(motive, 1), x, y)
        return self.arrow()

    def single_binder(self):
        groups = self.binder_groups()
        if len(groups) != 1:
            raise ParseError("expected exactly one binder", self.peek().span)
        return groups

    def arrow(self):
        left = self.sum()
        if self.accept("->"):
            return S.Pi(left, self.under([""], self.expr))
        if self.accept("**"):
            return S.Sigma(left, self.under([""], self.expr))
        return left

    def sum(self):
        left = self.cons()
        while self.accept("+"):
            left = S.Sum(left, self.cons())
        return left

    def cons(self):
        head = self.app()
        if self.accept("::"):
            self.expect("@")
            a = self.atom()
            return S.Cons(a, head, self.cons())
        return head

    def starts_atom(self):
        t = self.peek()
        if t.kind in ("ident", "index"):
            return True
        if t.kind == "kw":
            return t.text in _ATOM_KW
        return t.kind == "sym" and t.text in ("(", "{")

    def app(self):
        head = self.app_head()
        while self.starts_atom():
            head = S.App(head, self.atom())
        return head

    def annot_binder(self):
        """``[x. B]``"""
        self.expect("[")
        x = self.ident()
        self.expect(".")
        b = self.under([x], self.expr)
        self.expect("]")
        return b

    def app_head(self):
        t = self.peek()
        if t.kind != "kw":
            return self.atom()
        match t.text:
            case "List":
                self.next()
                return S.ListTy(self.atom())
            case "fst":
                self.next()
                return S.Fst(self.atom())
            case "snd":
                self.next()
                return S.Snd(self.atom())
            case "Id":
                self.next()
                return S.Id(self.atom(), self.atom(), self.atom())
            case "refl":
                self.next()
                self.expect("@")
                return S.Refl(self.atom(), self.atom())
            case "inl":
                self.next()
                self.expect("@")
                return S.Inl(self.atom(), self.atom())
            case "inr":
                self.next()
                self.expect("@")
                return S.Inr(self.atom(), self.atom())
            case "sup":
                self.next()
                self.expect("@")
                b = self.annot_binder()
                return S.Sup(b, self.atom(), self.atom())
            case "coe":
                self.next()
                self.expect("{")
                a = self.expr()
                self.expect("=>")
                b = self.expr()
                self.expect("}")
                return S.Coe(a, b, self.atom())
            case "map":
                return self.map_node()
        return self.atom()

    def map_node(self):
        self.expect("map")
        self.expect("[")
        ft = self.expect_kind("ident") if self.peek().kind == "ident" else self.next()
        former = _FORMERS.get(ft.text)
        if former is None:
            raise ParseError(f"unknown type former {ft.text!r}", ft.span)
        self.expect("]")
        self.expect("{")
        src = self.dom(former)
        self.expect("=>")
        dst = self.dom(former)
        self.expect("}")
        self.expect("(")
        fn = self.hom(former)
        self.expect(")")
        try:
            return S.Map(former, src, dst, fn, self.atom())
        except ValueError as e:
            raise ParseError(str(e), ft.span) from None

    def dom(self, former):
        if former is Former.LIST:
            return S.Dom(former, (self.expr(),))
        self.expect("(")
        if former in (Former.PI, Former.SIGMA, Former.W):
            x = self.ident()
            self.expect(":")
            a = self.expr()
            self.expect(",")
            b = self.under([x], self.expr)
            parts = (a, b)
        else:
            parts = [self.expr()]
            while self.accept(","):
                parts.append(self.expr())
            parts = tuple(parts)
        self.expect(")")
        try:
            return S.Dom(former, parts)
        except ValueError as e:
            raise ParseError(str(e), self.peek().span) from None

    def hom(self, former):
        f = self.expr()
        if former in (Former.PI, Former.SIGMA, Former.W):
            self.expect(",")
            a = self.ident()
            self.expect(".")
            return S.Morphism(former, (f, self.under([a], self.expr)))
        parts = [f]
        while self.accept(","):
            parts.append(self.expr())
        try:
            return S.Morphism(former, tuple(parts))
        except ValueError as e:
            raise ParseError(str(e), self.peek().span) from None

    def atom(self):
        t = self.base_atom()
        while self.at(".") and self.peek(1).kind in ("ident", "kw"):
            self.next()
            t = S.Proj(t, self.next().text)
        return t

    def base_atom(self):
        t = self.next()
        if t.kind == "ident":
            return self.resolve(t)
        if t.kind == "index":
            return S.Var(int(t.text[1:]))
        if t.kind == "kw":
            match t.text:
                case "Type":
                    return S.Sort(int(self.expect_kind("num").text))
                case "Empty":
                    return S.EMPTY
                case "Unit":
                    return S.UNIT
                case "Bool":
                    return S.BOOL
                case "tt":
                    return S.TT
                case "ff":
                    return S.FF
                case "nil":
                    self.expect("@")
                    return S.Nil(self.atom())
        if t.kind == "sym" and t.text == "(":
            if self.accept(")"):
                return S.STAR
            e = self.expr()
            if self.accept(","):
                snd = self.expr()
                self.expect(")")
                self.expect("@")
                return S.Pair(e, snd, self.annot_binder())
            self.expect(")")
            return e
        if t.kind == "sym" and t.text == "{":
            return self.record(t)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.span)

    def record(self, open_tok):
        if self.accept("}"):
            return S.RecordTy(())
        if self.accept(":="):
            self.expect("}")
            return S.RecordTm(())
        rows, kind = [], None
        while True:
            lt = self.next()
            if lt.kind not in ("ident", "kw"):
                raise ParseError("expected a field label", lt.span)
            sep = self.peek()
            if self.accept(":"):
                k = "ty"
            elif self.accept(":="):
                k = "tm"
            else:
                raise ParseError("expected ':' or ':=' after label", sep.span)
            if kind not in (None, k):
                raise ParseError("mixed record type and record literal", sep.span)
            kind = k
            rows.append((lt.text, self.expr()))
            if not self.accept(","):
                break
        self.expect("}")
        try:
            return (S.RecordTy if kind == "ty" else S.RecordTm)(tuple(rows))
        except ValueError as e:
            raise ParseError(str(e), open_tok.span) from None

    def names(self, n):
        return [self.ident() for _ in range(n)]

    def branch(self, tag, nvars):
        self.expect("|")
        if tag == "()":
            self.expect("(")
            self.expect(")")
        else:
            self.expect(tag)
        xs = self.names(nvars)
        self.expect("=>")
        return xs

    def eliminator(self):
        kw = self.next()
        match kw.text:
            case "ind_list":
                self.expect("@")
                a = self.atom()
                s = self.app()
                self.expect("as")
                z = self.ident()
                self.expect("return")
                p = self.under([z], self.expr)
                self.branch("nil", 0)
                n = self.expr()
                xs = self.branch("cons", 3)
                c = self.under(xs, self.expr)
                return S.ListInd(a, s, p, n, c)
            case "ind_W":
                self.expect("@")
                a = self.atom()
                self.expect("@")
                b = self.annot_binder()
                s = self.app()
                self.expect("as")
                z = self.ident()
                self.expect("return")
                p = self.under([z], self.expr)
                xs = self.branch("sup", 3)
                return S.WInd(a, b, s, p, self.under(xs, self.expr))
            case "ind_id":
                self.expect("@")
                a = self.atom()
                s = self.app()
                self.expect("as")
                zs = self.names(3)
                self.expect("return")
                p = self.under(zs, self.expr)
                xs = self.branch("refl", 1)
                return S.IdInd(a, s, p, self.under(xs, self.expr))
            case "ind_sum":
                self.expect("@")
                a = self.atom()
                self.expect("@")
                b = self.atom()
                s = self.app()
                self.expect("as")
                z = self.ident()
                self.expect("return")
                p = self.under([z], self.expr)
                xs = self.branch("inl", 1)
                l = self.under(xs, self.expr)
                ys = self.branch("inr", 1)
                r = self.under(ys, self.expr)
                return S.SumInd(a, b, s, p, l, r)
            case "ind_empty":
                s = self.app()
                self.expect("return")
                return S.EmptyInd(s, self.expr())
            case "ind_unit":
                s = self.app()
                self.expect("as")
                z = self.ident()
                self.expect("return")
                p = self.under([z], self.expr)
                self.branch("()", 0)
                return S.UnitInd(s, p, self.expr())
            case "ind_bool":
                s = self.app()
                self.expect("as")
                z = self.ident()
                self.expect("return")
                p = self.under([z], self.expr)
                self.branch("tt", 0)
                x = self.expr()
                self.branch("ff", 0)
                return S.BoolInd(s, p, x, self.expr())
        raise ParseError(f"unknown eliminator {kw.text!r}", kw.span)
