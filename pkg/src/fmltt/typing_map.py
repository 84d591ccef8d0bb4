"""Bidirectional type checking for the system with definitional functor laws.

Every rule returns the (possibly rewritten) term together with its inferred
type.  In this system the term is returned unchanged; the elaborating
subclass in :mod:`fmltt.translations` overrides :meth:`MapChecker.coerce` to
insert coercions, and reuses every other rule as is.
"""
from __future__ import annotations

from .conversion import Conversion
from .errors import ErrorKind, TypingError
from .syntax import (
    App, Bool, Cons, Context, Dom, Empty, Former, Id, Inl, Inr, Lam, ListTy,
    Map, Morphism, Nil, Pi, Refl, Sigma, Sort, Sum, Sup, Term, Unit, Var, W,
    BOOL, EMPTY, STAR, TT, FF, UNIT, arrow, former_type, instantiate, shift,
)
from . import syntax as S

__all__ = ["MapChecker"]

_TYPE_NODES = (Sort, Pi, Sigma, ListTy, W, Id, Sum, Empty, Unit, Bool)


class MapChecker(Conversion):
    """Checker for the system with ``map`` nodes and no coercions or records."""

    system = "map"
    allows_map = True
    allows_coe = False
    allows_records = False

    # ------------------------------------------------------------ public API

    def wf_context(self, types) -> Context:
        ctx = Context()
        for i, ty in enumerate(types):
            ctx = ctx.extend(self._type(ctx, ty, f"ctx[{i}]"))
        return ctx

    def wf_type(self, ctx: Context, ty: Term) -> Term:
        return self._type(ctx, ty)

    def infer(self, ctx: Context, t: Term) -> Term:
        return self._infer(ctx, t)[1]

    def infer_red(self, ctx: Context, t: Term) -> Term:
        return self.whnf(self.infer(ctx, t))

    def check(self, ctx: Context, t: Term, ty: Term) -> Term:
        return self._check(ctx, t, ty)

    # ------------------------------------------------------------ plumbing

    def _infer(self, ctx, t, seg=None):
        rule = getattr(self, "_infer_" + type(t).__name__, None)
        try:
            if rule is None:
                raise TypingError(ErrorKind.UNSUPPORTED,
                                  f"{type(t).__name__} is not part of the {self.system} system")
            return rule(ctx, t)
        except TypingError as e:
            if seg is not None:
                e.path = (seg,) + e.path
            raise

    def _check(self, ctx, t, ty, seg=None):
        try:
            t2, actual = self._infer(ctx, t)
            return self.coerce(ctx, t2, actual, ty)
        except TypingError as e:
            if seg is not None:
                e.path = (seg,) + e.path
            raise

    def coerce(self, ctx, t, actual, expected):
        """Accept ``t : actual`` where ``expected`` is required."""
        if self.conv_ty(ctx, actual, expected):
            return t
        raise TypingError(ErrorKind.CONV_FAILED, "type mismatch", expected, actual)

    def _infer_sort(self, ctx, t, seg=None):
        t2, ty = self._infer(ctx, t, seg)
        ty = self.whnf(ty)
        if not isinstance(ty, Sort):
            err = TypingError(ErrorKind.NOT_A_UNIVERSE, "expected a type", None, ty)
            err.path = (seg,) if seg else ()
            raise err
        return t2, ty.level

    def _expect(self, ty, cls, kind, what):
        ty = self.whnf(ty)
        if not isinstance(ty, cls):
            raise TypingError(kind, f"expected {what}", None, ty)
        return ty

    def _type(self, ctx, ty, seg=None):
        try:
            return self._type_inner(ctx, ty)
        except TypingError as e:
            if seg is not None:
                e.path = (seg,) + e.path
            raise

    def _type_inner(self, ctx, ty):
        match ty:
            case Sort() | Empty() | Unit() | Bool():
                return ty
            case Pi(a, b) | Sigma(a, b) | W(a, b):
                a2 = self._type(ctx, a, "dom")
                return type(ty)(a2, self._type(ctx.extend(a2), b, "cod"))
            case ListTy(a):
                return ListTy(self._type(ctx, a, "elem"))
            case Sum(a, b):
                return Sum(self._type(ctx, a, "left"), self._type(ctx, b, "right"))
            case Id(a, x, y):
                a2 = self._type(ctx, a, "ty")
                return Id(a2, self._check(ctx, x, a2, "lhs"), self._check(ctx, y, a2, "rhs"))
            case S.RecordTy(rows):
                self._require(self.allows_records, "records")
                return S.RecordTy(tuple((l, self._type(ctx, a, l)) for l, a in rows))
        return self._infer_sort(ctx, ty)[0]

    def _require(self, flag, what):
        if not flag:
            raise TypingError(ErrorKind.UNSUPPORTED, f"{what} are not part of the {self.system} system")

    # ------------------------------------------------------------- rules

    def _infer_Var(self, ctx, t):
        if not 0 <= t.index < len(ctx):
            raise TypingError(ErrorKind.UNBOUND_VARIABLE, f"variable {t.index} is not bound")
        return t, ctx.lookup(t.index)

    def _infer_Sort(self, ctx, t):
        return t, Sort(t.level + 1)

    def _former_with_cod(self, ctx, t):
        a, i = self._infer_sort(ctx, t.dom, "dom")
        b = self._check(ctx.extend(a), t.cod, Sort(i), "cod")
        return type(t)(a, b), Sort(i)

    _infer_Pi = _infer_Sigma = _infer_W = _former_with_cod

    def _infer_Lam(self, ctx, t):
        a = self._type(ctx, t.dom, "dom")
        body, b = self._infer(ctx.extend(a), t.body, "body")
        return Lam(a, body), Pi(a, b)

    def _infer_App(self, ctx, t):
        fn, fty = self._infer(ctx, t.fn, "fn")
        pi = self._expect(fty, Pi, ErrorKind.NOT_A_FUNCTION, "a function")
        arg = self._check(ctx, t.arg, pi.dom, "arg")
        return App(fn, arg), instantiate(pi.cod, arg)

    def _infer_Pair(self, ctx, t):
        a, aty = self._infer(ctx, t.fst, "fst")
        cod = self._type(ctx.extend(aty), t.cod, "cod")
        b = self._check(ctx, t.snd, instantiate(cod, a), "snd")
        return S.Pair(a, b, cod), Sigma(aty, cod)

    def _infer_Fst(self, ctx, t):
        p, pty = self._infer(ctx, t.pair, "pair")
        sig = self._expect(pty, Sigma, ErrorKind.SHAPE_MISMATCH, "a pair")
        return S.Fst(p), sig.dom

    def _infer_Snd(self, ctx, t):
        p, pty = self._infer(ctx, t.pair, "pair")
        sig = self._expect(pty, Sigma, ErrorKind.SHAPE_MISMATCH, "a pair")
        return S.Snd(p), instantiate(sig.cod, S.Fst(p))

    def _infer_ListTy(self, ctx, t):
        a, i = self._infer_sort(ctx, t.elem, "elem")
        return ListTy(a), Sort(i)

    def _infer_Nil(self, ctx, t):
        a = self._type(ctx, t.elem, "elem")
        return Nil(a), ListTy(a)

    def _infer_Cons(self, ctx, t):
        a = self._type(ctx, t.elem, "elem")
        h = self._check(ctx, t.head, a, "head")
        tl = self._check(ctx, t.tail, ListTy(a), "tail")
        return Cons(a, h, tl), ListTy(a)

    def _infer_ListInd(self, ctx, t):
        a = self._type(ctx, t.elem, "elem")
        lt = ListTy(a)
        s = self._check(ctx, t.scrut, lt, "scrut")
        p = self._type(ctx.extend(lt), t.motive, "motive")
        n = self._check(ctx, t.nil_case, instantiate(p, Nil(a)), "nil_case")
        cons_ctx = ctx.extend(a, ListTy(shift(a, 1)), instantiate(p, Var(0), lift=2))
        cons_ty = instantiate(p, Cons(shift(a, 3), Var(2), Var(1)), lift=3)
        c = self._check(cons_ctx, t.cons_case, cons_ty, "cons_case")
        return S.ListInd(a, s, p, n, c), instantiate(p, s)

    def _infer_Sup(self, ctx, t):
        x, a = self._infer(ctx, t.label, "label")
        b = self._type(ctx.extend(a), t.cod, "cod")
        wt = W(a, b)
        k = self._check(ctx, t.kids, Pi(instantiate(b, x), shift(wt, 1)), "kids")
        return Sup(b, x, k), wt

    def _infer_WInd(self, ctx, t):
        a = self._type(ctx, t.dom, "dom")
        b = self._type(ctx.extend(a), t.cod, "cod")
        wt = W(a, b)
        s = self._check(ctx, t.scrut, wt, "scrut")
        p = self._type(ctx.extend(wt), t.motive, "motive")
        kids = Pi(b, shift(wt, 2))
        ih = Pi(shift(b, 1), instantiate(p, App(Var(1), Var(0)), lift=3))
        case_ty = instantiate(p, Sup(shift(b, 3, 1), Var(2), Var(1)), lift=3)
        c = self._check(ctx.extend(a, kids, ih), t.case, case_ty, "case")
        return S.WInd(a, b, s, p, c), instantiate(p, s)

    def _infer_Id(self, ctx, t):
        a, i = self._infer_sort(ctx, t.ty, "ty")
        x = self._check(ctx, t.lhs, a, "lhs")
        y = self._check(ctx, t.rhs, a, "rhs")
        return Id(a, x, y), Sort(i)

    def _infer_Refl(self, ctx, t):
        a = self._type(ctx, t.ty, "ty")
        x = self._check(ctx, t.point, a, "point")
        return Refl(a, x), Id(a, x, x)

    def _infer_IdInd(self, ctx, t):
        s, sty = self._infer(ctx, t.scrut, "scrut")
        sty = self._expect(sty, Id, ErrorKind.SHAPE_MISMATCH, "an identity proof")
        a = self._type(ctx, t.ty, "ty")
        try:
            x = self.coerce(ctx, sty.lhs, sty.ty, a)
            y = self.coerce(ctx, sty.rhs, sty.ty, a)
            s = self.coerce(ctx, s, sty, Id(a, x, y))
        except TypingError as e:
            e.path = ("scrut",) + e.path
            raise
        motive_ctx = ctx.extend(a, shift(a, 1), Id(shift(a, 2), Var(1), Var(0)))
        p = self._type(motive_ctx, t.motive, "motive")
        refl_ty = instantiate(p, Var(0), Var(0), Refl(shift(a, 1), Var(0)), lift=1)
        c = self._check(ctx.extend(a), t.refl_case, refl_ty, "refl_case")
        return S.IdInd(a, s, p, c), instantiate(p, x, y, s)

    def _infer_Sum(self, ctx, t):
        a, i = self._infer_sort(ctx, t.left, "left")
        b = self._check(ctx, t.right, Sort(i), "right")
        return Sum(a, b), Sort(i)

    def _infer_Inl(self, ctx, t):
        b = self._type(ctx, t.right, "right")
        v, a = self._infer(ctx, t.val, "val")
        return Inl(b, v), Sum(a, b)

    def _infer_Inr(self, ctx, t):
        a = self._type(ctx, t.left, "left")
        v, b = self._infer(ctx, t.val, "val")
        return Inr(a, v), Sum(a, b)

    def _infer_SumInd(self, ctx, t):
        a = self._type(ctx, t.left, "left")
        b = self._type(ctx, t.right, "right")
        st = Sum(a, b)
        s = self._check(ctx, t.scrut, st, "scrut")
        p = self._type(ctx.extend(st), t.motive, "motive")
        l = self._check(ctx.extend(a), t.inl_case,
                        instantiate(p, Inl(shift(b, 1), Var(0)), lift=1), "inl_case")
        r = self._check(ctx.extend(b), t.inr_case,
                        instantiate(p, Inr(shift(a, 1), Var(0)), lift=1), "inr_case")
        return S.SumInd(a, b, s, p, l, r), instantiate(p, s)

    def _infer_base_type(self, ctx, t):
        return t, Sort(0)

    _infer_Empty = _infer_Unit = _infer_Bool = _infer_base_type

    def _infer_UnitTm(self, ctx, t):
        return t, UNIT

    def _infer_TrueTm(self, ctx, t):
        return t, BOOL

    _infer_FalseTm = _infer_TrueTm

    def _infer_EmptyInd(self, ctx, t):
        s = self._check(ctx, t.scrut, EMPTY, "scrut")
        p = self._type(ctx, t.motive, "motive")
        return S.EmptyInd(s, p), p

    def _infer_UnitInd(self, ctx, t):
        s = self._check(ctx, t.scrut, UNIT, "scrut")
        p = self._type(ctx.extend(UNIT), t.motive, "motive")
        c = self._check(ctx, t.case, instantiate(p, STAR), "case")
        return S.UnitInd(s, p, c), instantiate(p, s)

    def _infer_BoolInd(self, ctx, t):
        s = self._check(ctx, t.scrut, BOOL, "scrut")
        p = self._type(ctx.extend(BOOL), t.motive, "motive")
        x = self._check(ctx, t.true_case, instantiate(p, TT), "true_case")
        y = self._check(ctx, t.false_case, instantiate(p, FF), "false_case")
        return S.BoolInd(s, p, x, y), instantiate(p, s)

    # ------------------------------------------------------------------ map

    def _infer_Map(self, ctx, t):
        self._require(self.allows_map, "map nodes")
        src = self._dom(ctx, t.src, "src")
        dst = self._dom(ctx, t.dst, "dst")
        fn = self._hom(ctx, src, dst, t.fn)
        arg = self._check(ctx, t.arg, former_type(src), "arg")
        return Map(t.former, src, dst, fn, arg), former_type(dst)

    def _dom(self, ctx, dom, seg):
        try:
            p = dom.parts
            match dom.former:
                case Former.LIST:
                    parts = (self._type(ctx, p[0]),)
                case Former.PI | Former.SIGMA | Former.W:
                    a = self._type(ctx, p[0], "dom")
                    parts = (a, self._type(ctx.extend(a), p[1], "cod"))
                case Former.ID:
                    a = self._type(ctx, p[0], "ty")
                    parts = (a, self._check(ctx, p[1], a, "lhs"), self._check(ctx, p[2], a, "rhs"))
                case Former.SUM:
                    parts = (self._type(ctx, p[0], "left"), self._type(ctx, p[1], "right"))
            return Dom(dom.former, parts)
        except TypingError as e:
            e.path = (seg,) + e.path
            raise

    def _hom(self, ctx, src, dst, hom):
        if hom.former is not src.former or len(hom.parts) != len(hom.binders):
            raise TypingError(ErrorKind.MORPHISM_SHAPE_MISMATCH, "morphism does not fit the former")
        a1, a2 = src.parts[0], dst.parts[0]
        f = hom.parts[0]
        match hom.former:
            case Former.LIST:
                return Morphism(hom.former, (self._check(ctx, f, arrow(a1, a2), "fn"),))
            case Former.ID:
                f = self._check(ctx, f, arrow(a1, a2), "fn")
                for i, side in ((1, "lhs"), (2, "rhs")):
                    if not self.conv_tm(ctx, App(f, src.parts[i]), dst.parts[i], a2):
                        raise TypingError(ErrorKind.CONV_FAILED,
                                          f"morphism does not send the {side} endpoint to the target",
                                          dst.parts[i], App(f, src.parts[i]))
                return Morphism(hom.former, (f,))
            case Former.SUM:
                f = self._check(ctx, f, arrow(a1, a2), "fn")
                g = self._check(ctx, hom.parts[1], arrow(src.parts[1], dst.parts[1]), "fn2")
                return Morphism(hom.former, (f, g))
            case Former.PI:
                f = self._check(ctx, f, arrow(a2, a1), "fn")
                at = App(shift(f, 1), Var(0))
                g_ty = arrow(instantiate(src.parts[1], at, lift=1), dst.parts[1])
                g = self._check(ctx.extend(a2), hom.parts[1], g_ty, "fn2")
                return Morphism(hom.former, (f, g))
            case Former.SIGMA | Former.W:
                f = self._check(ctx, f, arrow(a1, a2), "fn")
                at = App(shift(f, 1), Var(0))
                if hom.former is Former.SIGMA:
                    g_ty = arrow(src.parts[1], instantiate(dst.parts[1], at, lift=1))
                else:
                    g_ty = arrow(instantiate(dst.parts[1], at, lift=1), src.parts[1])
                g = self._check(ctx.extend(a1), hom.parts[1], g_ty, "fn2")
                return Morphism(hom.former, (f, g))
