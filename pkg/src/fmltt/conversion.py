"""Algorithmic conversion.

The checker classes inherit from :class:`Conversion`.  Type comparison is a
single recursion parameterised by :class:`SubMode`, so conversion and
subtyping share their congruence cases.  Neutral comparison returns the type
of the left-hand neutral, or ``None`` on failure.

Terms headed by ``map`` over a neutral are compared by peeling the map layer
(``unmap``) and comparing the morphisms pointwise on a fresh variable
(``unmapfun``).  A neutral without a map layer behaves as if it carried the
identity morphism.
"""
from __future__ import annotations

import enum

from .errors import ErrorKind, TypingError
from .reduction import DEFAULT_FUEL, FuelExhausted, is_compacted_or_neutral, is_neutral, whnf
from .syntax import (
    App, Bool, BoolInd, Coe, Cons, Context, Empty, EmptyInd, FalseTm, Fst, Id,
    IdInd, Inl, Inr, ListInd, ListTy, Map, Nil, Pi, Proj, RecordTy, Refl,
    Sigma, Snd, Sort, Sum, SumInd, Sup, Term, TrueTm, Unit, UnitInd, UnitTm,
    Var, W, WInd, BOOL, EMPTY, STAR, TT, FF, UNIT, former_type, instantiate,
    shift,
)

__all__ = ["SubMode", "Conversion", "unmap", "unmapfun"]


class SubMode(enum.Enum):
    CONV = "conv"
    SUB_LEFT = "sub_left"     # left ≼ right
    SUB_RIGHT = "sub_right"   # right ≼ left


def unmap(c: Term) -> Term:
    return c.arg if isinstance(c, Map) else c


def unmapfun(c: Term, x: Term, component: int = 0) -> Term:
    """Apply the ``component``-th function of ``c``'s map layer to ``x``
    (identity when ``c`` has no map layer)."""
    if isinstance(c, Map):
        return App(c.fn.parts[component], x)
    return x


class Conversion:
    system = "map"

    def __init__(self, fuel: int = DEFAULT_FUEL):
        self.fuel = fuel

    def whnf(self, t: Term) -> Term:
        try:
            return whnf(t, self.fuel)
        except FuelExhausted as e:
            raise TypingError(ErrorKind.FUEL_EXHAUSTED, str(e)) from None

    # hooks specialised by the coercive systems
    def along(self, body: Term, src: Term, dst: Term) -> Term:
        """Re-type ``body`` (one binder of type ``dst``) under a binder of type ``src``."""
        return body

    def coerce_term(self, src: Term, dst: Term, t: Term) -> Term:
        return t

    # ---------------------------------------------------------------- types

    def conv_ty(self, ctx: Context, a: Term, b: Term) -> bool:
        return self.compare_ty(ctx, a, b, SubMode.CONV)

    def conv_ty_red(self, ctx: Context, a: Term, b: Term) -> bool:
        return self.compare_ty_red(ctx, a, b, SubMode.CONV)

    def compare_ty(self, ctx, a, b, mode):
        if a == b:
            return True
        return self.compare_ty_red(ctx, self.whnf(a), self.whnf(b), mode)

    def compare_ty_red(self, ctx, a, b, mode):
        if mode is SubMode.SUB_RIGHT:
            return self.compare_ty_red(ctx, b, a, SubMode.SUB_LEFT)
        if a == b:
            return True
        sub = mode is SubMode.SUB_LEFT
        contra = SubMode.SUB_RIGHT if sub else SubMode.CONV
        match a, b:
            case Sort(i), Sort(j):
                return i == j
            case (Empty(), Empty()) | (Unit(), Unit()) | (Bool(), Bool()):
                return True
            case Pi(a1, b1), Pi(a2, b2):
                if not self.compare_ty(ctx, a1, a2, contra):
                    return False
                if sub:
                    return self.compare_ty(ctx.extend(a2), self.along(b1, a2, a1), b2, mode)
                return self.compare_ty(ctx.extend(a2), b1, b2, mode)
            case Sigma(a1, b1), Sigma(a2, b2):
                if not self.compare_ty(ctx, a1, a2, mode):
                    return False
                if sub:
                    return self.compare_ty(ctx.extend(a1), b1, self.along(b2, a1, a2), mode)
                return self.compare_ty(ctx.extend(a1), b1, b2, mode)
            case W(a1, b1), W(a2, b2):
                if not self.compare_ty(ctx, a1, a2, mode):
                    return False
                if sub:
                    return self.compare_ty(ctx.extend(a1), self.along(b2, a1, a2), b1, mode)
                return self.compare_ty(ctx.extend(a1), b1, b2, mode)
            case ListTy(a1), ListTy(a2):
                return self.compare_ty(ctx, a1, a2, mode)
            case Sum(a1, b1), Sum(a2, b2):
                return self.compare_ty(ctx, a1, a2, mode) and self.compare_ty(ctx, b1, b2, mode)
            case Id(a1, x1, y1), Id(a2, x2, y2):
                if not self.compare_ty(ctx, a1, a2, mode):
                    return False
                if sub:
                    return (self.conv_tm(ctx, self.coerce_term(a1, a2, x1), x2, a2)
                            and self.conv_tm(ctx, self.coerce_term(a1, a2, y1), y2, a2))
                return self.conv_tm(ctx, x1, x2, a1) and self.conv_tm(ctx, y1, y2, a1)
            case RecordTy(), RecordTy():
                if sub:
                    if not set(b.labels) <= set(a.labels):
                        return False
                elif a.labels != b.labels:
                    return False
                return all(self.compare_ty(ctx, a.get(l), t, mode) for l, t in b.rows)
        if is_neutral(a) and is_neutral(b):
            return self.neu_cmp(ctx, a, b) is not None
        return False

    # ---------------------------------------------------------------- terms

    def conv_tm(self, ctx: Context, t: Term, u: Term, ty: Term) -> bool:
        if t == u:
            return True
        t, u = self.whnf(t), self.whnf(u)
        if t == u:
            return True
        return self.conv_tm_red(ctx, t, u, self.whnf(ty))

    def conv_tm_red(self, ctx: Context, t: Term, u: Term, ty: Term) -> bool:
        if t == u:
            return True
        match ty:
            case Sort():
                return self.compare_ty_red(ctx, t, u, SubMode.CONV)
            case Pi(a, b):
                x = Var(0)
                return self.conv_tm(ctx.extend(a), App(shift(t, 1), x), App(shift(u, 1), x), b)
            case Sigma(a, b):
                return (self.conv_tm(ctx, Fst(t), Fst(u), a)
                        and self.conv_tm(ctx, Snd(t), Snd(u), instantiate(b, Fst(t))))
            case RecordTy(rows):
                return all(self.conv_tm(ctx, Proj(t, l), Proj(u, l), a) for l, a in rows)
            case Unit() if isinstance(t, UnitTm) or isinstance(u, UnitTm):
                return isinstance(t, UnitTm) and isinstance(u, UnitTm)
            case Bool() if isinstance(t, (TrueTm, FalseTm)) or isinstance(u, (TrueTm, FalseTm)):
                return type(t) is type(u)
            case ListTy(a) if not (is_compacted_or_neutral(t) and is_compacted_or_neutral(u)):
                match t, u:
                    case Nil(), Nil():
                        return True
                    case Cons(_, h1, t1), Cons(_, h2, t2):
                        return self.conv_tm(ctx, h1, h2, a) and self.conv_tm(ctx, t1, t2, ty)
                return False
            case W(a, b) if not (is_compacted_or_neutral(t) and is_compacted_or_neutral(u)):
                match t, u:
                    case Sup(_, x1, k1), Sup(_, x2, k2):
                        return (self.conv_tm(ctx, x1, x2, a)
                                and self.conv_tm(ctx, k1, k2, Pi(instantiate(b, x1), shift(ty, 1))))
                return False
            case Id() if not (is_compacted_or_neutral(t) and is_compacted_or_neutral(u)):
                return isinstance(t, Refl) and isinstance(u, Refl)
            case Sum(a, b) if not (is_compacted_or_neutral(t) and is_compacted_or_neutral(u)):
                match t, u:
                    case Inl(b1, v1), Inl(b2, v2):
                        return self.conv_ty(ctx, b1, b2) and self.conv_tm(ctx, v1, v2, a)
                    case Inr(a1, v1), Inr(a2, v2):
                        return self.conv_ty(ctx, a1, a2) and self.conv_tm(ctx, v1, v2, b)
                return False
        if is_compacted_or_neutral(t) and is_compacted_or_neutral(u):
            return self.cne_cmp(ctx, t, u, ty)
        return False

    # ------------------------------------------------------------- neutrals

    def neutral_type(self, ctx: Context, n: Term) -> Term:
        """Type of a neutral (or map/coe-compacted neutral), read off its spine."""
        match n:
            case Var(i):
                if i >= len(ctx):
                    raise TypingError(ErrorKind.UNBOUND_VARIABLE, f"index {i}")
                return ctx.lookup(i)
            case Map(_, _, dst, _, _):
                return former_type(dst)
            case Coe(_, dst, _):
                return dst
            case App(f, a):
                match self.whnf(self.neutral_type(ctx, f)):
                    case Pi(_, b):
                        return instantiate(b, a)
            case Fst(p):
                match self.whnf(self.neutral_type(ctx, p)):
                    case Sigma(a, _):
                        return a
            case Snd(p):
                match self.whnf(self.neutral_type(ctx, p)):
                    case Sigma(_, b):
                        return instantiate(b, Fst(p))
            case Proj(r, l):
                match self.whnf(self.neutral_type(ctx, r)):
                    case RecordTy() as rt if rt.get(l) is not None:
                        return rt.get(l)
            case IdInd(_, s, p, _):
                match self.whnf(self.neutral_type(ctx, s)):
                    case Id(_, x, y):
                        return instantiate(p, x, y, s)
            case EmptyInd(_, p):
                return p
            case ListInd() | WInd() | SumInd() | BoolInd() | UnitInd():
                return instantiate(n.motive, n.scrut)
        raise TypingError(ErrorKind.SHAPE_MISMATCH, "not a well-typed neutral term")

    def neu_cmp_red(self, ctx: Context, n: Term, m: Term):
        ty = self.neu_cmp(ctx, n, m)
        return None if ty is None else self.whnf(ty)

    def neu_cmp(self, ctx: Context, n: Term, m: Term):
        if n == m:
            return self.neutral_type(ctx, n)
        match n, m:
            case Var(i), Var(j):
                return ctx.lookup(i) if i == j and i < len(ctx) else None
            case App(f, a), App(g, b):
                match self.neu_cmp_red(ctx, f, g):
                    case Pi(dom, cod) if self.conv_tm(ctx, a, b, dom):
                        return instantiate(cod, a)
                return None
            case Fst(p), Fst(q):
                match self.neu_cmp_red(ctx, p, q):
                    case Sigma(a, _):
                        return a
                return None
            case Snd(p), Snd(q):
                match self.neu_cmp_red(ctx, p, q):
                    case Sigma(_, b):
                        return instantiate(b, Fst(p))
                return None
            case Proj(r, l), Proj(s, k) if l == k:
                match self.neu_cmp_red(ctx, r, s):
                    case RecordTy() as rt:
                        return rt.get(l)
                return None
            case ListInd(a, s, p, bn, bc), ListInd(a2, s2, p2, bn2, bc2):
                lt = ListTy(a)
                cons_ctx = ctx.extend(a, ListTy(shift(a, 1)), instantiate(p, Var(0), lift=2))
                cons_ty = instantiate(p, Cons(shift(a, 3), Var(2), Var(1)), lift=3)
                ok = (self.conv_ty(ctx, a, a2)
                      and self.cne_cmp(ctx, s, s2, lt)
                      and self.conv_ty(ctx.extend(lt), p, p2)
                      and self.conv_tm(ctx, bn, bn2, instantiate(p, Nil(a)))
                      and self.conv_tm(cons_ctx, bc, bc2, cons_ty))
                return instantiate(p, s) if ok else None
            case WInd(a, b, s, p, c), WInd(a2, b2, s2, p2, c2):
                wt = W(a, b)
                kids = Pi(b, shift(wt, 2))
                ih = Pi(shift(b, 1), instantiate(p, App(Var(1), Var(0)), lift=3))
                case_ty = instantiate(p, Sup(shift(b, 3, 1), Var(2), Var(1)), lift=3)
                ok = (self.conv_ty(ctx, a, a2)
                      and self.conv_ty(ctx.extend(a), b, b2)
                      and self.cne_cmp(ctx, s, s2, wt)
                      and self.conv_ty(ctx.extend(wt), p, p2)
                      and self.conv_tm(ctx.extend(a, kids, ih), c, c2, case_ty))
                return instantiate(p, s) if ok else None
            case IdInd(a, s, p, c), IdInd(a2, s2, p2, c2):
                st = self.whnf(self.neutral_type(ctx, s))
                if not isinstance(st, Id):
                    return None
                motive_ctx = ctx.extend(a, shift(a, 1), Id(shift(a, 2), Var(1), Var(0)))
                refl_ty = instantiate(p, Var(0), Var(0), Refl(shift(a, 1), Var(0)), lift=1)
                ok = (self.conv_ty(ctx, a, a2)
                      and self.cne_cmp(ctx, s, s2, st)
                      and self.conv_ty(motive_ctx, p, p2)
                      and self.conv_tm(ctx.extend(a), c, c2, refl_ty))
                return instantiate(p, st.lhs, st.rhs, s) if ok else None
            case SumInd(a, b, s, p, l, r), SumInd(a2, b2, s2, p2, l2, r2):
                st = Sum(a, b)
                ok = (self.conv_ty(ctx, a, a2) and self.conv_ty(ctx, b, b2)
                      and self.cne_cmp(ctx, s, s2, st)
                      and self.conv_ty(ctx.extend(st), p, p2)
                      and self.conv_tm(ctx.extend(a), l, l2,
                                       instantiate(p, Inl(shift(b, 1), Var(0)), lift=1))
                      and self.conv_tm(ctx.extend(b), r, r2,
                                       instantiate(p, Inr(shift(a, 1), Var(0)), lift=1)))
                return instantiate(p, s) if ok else None
            case BoolInd(s, p, x, y), BoolInd(s2, p2, x2, y2):
                ok = (self.cne_cmp(ctx, s, s2, BOOL)
                      and self.conv_ty(ctx.extend(BOOL), p, p2)
                      and self.conv_tm(ctx, x, x2, instantiate(p, TT))
                      and self.conv_tm(ctx, y, y2, instantiate(p, FF)))
                return instantiate(p, s) if ok else None
            case UnitInd(s, p, c), UnitInd(s2, p2, c2):
                ok = (self.cne_cmp(ctx, s, s2, UNIT)
                      and self.conv_ty(ctx.extend(UNIT), p, p2)
                      and self.conv_tm(ctx, c, c2, instantiate(p, STAR)))
                return instantiate(p, s) if ok else None
            case EmptyInd(s, p), EmptyInd(s2, p2):
                ok = self.cne_cmp(ctx, s, s2, EMPTY) and self.conv_ty(ctx, p, p2)
                return p if ok else None
        return None

    def cne_cmp(self, ctx: Context, c: Term, d: Term, ty: Term) -> bool:
        """Compare two possibly map-compacted neutrals at the whnf type ``ty``."""
        return self.cne_cmp_map(ctx, c, d, ty)

    def cne_cmp_map(self, ctx, c, d, ty):
        if c == d:
            return True
        n, m = unmap(c), unmap(d)
        if not (is_neutral(n) and is_neutral(m)):
            return False
        src = self.neu_cmp_red(ctx, n, m)
        if src is None:
            return False
        if not (isinstance(c, Map) or isinstance(d, Map)):
            return True
        c1, d1 = shift(c, 1), shift(d, 1)
        x = Var(0)
        match ty, src:
            case (ListTy(b), ListTy(a)) | (Id(b, _, _), Id(a, _, _)):
                return self.conv_tm(ctx.extend(a), unmapfun(c1, x), unmapfun(d1, x), shift(b, 1))
            case Sum(a2, b2), Sum(a, b):
                return (self.conv_tm(ctx.extend(a), unmapfun(c1, x), unmapfun(d1, x), shift(a2, 1))
                        and self.conv_tm(ctx.extend(b), unmapfun(c1, x, 1), unmapfun(d1, x, 1),
                                         shift(b2, 1)))
            case W(a2, b2), W(a, b):
                if not self.conv_tm(ctx.extend(a), unmapfun(c1, x), unmapfun(d1, x), shift(a2, 1)):
                    return False
                arity = instantiate(b2, unmapfun(c1, x), lift=1)
                return self.conv_tm(ctx.extend(a, arity), _arity_back(c), _arity_back(d),
                                    shift(b, 1))
        return False


def _arity_back(c):
    """Second W component of ``c`` at the fresh label ``Var(1)``, applied to ``Var(0)``."""
    if isinstance(c, Map):
        return App(instantiate(c.fn.parts[1], Var(1), lift=2), Var(0))
    return Var(0)
