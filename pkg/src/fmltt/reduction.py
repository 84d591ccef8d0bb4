"""Weak-head reduction for terms with ``map`` and ``coe`` nodes.

:func:`step` performs exactly one reduction at the head.  Rules are tried in
a fixed order, which makes the relation deterministic:

1. congruence on the principal argument of an eliminator, then the
   eliminator's computation rule once that argument is in whnf;
2. for ``map``/``coe`` nodes: reduce the type annotations (coe only), fire
   constructor rules, reduce the body, and finally compact two stacked layers
   over a neutral.

``coe`` between negative types (Pi, Sigma, records) is a value; it computes
only when observed by application or projection.
"""
from __future__ import annotations

import enum

from .syntax import (
    App, Bool, BoolInd, Coe, Cons, Empty, EmptyInd, FalseTm, Former, Fst, Id,
    IdInd, Inl, Inr, Lam, ListInd, ListTy, Map, Nil, Pair, Pi, Proj, RecordTm,
    RecordTy, Refl, Sigma, Snd, Sort, Sum, SumInd, Sup, Term, TrueTm,
    TYPE_FORMERS, Unit, UnitInd, UnitTm, Var, W, WInd, instantiate,
    morphism_compose, shift,
)

__all__ = ["DEFAULT_FUEL", "FuelExhausted", "WhnfClass", "step", "whnf",
           "classify", "is_neutral", "is_compacted_or_neutral", "is_whnf"]

DEFAULT_FUEL = 1_000_000


class FuelExhausted(Exception):
    def __init__(self, term, fuel):
        super().__init__(f"no weak-head normal form within {fuel} steps")
        self.term = term
        self.fuel = fuel


class WhnfClass(enum.Enum):
    CANONICAL = "canonical"
    NEUTRAL = "neutral"
    COMPACTED = "compacted"


POSITIVE = (Sort, ListTy, W, Id, Sum, Empty, Unit, Bool)
NEGATIVE = (Pi, Sigma, RecordTy)
BASE = (Sort, Empty, Unit, Bool)
_VALUES = TYPE_FORMERS + (Lam, Pair, Nil, Cons, Sup, Refl, Inl, Inr, UnitTm,
                          TrueTm, FalseTm, RecordTm)
_POSITIVE_FORMERS = (Former.LIST, Former.W, Former.ID, Former.SUM)
_ELIMS = (ListInd, WInd, IdInd, SumInd, BoolInd, UnitInd, EmptyInd)


def is_neutral(t: Term) -> bool:
    while True:
        match t:
            case Var():
                return True
            case App(fn, _):
                t = fn
            case Fst(p) | Snd(p):
                t = p
            case Proj(r, _):
                t = r
            case ListInd() | WInd() | IdInd() | SumInd() | BoolInd() | UnitInd() | EmptyInd():
                return is_compacted_or_neutral(t.scrut)
            case _:
                return False


def _pos_or_ne(ty):
    return isinstance(ty, POSITIVE) or is_neutral(ty)


def _is_compacted(t):
    match t:
        case Map(former, _, _, _, arg):
            return former in _POSITIVE_FORMERS and is_neutral(arg)
        case Coe(a, b, body):
            return (is_whnf(a) and is_whnf(b) and _pos_or_ne(a) and _pos_or_ne(b)
                    and is_neutral(body) and not (a == b and isinstance(a, BASE)))
    return False


def is_compacted_or_neutral(t: Term) -> bool:
    return is_neutral(t) or _is_compacted(t)


def classify(t: Term):
    """Whnf class of ``t``, or ``None`` when ``t`` is not a weak-head normal form."""
    if isinstance(t, _VALUES):
        return WhnfClass.CANONICAL
    if is_neutral(t):
        return WhnfClass.NEUTRAL
    if _is_compacted(t):
        return WhnfClass.COMPACTED
    match t:
        case Map(former=Former.PI | Former.SIGMA):
            return WhnfClass.CANONICAL
        case Coe(a, b, body) if isinstance(a, NEGATIVE) and isinstance(b, NEGATIVE):
            if is_whnf(body):
                return WhnfClass.CANONICAL
    return None


def is_whnf(t: Term) -> bool:
    return classify(t) is not None


def step(t: Term):
    """One head reduction step, or ``None`` if no rule applies."""
    match t:
        case App(fn, arg):
            r = step(fn)
            if r is not None:
                return App(r, arg)
            match fn:
                case Lam(_, body):
                    return instantiate(body, arg)
                case Map(Former.PI, _, _, hom, h):
                    f, g = hom.parts
                    return App(instantiate(g, arg), App(h, App(f, arg)))
                case Coe(Pi(a1, b1), Pi(a2, b2), f):
                    back = Coe(a2, a1, arg)
                    return Coe(instantiate(b1, back), instantiate(b2, arg), App(f, back))
            return None

        case Fst(p):
            r = step(p)
            if r is not None:
                return Fst(r)
            match p:
                case Pair(a, _, _):
                    return a
                case Map(Former.SIGMA, _, _, hom, q):
                    return App(hom.parts[0], Fst(q))
                case Coe(Sigma(a1, _), Sigma(a2, _), q):
                    return Coe(a1, a2, Fst(q))
            return None

        case Snd(p):
            r = step(p)
            if r is not None:
                return Snd(r)
            match p:
                case Pair(_, b, _):
                    return b
                case Map(Former.SIGMA, _, _, hom, q):
                    return App(instantiate(hom.parts[1], Fst(q)), Snd(q))
                case Coe(Sigma(a1, b1), Sigma(a2, b2), q):
                    return Coe(instantiate(b1, Fst(q)),
                               instantiate(b2, Coe(a1, a2, Fst(q))), Snd(q))
            return None

        case Proj(rec, label):
            r = step(rec)
            if r is not None:
                return Proj(r, label)
            match rec:
                case RecordTm():
                    return rec.get(label)
                case Coe(RecordTy() as src, RecordTy() as dst, q):
                    a, b = src.get(label), dst.get(label)
                    if a is not None and b is not None:
                        return Coe(a, b, Proj(q, label))
            return None

        case Map(former, src, dst, hom, arg):
            if former in (Former.PI, Former.SIGMA):
                return None
            r = _map_ctor(t)
            if r is not None:
                return r
            r = step(arg)
            if r is not None:
                return Map(former, src, dst, hom, r)
            if isinstance(arg, Map) and arg.former is former and is_neutral(arg.arg):
                return Map(former, arg.src, dst,
                           morphism_compose(hom, arg.fn, arg.src, dst), arg.arg)
            return None

        case Coe(a, b, body):
            r = step(a)
            if r is not None:
                return Coe(r, b, body)
            r = step(b)
            if r is not None:
                return Coe(a, r, body)
            if a == b and isinstance(a, BASE):
                return body
            r = _coe_ctor(a, b, body)
            if r is not None:
                return r
            r = step(body)
            if r is not None:
                return Coe(a, b, r)
            if (isinstance(body, Coe) and is_neutral(body.body)
                    and all(_pos_or_ne(x) for x in (a, b, body.src, body.dst))):
                return Coe(body.src, b, body.body)
            return None

    if isinstance(t, _ELIMS):
        r = step(t.scrut)
        if r is not None:
            return _with_scrut(t, r)
        return _iota(t)
    return None


def _with_scrut(t, s):
    match t:
        case ListInd(a, _, p, n, c):
            return ListInd(a, s, p, n, c)
        case WInd(a, b, _, p, c):
            return WInd(a, b, s, p, c)
        case IdInd(a, _, p, c):
            return IdInd(a, s, p, c)
        case SumInd(a, b, _, p, l, r):
            return SumInd(a, b, s, p, l, r)
        case BoolInd(_, p, x, y):
            return BoolInd(s, p, x, y)
        case UnitInd(_, p, c):
            return UnitInd(s, p, c)
        case EmptyInd(_, p):
            return EmptyInd(s, p)


def _iota(t):
    match t:
        case ListInd(a, Nil(), p, n, c):
            return n
        case ListInd(a, Cons(_, h, tl), p, n, c):
            return instantiate(c, h, tl, ListInd(a, tl, p, n, c))
        case WInd(a, b, Sup(_, x, k), p, c):
            up = shift(t, 1)
            below = Lam(instantiate(b, x),
                        WInd(up.dom, up.cod, App(up.scrut.kids, Var(0)), up.motive, up.case))
            return instantiate(c, x, k, below)
        case IdInd(_, Refl(_, x), _, c):
            return instantiate(c, x)
        case SumInd(_, _, Inl(_, x), _, l, _):
            return instantiate(l, x)
        case SumInd(_, _, Inr(_, x), _, _, r):
            return instantiate(r, x)
        case BoolInd(TrueTm(), _, x, _):
            return x
        case BoolInd(FalseTm(), _, _, y):
            return y
        case UnitInd(UnitTm(), _, c):
            return c
    return None


def _map_ctor(t):
    former, dst, hom, arg = t.former, t.dst, t.fn, t.arg
    f = hom.parts[0]
    match former, arg:
        case Former.LIST, Nil():
            return Nil(dst.parts[0])
        case Former.LIST, Cons(_, h, tl):
            return Cons(dst.parts[0], App(f, h), Map(former, t.src, dst, hom, tl))
        case Former.ID, Refl(_, x):
            return Refl(dst.parts[0], App(f, x))
        case Former.SUM, Inl(_, x):
            return Inl(dst.parts[1], App(f, x))
        case Former.SUM, Inr(_, x):
            return Inr(dst.parts[0], App(hom.parts[1], x))
        case Former.W, Sup(_, x, k):
            label = App(f, x)
            up = shift(Map(former, t.src, dst, hom, k), 1)
            back = App(shift(instantiate(hom.parts[1], x), 1), Var(0))
            kids = Lam(instantiate(dst.parts[1], label),
                       Map(former, up.src, up.dst, up.fn, App(up.arg, back)))
            return Sup(dst.parts[1], label, kids)
    return None


def _coe_ctor(a, b, body):
    match a, b, body:
        case ListTy(), ListTy(b1), Nil():
            return Nil(b1)
        case ListTy(a1), ListTy(b1), Cons(_, h, tl):
            return Cons(b1, Coe(a1, b1, h), Coe(a, b, tl))
        case Sum(a1, _), Sum(a2, b2), Inl(_, x):
            return Inl(b2, Coe(a1, a2, x))
        case Sum(_, b1), Sum(a2, b2), Inr(_, x):
            return Inr(a2, Coe(b1, b2, x))
        case Id(a1, _, _), Id(a2, _, _), Refl(_, x):
            return Refl(a2, Coe(a1, a2, x))
        case W(a1, b1), W(a2, b2), Sup(_, x, k):
            label = Coe(a1, a2, x)
            arity = instantiate(b2, label)
            back = Coe(shift(arity, 1), shift(instantiate(b1, x), 1), Var(0))
            kids = Lam(arity, Coe(shift(a, 1), shift(b, 1), App(shift(k, 1), back)))
            return Sup(b2, label, kids)
    return None


def whnf(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    n = fuel
    while True:
        r = step(t)
        if r is None:
            return t
        n -= 1
        if n < 0:
            raise FuelExhausted(t, fuel)
        t = r
