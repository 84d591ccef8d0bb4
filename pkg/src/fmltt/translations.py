"""Translations between the three systems.

* :func:`erase` drops every ``coe`` node, mapping explicit-coercion terms to
  subsumptive ones.
* :func:`elaborate` goes the other way.  It re-runs the typing rules on a
  subsumptive term and inserts a ``coe`` wherever an inferred type is only
  a subtype of the expected one.
* :class:`Translator` maps explicit-coercion terms into the ``map`` system.
  Records become right-nested pairs.  A coercion becomes either nothing
  (:data:`STAR`) or a function built from ``map``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .coe import CoeChecker
from .errors import ErrorKind, TypingError
from .reduction import DEFAULT_FUEL, is_neutral
from .syntax import (
    App, Bool, BoolInd, Coe, Context, Dom, Empty, Former, Fst, Id, IdInd,
    Lam, ListInd, ListTy, Map, Morphism, Pair, Pi, Proj, RecordTm, RecordTy,
    Sigma, Snd, Sort, Sum, SumInd, Sup, Term, Unit, UnitInd, Var, W, WInd,
    BOOL, STAR as UNIT_TM, UNIT, instantiate, map_subterms, shift,
)
from .syntax import RAW

__all__ = ["erase", "Elaborator", "elaborate", "Star", "STAR", "Fn", "NoRule",
           "Untranslatable", "Translator", "translate", "translate_coercion"]


def erase(t: Term) -> Term:
    if isinstance(t, Coe):
        return erase(t.body)
    return map_subterms(t, lambda c, _: erase(c))


class Elaborator(CoeChecker):
    """Type-checks a coercion-free term with subsumption and returns the same
    term with explicit coercions at every subsumption point."""

    system = "sub"
    allows_coe = False

    def coerce(self, ctx, t, actual, expected):
        if self.conv_ty(ctx, actual, expected):
            return t
        if self.subtype(ctx, actual, expected):
            return Coe(actual, expected, t)
        raise TypingError(ErrorKind.SUBTYPE_FAILED, "not a subtype of the expected type",
                          expected, actual)

    def elaborate(self, ctx, t, ty=None):
        """Elaborated ``(term, type)``; ``ty`` is elaborated too when given."""
        if ty is None:
            return self._infer(ctx, t)
        ty = self.wf_type(ctx, ty)
        return self.check(ctx, t, ty), ty


def elaborate(ctx: Context, t: Term, ty: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Elaborate ``t`` against ``ty``; ``ctx`` and ``ty`` are already explicit."""
    return Elaborator(fuel).check(ctx, t, ty)


class Star:
    """The coercion between two types is the identity and translates to nothing."""
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "STAR"


STAR = Star()


@dataclass(frozen=True)
class Fn:
    fn: Term


class NoRule(Exception):
    """No translation rule covers this pair of types."""


class Untranslatable(Exception):
    """The term lies outside the translation's domain."""


def _idfun(a):
    return Lam(a, Var(0))


def record_type(tys):
    """Right-nested Sigma type for the translated row types ``tys``."""
    if not tys:
        return UNIT
    if len(tys) == 1:
        return tys[0]
    return Sigma(tys[0], shift(record_type(tys[1:]), 1))


def record_tuple(vals, tys):
    if not vals:
        return UNIT_TM
    if len(vals) == 1:
        return vals[0]
    return Pair(vals[0], record_tuple(vals[1:], tys[1:]), shift(record_type(tys[1:]), 1))


def record_proj(p, n, i):
    """Component ``i`` of an ``n``-field record translated to nested pairs."""
    for _ in range(i):
        p = Snd(p)
    return Fst(p) if i < n - 1 else p


class Translator:
    """Translates explicit-coercion terms into the ``map`` system.

    The translation is type-directed in a few places (record projections and
    the annotations on pairs and tree nodes), for which it asks a checker for
    the explicit system.
    """

    def __init__(self, fuel: int = DEFAULT_FUEL):
        self.checker = CoeChecker(fuel)

    def whnf(self, t):
        return self.checker.whnf(t)

    def infer(self, ctx, t):
        return self.checker.infer(ctx, t)

    # ------------------------------------------------------------- coercions

    def coercion(self, ctx: Context, a: Term, b: Term):
        a, b = self.whnf(a), self.whnf(b)
        tr = self.term
        match a, b:
            case Sort(i), Sort(j) if i == j:
                return STAR
            case (Empty(), Empty()) | (Unit(), Unit()) | (Bool(), Bool()):
                return STAR
            case ListTy(a1), ListTy(b1):
                c = self.coercion(ctx, a1, b1)
                if c is STAR:
                    return STAR
                return self._map_fn(ctx, a, Former.LIST, (tr(ctx, a1),), (tr(ctx, b1),), (c.fn,))
            case Pi(a1, b1), Pi(a2, b2):
                dom = self.coercion(ctx, a2, a1)
                inner = ctx.extend(a2)
                cod = self.coercion(inner, self.checker.along(b1, a2, a1), b2)
                if dom is STAR and cod is STAR:
                    return STAR
                f = dom.fn if dom is not STAR else _idfun(tr(ctx, a2))
                g = cod.fn if cod is not STAR else _idfun(tr(inner, b2))
                return self._map_fn(ctx, a, Former.PI, (tr(ctx, a1), tr(ctx.extend(a1), b1)),
                                    (tr(ctx, a2), tr(inner, b2)), (f, g))
            case Sigma(a1, b1), Sigma(a2, b2):
                dom = self.coercion(ctx, a1, a2)
                inner = ctx.extend(a1)
                cod = self.coercion(inner, b1, self.checker.along(b2, a1, a2))
                if dom is STAR and cod is STAR:
                    return STAR
                f = dom.fn if dom is not STAR else _idfun(tr(ctx, a1))
                g = cod.fn if cod is not STAR else _idfun(tr(inner, b1))
                return self._map_fn(ctx, a, Former.SIGMA, (tr(ctx, a1), tr(inner, b1)),
                                    (tr(ctx, a2), tr(ctx.extend(a2), b2)), (f, g))
            case W(a1, b1), W(a2, b2):
                dom = self.coercion(ctx, a1, a2)
                inner = ctx.extend(a1)
                cod = self.coercion(inner, self.checker.along(b2, a1, a2), b1)
                if dom is STAR and cod is STAR:
                    return STAR
                f = dom.fn if dom is not STAR else _idfun(tr(ctx, a1))
                g = cod.fn if cod is not STAR else _idfun(tr(inner, b1))
                return self._map_fn(ctx, a, Former.W, (tr(ctx, a1), tr(inner, b1)),
                                    (tr(ctx, a2), tr(ctx.extend(a2), b2)), (f, g))
            case Sum(a1, b1), Sum(a2, b2):
                left, right = self.coercion(ctx, a1, a2), self.coercion(ctx, b1, b2)
                if left is STAR and right is STAR:
                    return STAR
                f = left.fn if left is not STAR else _idfun(tr(ctx, a1))
                g = right.fn if right is not STAR else _idfun(tr(ctx, b1))
                return self._map_fn(ctx, a, Former.SUM, (tr(ctx, a1), tr(ctx, b1)),
                                    (tr(ctx, a2), tr(ctx, b2)), (f, g))
            case Id(a1, x1, y1), Id(a2, x2, y2):
                c = self.coercion(ctx, a1, a2)
                if c is STAR:
                    return STAR
                return self._map_fn(ctx, a, Former.ID, (tr(ctx, a1), tr(ctx, x1), tr(ctx, y1)),
                                    (tr(ctx, a2), tr(ctx, x2), tr(ctx, y2)), (c.fn,))
            case RecordTy(), RecordTy() if set(b.labels) <= set(a.labels):
                comps = [self.coercion(ctx, a.get(l), t) for l, t in b.rows]
                if a.labels == b.labels and all(c is STAR for c in comps):
                    return STAR
                src = tr(ctx, a)
                p = Var(0)
                vals = []
                for (l, _), c in zip(b.rows, comps):
                    v = record_proj(p, len(a.rows), a.labels.index(l))
                    vals.append(v if c is STAR else App(shift(c.fn, 1), v))
                tys = [shift(tr(ctx, t), 1) for _, t in b.rows]
                return Fn(Lam(src, record_tuple(vals, tys)))
        if is_neutral(a) and is_neutral(b):
            return STAR
        raise NoRule(f"no coercion rule from {a} to {b}")

    def _map_fn(self, ctx, a, former, src, dst, fns):
        """``λx:⟦a⟧. map_former fns x``"""
        up = lambda ts: tuple(shift(t, 1) for t in ts)
        src_up = up(src)
        if former in (Former.PI, Former.SIGMA, Former.W):
            src_up = (shift(src[0], 1), shift(src[1], 1, 1))
            dst_up = (shift(dst[0], 1), shift(dst[1], 1, 1))
            fns_up = (shift(fns[0], 1), shift(fns[1], 1, 1))
        else:
            dst_up, fns_up = up(dst), up(fns)
        body = Map(former, Dom(former, src_up), Dom(former, dst_up), Morphism(former, fns_up), Var(0))
        return Fn(Lam(self.term(ctx, a), body))

    # ------------------------------------------------------------------ terms

    def context(self, ctx: Context) -> Context:
        out, prefix = Context(), Context()
        for ty in ctx.types:
            out = out.extend(self.term(prefix, ty))
            prefix = prefix.extend(ty)
        return out

    def term(self, ctx: Context, t: Term) -> Term:
        match t:
            case Coe(a, b, body):
                c = self.coercion(ctx, a, b)
                inner = self.term(ctx, body)
                return inner if c is STAR else App(c.fn, inner)
            case Map():
                raise Untranslatable("map nodes are not part of the source system")
            case RecordTy(rows):
                return record_type([self.term(ctx, a) for _, a in rows])
            case RecordTm(rows):
                vals = [self.term(ctx, u) for _, u in rows]
                tys = [self.term(ctx, self.infer(ctx, u)) for _, u in rows]
                return record_tuple(vals, tys)
            case Proj(r, label):
                rty = self.whnf(self.infer(ctx, r))
                if not isinstance(rty, RecordTy) or rty.get(label) is None:
                    raise Untranslatable(f"projection .{label} from a non-record")
                return record_proj(self.term(ctx, r), len(rty.rows), rty.labels.index(label))
        scopes = self._scopes(ctx, t)
        args = []
        for name, kind in t.layout:
            v = getattr(t, name)
            if kind is RAW:
                args.append(v)
            elif kind == 0:
                args.append(self.term(ctx, v))
            else:
                args.append(self.term(ctx.extend(*scopes[name]), v))
        return type(t)(*args)

    def _scopes(self, ctx, t):
        """Types of the variables bound above each binding field of ``t``."""
        match t:
            case Pi(a, _) | Sigma(a, _) | W(a, _):
                return {"cod": (a,)}
            case Lam(a, _):
                return {"body": (a,)}
            case Pair(x, _, _):
                return {"cod": (self.infer(ctx, x),)}
            case Sup(_, x, _):
                return {"cod": (self.infer(ctx, x),)}
            case ListInd(a, _, p, _, _):
                return {"motive": (ListTy(a),),
                        "cons_case": (a, ListTy(shift(a, 1)), instantiate(p, Var(0), lift=2))}
            case WInd(a, b, _, p, _):
                wt = W(a, b)
                return {"cod": (a,), "motive": (wt,),
                        "case": (a, Pi(b, shift(wt, 2)),
                                 Pi(shift(b, 1), instantiate(p, App(Var(1), Var(0)), lift=3)))}
            case IdInd(a, _, _, _):
                return {"motive": (a, shift(a, 1), Id(shift(a, 2), Var(1), Var(0))),
                        "refl_case": (a,)}
            case SumInd(a, b, _, _, _, _):
                return {"motive": (Sum(a, b),), "inl_case": (a,), "inr_case": (b,)}
            case UnitInd():
                return {"motive": (UNIT,)}
            case BoolInd():
                return {"motive": (BOOL,)}
        return {}


def translate(ctx: Context, t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    return Translator(fuel).term(ctx, t)


def translate_coercion(ctx: Context, a: Term, b: Term, fuel: int = DEFAULT_FUEL):
    return Translator(fuel).coercion(ctx, a, b)
