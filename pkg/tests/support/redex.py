"""Raw terms with a redex planted at the root, one shape per rule family,
so step/oracle comparisons see every rule rather than mostly stuck terms."""
from __future__ import annotations

from fmltt import syntax as S
from fmltt.syntax import (
    App, Coe, Cons, Dom, Former, Fst, Inl, Inr, Lam, ListTy, Map, Morphism,
    Nil, Pair, Pi, Proj, RecordTm, RecordTy, Refl, Sigma, Snd, Sup, Var,
)

from .raw import LABELS, raw_term

_NEUTRAL_HEAD = lambda ch, scope: Var(ch.integers(0, scope - 1))


def _ctor(ch, F, r):
    """A constructor of the inductive ``F`` (or a neutral) built from ``r``."""
    options = {
        Former.LIST: [lambda: Nil(r()), lambda: Cons(r(), r(), r())],
        Former.SUM: [lambda: Inl(r(), r()), lambda: Inr(r(), r())],
        Former.ID: [lambda: Refl(r(), r())],
        Former.W: [lambda: Sup(r(1), r(), r())],
    }[F]
    return ch.choice(options)()


def planted(ch, scope=3, depth=2):
    r = lambda k=0: raw_term(ch, scope + k, depth)
    dom = lambda F: Dom(F, tuple(r(k) for k in S.DOM_BINDERS[F]))
    hom = lambda F: Morphism(F, tuple(r(k) for k in S.HOM_BINDERS[F]))
    neutral = lambda: App(_NEUTRAL_HEAD(ch, scope), r()) if ch.boolean() else _NEUTRAL_HEAD(ch, scope)
    inductive = (Former.LIST, Former.SUM, Former.ID, Former.W)
    shape = ch.integers(0, 11)
    if shape == 0:
        return App(Lam(r(), r(1)), r())
    if shape == 1:
        return App(Map(Former.PI, dom(Former.PI), dom(Former.PI), hom(Former.PI), r()), r())
    if shape == 2:
        return App(Coe(Pi(r(), r(1)), Pi(r(), r(1)), r()), r())
    if shape == 3:
        proj = ch.choice([Fst, Snd])
        inner = ch.choice([
            lambda: Pair(r(), r(), r(1)),
            lambda: Map(Former.SIGMA, dom(Former.SIGMA), dom(Former.SIGMA), hom(Former.SIGMA), r()),
            lambda: Coe(Sigma(r(), r(1)), Sigma(r(), r(1)), r()),
        ])()
        return proj(inner)
    if shape == 4:
        labels = sorted({ch.choice(LABELS) for _ in range(3)})
        l = ch.choice(labels + [ch.choice(LABELS)])
        if ch.boolean():
            return Proj(RecordTm(tuple((x, r()) for x in labels)), l)
        rt = lambda: RecordTy(tuple((x, r()) for x in labels if ch.boolean(0.8)))
        return Proj(Coe(rt(), rt(), r()), l)
    if shape in (5, 6):
        F = ch.choice(inductive)
        arg = _ctor(ch, F, r) if shape == 5 else Map(F, dom(F), dom(F), hom(F), neutral())
        return Map(F, dom(F), dom(F), hom(F), arg)
    if shape in (7, 8):
        F = ch.choice(inductive)
        ty = {
            Former.LIST: lambda: ListTy(r()),
            Former.SUM: lambda: S.Sum(r(), r()),
            Former.ID: lambda: S.Id(r(), r(), r()),
            Former.W: lambda: S.W(r(), r(1)),
        }[F]
        if shape == 7:
            return Coe(ty(), ty(), _ctor(ch, F, r))
        return Coe(ty(), ty(), Coe(ty(), ty(), neutral()))
    if shape == 9:
        base = ch.choice([S.BOOL, S.UNIT, S.EMPTY, S.Sort(0)])
        return Coe(base, base, r())
    # eliminators over constructors
    elim = ch.choice([
        lambda: S.ListInd(r(), _ctor(ch, Former.LIST, r), r(1), r(), r(3)),
        lambda: S.WInd(r(), r(1), _ctor(ch, Former.W, r), r(1), r(3)),
        lambda: S.IdInd(r(), _ctor(ch, Former.ID, r), r(3), r(1)),
        lambda: S.SumInd(r(), r(), _ctor(ch, Former.SUM, r), r(1), r(1), r(1)),
        lambda: S.BoolInd(ch.choice([S.TT, S.FF]), r(1), r(), r()),
        lambda: S.UnitInd(S.STAR, r(1), r()),
    ])
    return elim()
