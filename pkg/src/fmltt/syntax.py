"""De Bruijn terms shared by every system, plus shifting, substitution and
the functorial structure (domain instances and morphisms) used by ``map``.

Variables are de Bruijn indices: ``Var(0)`` is the innermost binder.  Every
node class declares a ``layout`` listing its fields together with how many
binders each field sits under, so traversals are written once in
:func:`map_subterms`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, ClassVar

__all__ = [
    "Former", "Dom", "Morphism", "Term", "Var", "Sort", "Pi", "Lam", "App",
    "Sigma", "Pair", "Fst", "Snd", "ListTy", "Nil", "Cons", "ListInd", "W",
    "Sup", "WInd", "Id", "Refl", "IdInd", "Sum", "Inl", "Inr", "SumInd",
    "Empty", "EmptyInd", "Unit", "UnitTm", "UnitInd", "Bool", "TrueTm",
    "FalseTm", "BoolInd", "RecordTy", "RecordTm", "Proj", "Map", "Coe",
    "EMPTY", "UNIT", "STAR", "BOOL", "TT", "FF", "Subst", "Context",
    "map_subterms", "shift", "subst_apply", "instantiate", "struct_eq",
    "former_type", "morphism_identity", "morphism_compose", "arrow", "size",
    "TYPE_FORMERS",
]

RAW = "raw"     # not a term (index, level, label, former)
ROWS = "rows"   # record rows: tuple of (label, term)
HOM = "hom"     # Dom / Morphism, binder layout depends on the former


class Former(enum.Enum):
    LIST = "List"
    PI = "Pi"
    SIGMA = "Sigma"
    W = "W"
    ID = "Id"
    SUM = "Sum"


# binders above each component of a domain instance / morphism
DOM_BINDERS = {
    Former.LIST: (0,),
    Former.PI: (0, 1),
    Former.SIGMA: (0, 1),
    Former.W: (0, 1),
    Former.ID: (0, 0, 0),
    Former.SUM: (0, 0),
}
HOM_BINDERS = {
    Former.LIST: (0,),
    Former.PI: (0, 1),
    Former.SIGMA: (0, 1),
    Former.W: (0, 1),
    Former.ID: (0,),
    Former.SUM: (0, 0),
}


class Term:
    __slots__ = ()
    layout: ClassVar[tuple] = ()

    def __str__(self):
        from .surface.printer import show
        return show(self)


def _node(*layout):
    def deco(cls):
        cls = dataclass(frozen=True, slots=True)(cls)
        cls.layout = layout
        return cls
    return deco


@dataclass(frozen=True, slots=True)
class Dom:
    """Arguments of a type former: ``(A)`` for List, ``(A, x.B)`` for
    Pi/Sigma/W, ``(A, a, b)`` for Id and ``(A, B)`` for Sum."""
    former: Former
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != len(DOM_BINDERS[self.former]):
            raise ValueError(f"{self.former.value} instance expects "
                             f"{len(DOM_BINDERS[self.former])} parts")

    @property
    def binders(self):
        return DOM_BINDERS[self.former]


@dataclass(frozen=True, slots=True)
class Morphism:
    """Components of a morphism between two instances of a type former.

    List/Id carry one function.  Pi, Sigma and W carry ``(f, g)`` where ``g``
    sits under one binder ranging over a domain element; Sum carries ``(f, g)``
    with no binder.
    """
    former: Former
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != len(HOM_BINDERS[self.former]):
            raise ValueError(f"{self.former.value} morphism expects "
                             f"{len(HOM_BINDERS[self.former])} parts")

    @property
    def binders(self):
        return HOM_BINDERS[self.former]


@_node(("index", RAW))
class Var(Term):
    index: int


@_node(("level", RAW))
class Sort(Term):
    level: int


@_node(("dom", 0), ("cod", 1))
class Pi(Term):
    dom: Term
    cod: Term


@_node(("dom", 0), ("body", 1))
class Lam(Term):
    dom: Term
    body: Term


@_node(("fn", 0), ("arg", 0))
class App(Term):
    fn: Term
    arg: Term


@_node(("dom", 0), ("cod", 1))
class Sigma(Term):
    dom: Term
    cod: Term


@_node(("fst", 0), ("snd", 0), ("cod", 1))
class Pair(Term):
    fst: Term
    snd: Term
    cod: Term


@_node(("pair", 0))
class Fst(Term):
    pair: Term


@_node(("pair", 0))
class Snd(Term):
    pair: Term


@_node(("elem", 0))
class ListTy(Term):
    elem: Term


@_node(("elem", 0))
class Nil(Term):
    elem: Term


@_node(("elem", 0), ("head", 0), ("tail", 0))
class Cons(Term):
    elem: Term
    head: Term
    tail: Term


@_node(("elem", 0), ("scrut", 0), ("motive", 1), ("nil_case", 0),
       ("cons_case", 3))
class ListInd(Term):
    elem: Term
    scrut: Term
    motive: Term
    nil_case: Term
    cons_case: Term


@_node(("dom", 0), ("cod", 1))
class W(Term):
    dom: Term
    cod: Term


@_node(("cod", 1), ("label", 0), ("kids", 0))
class Sup(Term):
    cod: Term
    label: Term
    kids: Term


@_node(("dom", 0), ("cod", 1), ("scrut", 0), ("motive", 1), ("case", 3))
class WInd(Term):
    dom: Term
    cod: Term
    scrut: Term
    motive: Term
    case: Term


@_node(("ty", 0), ("lhs", 0), ("rhs", 0))
class Id(Term):
    ty: Term
    lhs: Term
    rhs: Term


@_node(("ty", 0), ("point", 0))
class Refl(Term):
    ty: Term
    point: Term


@_node(("ty", 0), ("scrut", 0), ("motive", 3), ("refl_case", 1))
class IdInd(Term):
    ty: Term
    scrut: Term
    motive: Term
    refl_case: Term


@_node(("left", 0), ("right", 0))
class Sum(Term):
    left: Term
    right: Term


@_node(("right", 0), ("val", 0))
class Inl(Term):
    right: Term
    val: Term


@_node(("left", 0), ("val", 0))
class Inr(Term):
    left: Term
    val: Term


@_node(("left", 0), ("right", 0), ("scrut", 0), ("motive", 1),
       ("inl_case", 1), ("inr_case", 1))
class SumInd(Term):
    left: Term
    right: Term
    scrut: Term
    motive: Term
    inl_case: Term
    inr_case: Term


@_node()
class Empty(Term):
    pass


@_node(("scrut", 0), ("motive", 0))
class EmptyInd(Term):
    scrut: Term
    motive: Term


@_node()
class Unit(Term):
    pass


@_node()
class UnitTm(Term):
    pass


@_node(("scrut", 0), ("motive", 1), ("case", 0))
class UnitInd(Term):
    scrut: Term
    motive: Term
    case: Term


@_node()
class Bool(Term):
    pass


@_node()
class TrueTm(Term):
    pass


@_node()
class FalseTm(Term):
    pass


@_node(("scrut", 0), ("motive", 1), ("true_case", 0), ("false_case", 0))
class BoolInd(Term):
    scrut: Term
    motive: Term
    true_case: Term
    false_case: Term


def _check_rows(obj):
    rows = tuple(obj.rows)
    labels = [l for l, _ in rows]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate record label in {labels}")
    if labels != sorted(labels):
        rows = tuple(sorted(rows, key=lambda r: r[0]))
    object.__setattr__(obj, "rows", rows)


@_node(("rows", ROWS))
class RecordTy(Term):
    rows: tuple

    def __post_init__(self):
        _check_rows(self)

    def get(self, label):
        for l, a in self.rows:
            if l == label:
                return a
        return None

    @property
    def labels(self):
        return tuple(l for l, _ in self.rows)


@_node(("rows", ROWS))
class RecordTm(Term):
    rows: tuple

    def __post_init__(self):
        _check_rows(self)

    get = RecordTy.get
    labels = RecordTy.labels


@_node(("rec", 0), ("label", RAW))
class Proj(Term):
    rec: Term
    label: str


@_node(("former", RAW), ("src", HOM), ("dst", HOM), ("fn", HOM), ("arg", 0))
class Map(Term):
    former: Former
    src: Dom
    dst: Dom
    fn: Morphism
    arg: Term

    def __post_init__(self):
        for part in (self.src, self.dst, self.fn):
            if part.former is not self.former:
                raise ValueError("map components disagree on the type former")


@_node(("src", 0), ("dst", 0), ("body", 0))
class Coe(Term):
    src: Term
    dst: Term
    body: Term


EMPTY, UNIT, STAR, BOOL, TT, FF = Empty(), Unit(), UnitTm(), Bool(), TrueTm(), FalseTm()

TYPE_FORMERS = (Sort, Pi, Sigma, ListTy, W, Id, Sum, Empty, Unit, Bool, RecordTy)


def map_subterms(t: Term, f: Callable[[Term, int], Term]) -> Term:
    """Rebuild ``t`` applying ``f(child, k)`` to each immediate subterm,
    where ``k`` is the number of binders the child sits under."""
    layout = t.layout
    if not layout or layout[0][1] is RAW and len(layout) == 1:
        return t
    out = []
    for name, kind in layout:
        v = getattr(t, name)
        if kind is RAW:
            out.append(v)
        elif kind is ROWS:
            out.append(tuple((l, f(a, 0)) for l, a in v))
        elif kind is HOM:
            out.append(type(v)(v.former, tuple(f(p, k) for p, k in zip(v.parts, v.binders))))
        else:
            out.append(f(v, kind))
    return type(t)(*out)


def subterms(t: Term):
    """Yield ``(child, k)`` for each immediate subterm of ``t``."""
    for name, kind in t.layout:
        v = getattr(t, name)
        if kind is RAW:
            continue
        if kind is ROWS:
            for _, a in v:
                yield a, 0
        elif kind is HOM:
            yield from zip(v.parts, v.binders)
        else:
            yield v, kind


def size(t: Term) -> int:
    return 1 + sum(size(c) for c, _ in subterms(t))


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every variable index ``>= cutoff``."""
    if by == 0:
        return t

    def go(u, c):
        if isinstance(u, Var):
            if u.index < c:
                return u
            if u.index + by < c:
                raise ValueError(f"negative shift escapes scope at index {u.index}")
            return Var(u.index + by)
        return map_subterms(u, lambda v, k: go(v, c + k))

    return go(t, cutoff)


@dataclass(frozen=True, slots=True)
class Subst:
    """Parallel substitution ``(↑^lift, terms[n-1], ..., terms[0])``.

    ``Var(i)`` with ``i < len(terms)`` becomes ``terms[i]``; larger indices
    drop by ``len(terms)`` and are then raised by ``lift``.
    """
    terms: tuple = ()
    lift: int = 0


def subst_apply(t: Term, sub: Subst) -> Term:
    terms, n, lift = sub.terms, len(sub.terms), sub.lift
    if n == 0 and lift == 0:
        return t

    def go(u, d):
        if isinstance(u, Var):
            i = u.index
            if i < d:
                return u
            j = i - d
            if j < n:
                return shift(terms[j], d)
            return Var(j - n + lift + d)
        return map_subterms(u, lambda v, k: go(v, d + k))

    return go(t, 0)


def instantiate(body: Term, *args: Term, lift: int = 0) -> Term:
    """Fill the binders of ``body``; ``args`` run from outermost to innermost."""
    return subst_apply(body, Subst(tuple(reversed(args)), lift))


def struct_eq(a: Term, b: Term) -> bool:
    return a == b


def arrow(a: Term, b: Term) -> Term:
    """Non-dependent function type."""
    return Pi(a, shift(b, 1))


def former_type(dom: Dom) -> Term:
    """The type ``F X`` obtained by applying a former to an instance."""
    p = dom.parts
    match dom.former:
        case Former.LIST:
            return ListTy(p[0])
        case Former.PI:
            return Pi(p[0], p[1])
        case Former.SIGMA:
            return Sigma(p[0], p[1])
        case Former.W:
            return W(p[0], p[1])
        case Former.ID:
            return Id(p[0], p[1], p[2])
        case Former.SUM:
            return Sum(p[0], p[1])


def _idfun(a):
    return Lam(a, Var(0))


def _after(g, f, dom):
    """``λx:dom. g (f x)``"""
    return Lam(dom, App(shift(g, 1), App(shift(f, 1), Var(0))))


def morphism_identity(dom: Dom) -> Morphism:
    p = dom.parts
    match dom.former:
        case Former.LIST | Former.ID:
            parts = (_idfun(p[0]),)
        case Former.PI | Former.SIGMA | Former.W | Former.SUM:
            parts = (_idfun(p[0]), _idfun(p[1]))
    return Morphism(dom.former, parts)


def morphism_compose(g: Morphism, f: Morphism, src: Dom, dst: Dom) -> Morphism:
    """``g ∘ f`` for ``f : src -> mid`` and ``g : mid -> dst``.

    Function components of Pi (domain) and W (arity) run backwards, so their
    composite is taken in the opposite order.
    """
    F = f.former
    if g.former is not F or src.former is not F or dst.former is not F:
        raise ValueError("morphisms compose only within one type former")
    f1, g1 = f.parts[0], f.parts[-1]
    f2, g2 = g.parts[0], g.parts[-1]
    match F:
        case Former.LIST | Former.ID:
            parts = (_after(f2, f1, src.parts[0]),)
        case Former.SUM:
            parts = (_after(f2, f1, src.parts[0]), _after(g2, g1, src.parts[1]))
        case Former.SIGMA:
            # under a : A_src, B_src -> B_dst[(f2 ∘ f1) a]
            g2_at = instantiate(g2, App(shift(f1, 1), Var(0)), lift=1)
            second = Lam(src.parts[1], App(shift(g2_at, 1), App(shift(g1, 1), Var(0))))
            parts = (_after(f2, f1, src.parts[0]), second)
        case Former.PI:
            # under a : A_dst, B_src[f1 (f2 a)] -> B_dst
            back = App(shift(f1, 1), App(shift(f2, 1), Var(0)))
            g1_at = instantiate(g1, App(shift(f2, 1), Var(0)), lift=1)
            second = Lam(instantiate(src.parts[1], back, lift=1),
                         App(shift(g2, 1), App(shift(g1_at, 1), Var(0))))
            parts = (_after(f1, f2, dst.parts[0]), second)
        case Former.W:
            # under a : A_src, B_dst[f2 (f1 a)] -> B_src
            fwd = App(shift(f2, 1), App(shift(f1, 1), Var(0)))
            g2_at = instantiate(g2, App(shift(f1, 1), Var(0)), lift=1)
            second = Lam(instantiate(dst.parts[1], fwd, lift=1),
                         App(shift(g1, 1), App(shift(g2_at, 1), Var(0))))
            parts = (_after(f2, f1, src.parts[0]), second)
    return Morphism(F, parts)


@dataclass(frozen=True, slots=True)
class Context:
    """Typing context; ``types[-1]`` is the type of ``Var(0)``."""
    types: tuple = ()

    def extend(self, *tys: Term) -> "Context":
        return Context(self.types + tys)

    def lookup(self, i: int) -> Term:
        if not 0 <= i < len(self.types):
            raise IndexError(i)
        return shift(self.types[-1 - i], i + 1)

    def __len__(self):
        return len(self.types)
