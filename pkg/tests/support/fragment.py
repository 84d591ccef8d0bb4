"""Exhaustive enumeration of small well-typed terms over a fixed two-variable
context, with a set-theoretic evaluator used to bucket terms by meaning.

Size counts term nodes only; type annotations (binder domains, constructor
and map/coe annotations) are fixed by the term's sort and do not count.

Two fragments:

* ``LIST_FRAGMENT``: ``f : Bool -> Bool, l : List Bool`` with booleans,
  functions, lists, application, lambda, cons/nil and ``map[List]``;
* ``RECORD_FRAGMENT``: ``r : {a : Bool, b : Bool}, g : {a : Bool} -> Bool``
  with record literals, projection and ``coe`` between record and
  function types (width subtyping, contravariance).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from fmltt.syntax import (
    BOOL, FF, TT, App, BoolInd, Coe, Cons, Context, Dom, Former, Lam, ListTy,
    Map, Morphism, Nil, Pi, Proj, RecordTm, RecordTy, Var, arrow, shift,
)

LIST_BOOL = ListTy(BOOL)
BOOL_FN = arrow(BOOL, BOOL)
REC_A = RecordTy((("a", BOOL),))
REC_AB = RecordTy((("a", BOOL), ("b", BOOL)))
FN_A = arrow(REC_A, BOOL)
FN_AB = arrow(REC_AB, BOOL)
_LIST_DOM = Dom(Former.LIST, (BOOL,))


def compositions(n, parts):
    """Ordered ways to write ``n`` as ``parts`` positive sizes."""
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for k in range(1, n - parts + 2):
        for rest in compositions(n - k, parts - 1):
            yield (k,) + rest


@dataclass
class Fragment:
    name: str
    context: tuple            # (name, type) outermost first
    sorts: dict               # sort name -> type in the empty binder scope
    system: str               # checker used for conv
    max_size: int
    terms: dict = field(default_factory=dict)

    def ctx(self) -> Context:
        c = Context()
        for _, ty in self.context:
            c = c.extend(ty)
        return c


# --------------------------------------------------------------- list fragment

@lru_cache(maxsize=None)
def _list_terms(sort, n, scope, branch=False):
    """Terms of ``sort`` and size ``n``; ``scope`` is the number of bound
    booleans above the two context variables (``l`` then ``f`` outward).
    ``branch`` adds ``if`` on booleans."""
    if n < 1:
        return ()
    l, f = Var(scope), Var(scope + 1)
    out = []
    if sort == "B":
        if n == 1:
            out += [TT, FF] + [Var(i) for i in range(scope)]
        for a, b in compositions(n - 1, 2):
            out += [App(fn, x) for fn in _list_terms("F", a, scope, branch) for x in _list_terms("B", b, scope, branch)]
        for c, a, b in compositions(n - 1, 3) if branch else ():
            for s in _list_terms("B", c, scope, branch):
                for x in _list_terms("B", a, scope, branch):
                    out += [BoolInd(s, BOOL, x, y) for y in _list_terms("B", b, scope, branch)]
    elif sort == "F":
        if n == 1:
            out.append(f)
        if n >= 2:
            out += [Lam(BOOL, body) for body in _list_terms("B", n - 1, scope + 1, branch)]
    elif sort == "L":
        if n == 1:
            out += [l, Nil(BOOL)]
        for a, b in compositions(n - 1, 2):
            for x in _list_terms("B", a, scope, branch):
                out += [Cons(BOOL, x, t) for t in _list_terms("L", b, scope, branch)]
            for fn in _list_terms("F", a, scope, branch):
                out += [Map(Former.LIST, _LIST_DOM, _LIST_DOM, Morphism(Former.LIST, (fn,)), t)
                        for t in _list_terms("L", b, scope, branch)]
    return tuple(out)


def list_fragment(max_size=12, branch=False) -> Fragment:
    frag = Fragment("list", (("f", BOOL_FN), ("l", shift(LIST_BOOL, 1))),
                    {"B": BOOL, "F": BOOL_FN, "L": LIST_BOOL}, "map", max_size)
    for sort in frag.sorts:
        frag.terms[sort] = [t for n in range(1, max_size + 1) for t in _list_terms(sort, n, 0, branch)]
    return frag


_BOOL_FUNCTIONS = (lambda b: b, lambda b: not b, lambda b: True, lambda b: False)
_LISTS = ((), (True,), (False,), (True, False), (False, False, True))


def list_environments():
    """Interpretations of ``(f, l)``: every boolean function against a few lists."""
    return [(fn, xs) for fn in _BOOL_FUNCTIONS for xs in _LISTS]


def eval_list(t, env):
    """Evaluate a list-fragment term.  ``env`` lists values innermost first."""
    match t:
        case Var(i):
            return env[i]
        case _ if t == TT:
            return True
        case _ if t == FF:
            return False
        case App(fn, x):
            return eval_list(fn, env)(eval_list(x, env))
        case Lam(_, body):
            return lambda v: eval_list(body, (v,) + env)
        case BoolInd(s, _, x, y):
            return eval_list(x, env) if eval_list(s, env) else eval_list(y, env)
        case Nil():
            return ()
        case Cons(_, h, tl):
            return (eval_list(h, env),) + eval_list(tl, env)
        case Map(_, _, _, m, xs):
            fn = eval_list(m.parts[0], env)
            return tuple(fn(x) for x in eval_list(xs, env))
    raise ValueError(f"not a list-fragment term: {t}")


def _observe(v):
    """A hashable observation of a value (functions are probed on inputs)."""
    if callable(v):
        return tuple(_observe(v(b)) for b in (True, False))
    return v


def list_fingerprint(t):
    return tuple(_observe(eval_list(t, (xs, fn))) for fn, xs in list_environments())


# ------------------------------------------------------------- record fragment

# sorts: B bool, R1 {a}, R2 {a,b}, G1 {a} -> Bool, G2 {a,b} -> Bool
_REC_TYPES = {"B": BOOL, "R1": REC_A, "R2": REC_AB, "G1": FN_A, "G2": FN_AB}


@lru_cache(maxsize=None)
def _record_terms(sort, n, scope):
    """``scope`` is a tuple of the sorts of bound variables, innermost
    first; below them sit the context variables ``g`` then ``r``."""
    if n < 1:
        return ()
    full = scope + ("G1", "R2")
    out = []
    if n == 1:
        out += [Var(i) for i, s in enumerate(full) if s == sort]
    if sort == "B":
        if n == 1:
            out += [TT, FF]
        for rs, labels in (("R1", ("a",)), ("R2", ("a", "b"))):
            for r in _record_terms(rs, n - 1, scope):
                out += [Proj(r, lab) for lab in labels]
        for a, b in compositions(n - 1, 2):
            for fs, rs in (("G1", "R1"), ("G2", "R2")):
                out += [App(fn, x) for fn in _record_terms(fs, a, scope)
                        for x in _record_terms(rs, b, scope)]
        out += [Coe(BOOL, BOOL, x) for x in _record_terms("B", n - 1, scope)]
    elif sort == "R1":
        out += [RecordTm((("a", x),)) for x in _record_terms("B", n - 1, scope)]
        out += [Coe(REC_AB, REC_A, x) for x in _record_terms("R2", n - 1, scope)]
        out += [Coe(REC_A, REC_A, x) for x in _record_terms("R1", n - 1, scope)]
    elif sort == "R2":
        for a, b in compositions(n - 1, 2):
            out += [RecordTm((("a", x), ("b", y))) for x in _record_terms("B", a, scope)
                    for y in _record_terms("B", b, scope)]
    elif sort == "G1":
        out += [Lam(REC_A, body) for body in _record_terms("B", n - 1, ("R1",) + scope)]
        out += [Coe(FN_A, FN_A, x) for x in _record_terms("G1", n - 1, scope)]
    elif sort == "G2":
        out += [Lam(REC_AB, body) for body in _record_terms("B", n - 1, ("R2",) + scope)]
        out += [Coe(FN_A, FN_AB, x) for x in _record_terms("G1", n - 1, scope)]
    return tuple(out)


def record_fragment(max_size=8) -> Fragment:
    frag = Fragment("record", (("r", REC_AB), ("g", FN_A)), dict(_REC_TYPES), "coe", max_size)
    for sort in frag.sorts:
        frag.terms[sort] = [t for n in range(1, max_size + 1) for t in _record_terms(sort, n, ())]
    return frag


_RECORDS = tuple({"a": a, "b": b} for a, b in itertools.product((True, False), repeat=2))


def record_environments():
    """Interpretations of ``(r, g)``; ``g`` reads only its ``a`` field."""
    return [(r, lambda rec, fn=fn: fn(rec["a"])) for r in _RECORDS for fn in _BOOL_FUNCTIONS]


def eval_record(t, env):
    match t:
        case Var(i):
            return env[i]
        case _ if t == TT:
            return True
        case _ if t == FF:
            return False
        case App(fn, x):
            return eval_record(fn, env)(eval_record(x, env))
        case Lam(_, body):
            return lambda v: eval_record(body, (v,) + env)
        case RecordTm(rows):
            return {l: eval_record(v, env) for l, v in rows}
        case Proj(r, l):
            return eval_record(r, env)[l]
        case Coe(_, RecordTy() as dst, x):
            v = eval_record(x, env)
            return {l: v[l] for l in dst.labels}
        case Coe(_, Pi(RecordTy(), _), x):
            # contravariant narrowing is invisible to the evaluator: the
            # function only reads labels the narrower domain has
            return eval_record(x, env)
        case Coe(_, _, x):
            return eval_record(x, env)
    raise ValueError(f"not a record-fragment term: {t}")


def _observe_record(v, sort):
    if sort in ("G1", "G2"):
        labels = ("a",) if sort == "G1" else ("a", "b")
        probes = [dict(zip(labels, bits)) for bits in itertools.product((True, False), repeat=len(labels))]
        return tuple(v(p) for p in probes)
    if isinstance(v, dict):
        return tuple(sorted(v.items()))
    return v


def record_fingerprint(t, sort):
    return tuple(_observe_record(eval_record(t, (g, r)), sort) for r, g in record_environments())


def term_size(t) -> int:
    """Size as counted by the enumerators: annotations excluded."""
    match t:
        case Var() | Nil():
            return 1
        case App(fn, x):
            return 1 + term_size(fn) + term_size(x)
        case Lam(_, body):
            return 1 + term_size(body)
        case BoolInd(s, _, x, y):
            return 1 + term_size(s) + term_size(x) + term_size(y)
        case Cons(_, h, tl):
            return 1 + term_size(h) + term_size(tl)
        case Map(_, _, _, m, xs):
            return 1 + term_size(m.parts[0]) + term_size(xs)
        case RecordTm(rows):
            return 1 + sum(term_size(v) for _, v in rows)
        case Proj(r, _):
            return 1 + term_size(r)
        case Coe(_, _, x):
            return 1 + term_size(x)
    return 1
