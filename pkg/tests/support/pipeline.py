"""Corpus terms of the coercive system: the elaborations of the subtyping
corpus followed by the hand-written coercive programs."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from fmltt.syntax import Context, Term
from fmltt.translations import Elaborator

from .corpus import Entry, load


@dataclass(frozen=True)
class CoeTerm:
    label: str
    ctx: Context
    term: Term
    ty: Term
    source: Entry


@lru_cache(maxsize=None)
def coe_terms() -> tuple:
    out = []
    for e in load("sub"):
        el = Elaborator()
        cctx = el.wf_context(e.ctx.types)
        t, ty = el.elaborate(cctx, e.term, e.ty)
        out.append(CoeTerm(e.label, cctx, t, ty, e))
    for e in load("coe"):
        out.append(CoeTerm(e.label, e.ctx, e.term, e.ty, e))
    return tuple(out)
