"""Record subtyping, with explicit coercions (``CoeChecker``) and with
subsumption (``SubChecker``).

Both systems add non-dependent records.  Subtyping is width and depth on
records, lifted through every type former, with no universe cumulativity.
In the explicit system, the codomain of a dependent type is compared along
a coercion of the bound variable, e.g. ``B[coe x] ≼ B'`` for Pi.  The
subsumptive system compares the codomains directly.
"""
from __future__ import annotations

from .conversion import SubMode
from .errors import ErrorKind, TypingError
from .reduction import is_neutral
from .syntax import Coe, Context, Proj, RecordTm, RecordTy, Sort, Term, Var, instantiate, shift
from .typing_map import MapChecker

__all__ = ["SubMode", "CoeChecker", "SubChecker"]


class CoeChecker(MapChecker):
    system = "coe"
    allows_map = False
    allows_coe = True
    allows_records = True

    def along(self, body, src, dst):
        return instantiate(body, Coe(shift(src, 1), shift(dst, 1), Var(0)), lift=1)

    def coerce_term(self, src, dst, t):
        return Coe(src, dst, t)

    def subtype(self, ctx: Context, a: Term, b: Term) -> bool:
        return self.compare_ty(ctx, a, b, SubMode.SUB_LEFT)

    def subtype_red(self, ctx: Context, a: Term, b: Term) -> bool:
        return self.compare_ty_red(ctx, a, b, SubMode.SUB_LEFT)

    def cne_cmp(self, ctx, c, d, ty):
        return self.cne_cmp_coe(ctx, c, d)

    def cne_cmp_coe(self, ctx, c, d):
        """Compare neutrals up to coercion layers; the coercions' types are
        not consulted."""
        n = c.body if isinstance(c, Coe) else c
        m = d.body if isinstance(d, Coe) else d
        return is_neutral(n) and is_neutral(m) and self.neu_cmp(ctx, n, m) is not None

    # -------------------------------------------------------------- rules

    def _infer_Coe(self, ctx, t):
        self._require(self.allows_coe, "coercions")
        a = self._type(ctx, t.src, "src")
        b = self._type(ctx, t.dst, "dst")
        body = self._check(ctx, t.body, a, "body")
        if not self.subtype(ctx, a, b):
            raise TypingError(ErrorKind.SUBTYPE_FAILED, "source is not a subtype of target", b, a)
        return Coe(a, b, body), b

    def _infer_RecordTy(self, ctx, t):
        self._require(self.allows_records, "records")
        rows, levels = [], set()
        for l, a in t.rows:
            a2, i = self._infer_sort(ctx, a, l)
            rows.append((l, a2))
            levels.add(i)
        if len(levels) > 1:
            raise TypingError(ErrorKind.ANNOTATION_MISMATCH,
                              f"record fields live in different universes {sorted(levels)}")
        return RecordTy(tuple(rows)), Sort(levels.pop() if levels else 0)

    def _infer_RecordTm(self, ctx, t):
        self._require(self.allows_records, "records")
        rows, tys = [], []
        for l, u in t.rows:
            u2, a = self._infer(ctx, u, l)
            rows.append((l, u2))
            tys.append((l, a))
        return RecordTm(tuple(rows)), RecordTy(tuple(tys))

    def _infer_Proj(self, ctx, t):
        self._require(self.allows_records, "records")
        r, rty = self._infer(ctx, t.rec, "rec")
        rty = self._expect(rty, RecordTy, ErrorKind.SHAPE_MISMATCH, "a record")
        a = rty.get(t.label)
        if a is None:
            raise TypingError(ErrorKind.SHAPE_MISMATCH, f"record has no field {t.label!r}", None, rty)
        return Proj(r, t.label), a

    # aliases under the names used for this system
    def infer_coe(self, ctx, t):
        return self.infer(ctx, t)

    def check_coe(self, ctx, t, ty):
        return self.check(ctx, t, ty)

    conv_tm_coe = MapChecker.conv_tm
    conv_ty_coe = MapChecker.conv_ty


class SubChecker(CoeChecker):
    """Records with implicit subsumption at every checking position."""

    system = "sub"
    allows_coe = False

    def along(self, body, src, dst):
        return body

    def coerce_term(self, src, dst, t):
        return t

    def coerce(self, ctx, t, actual, expected):
        if self.subtype(ctx, actual, expected):
            return t
        raise TypingError(ErrorKind.SUBTYPE_FAILED, "not a subtype of the expected type",
                          expected, actual)

    def sub_infer(self, ctx, t):
        return self.infer(ctx, t)

    def sub_check(self, ctx, t, ty):
        return self.check(ctx, t, ty)
