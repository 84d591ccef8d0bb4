import pytest

from fmltt.coe import CoeChecker
from fmltt.surface.parser import parse_program, parse_term
from fmltt.syntax import (
    BOOL, Context, Fst, Lam, Map, Former, Pair, Sigma, Snd, UNIT, Var,
)
from fmltt.translations import (
    Fn, NoRule, STAR, Translator, Untranslatable, translate, translate_coercion,
)
from support.admissible import type_pool
from support.pipeline import coe_terms
from support.translation import (
    alternative_derivations, coercions_in, recheck, redex_type,
    substitution_cases, vanishes, weakening_mismatches,
)

ENV = parse_program("""
var A : Type 0
var B : Type 0
var f : A -> B
var r : {a : A, b : Bool, c : Unit}
""").env
CTX = Context(tuple(ENV.var_types))
ITEMS = coe_terms()


def tm(src):
    return parse_term(src, ENV)


def test_records_become_nested_pairs():
    assert translate(CTX, tm("{a : A, b : Bool}")) == Sigma(tm("A"), BOOL)
    assert translate(CTX, tm("{a : A}")) == tm("A")
    assert translate(CTX, tm("{b : Bool, c : Unit, a : A}")) == tm("(x : A) ** Bool ** Unit")
    assert translate(CTX, tm("r.b")) == Fst(Snd(tm("r")))
    assert translate(CTX, tm("r.c")) == Snd(Snd(tm("r")))
    lit = translate(CTX, tm("{a := tt, b := ()}"))
    assert isinstance(lit, Pair) and lit.snd == tm("()")


def test_empty_record_becomes_unit():
    assert translate(Context(), tm("{}")) == UNIT


def test_identity_coercion_disappears():
    assert translate(CTX, tm("coe {A -> B => A -> B} f")) == tm("f")
    assert translate_coercion(CTX, tm("List A"), tm("List A")) is STAR


def test_list_coercion_becomes_a_map():
    c = translate_coercion(CTX, tm("List {a : A, b : Bool}"), tm("List {a : A}"))
    assert isinstance(c, Fn) and isinstance(c.fn, Lam)
    assert isinstance(c.fn.body, Map) and c.fn.body.former is Former.LIST


def test_record_coercion_rebuilds_the_tuple():
    c = translate_coercion(CTX, tm("{a : A, b : Bool}"), tm("{a : A}"))
    assert c == Fn(Lam(Sigma(tm("A"), BOOL), Fst(Var(0))))


def test_untranslatable_inputs():
    with pytest.raises(NoRule):
        translate_coercion(CTX, tm("Bool"), tm("Unit"))
    with pytest.raises(Untranslatable):
        translate(CTX, tm("map[List]{A => B}(f) nil@A"))


@pytest.mark.parametrize("item", ITEMS, ids=lambda c: c.label)
def test_translation_is_total_and_deterministic(item):
    first = Translator().term(item.ctx, item.term)
    assert Translator().term(item.ctx, item.term) == first
    Translator().context(item.ctx)
    Translator().term(item.ctx, item.ty)
    for other in alternative_derivations(item):
        assert translate(item.ctx, other) == first


@pytest.mark.parametrize("item", ITEMS, ids=lambda c: c.label)
def test_translation_commutes_with_weakening(item):
    assert weakening_mismatches(item) == []


@pytest.mark.parametrize("item", [i for i in ITEMS if i.ctx.types], ids=lambda c: c.label)
def test_translation_commutes_with_substitution(item):
    cases = substitution_cases(item)
    assert all(ok for _, ok in cases), [u for u, ok in cases if not ok]


def test_convertible_types_give_identity_coercions():
    chk, ctx = CoeChecker(), Context()
    pool = type_pool(range(40))
    for a in pool:
        assert vanishes(ctx, a, a)
        redex = redex_type(ctx, a)
        assert redex is None or vanishes(ctx, a, redex)
        for b in pool:
            if chk.conv_ty(ctx, a, b):
                assert vanishes(ctx, a, b), (a, b)
    for item in ITEMS:
        for depth, a, b in coercions_in(item.term):
            if depth == 0 and CoeChecker().conv_ty(item.ctx, a, b):
                assert vanishes(item.ctx, a, b)


def test_translated_corpus_rechecks_in_the_map_system():
    results = [recheck(i) for i in ITEMS]
    failed = [r for r in results if not r.ok]
    assert len(failed) <= 0.05 * len(results), failed
