import pytest

from fmltt.conversion import unmap, unmapfun
from fmltt.surface.parser import parse_program, parse_term
from fmltt.syntax import BOOL, Context, Former, Sort, Var
from fmltt.typing_map import MapChecker
from support.admissible import conversion_laws
from support.choose import RandomChooser
from support.fragment import list_fingerprint, list_fragment
from support.joinability import compare
from support.laws import law_instances

ENV = parse_program("""
var A : Type 0
var B : Type 0
var a : A
var b : A
var l : List A
var k : List A
var f : A -> B
var p : A ** B
""").env
CTX = Context(tuple(ENV.var_types))


def tm(src):
    return parse_term(src, ENV)


@pytest.fixture
def chk():
    return MapChecker()


def test_type_conversion(chk):
    assert chk.conv_ty(CTX, tm("List A"), tm("List A"))
    assert chk.conv_ty(CTX, tm("(fun (X : Type 0) -> X) Bool"), BOOL)
    assert not chk.conv_ty(CTX, tm("A -> B"), tm("A ** B"))
    assert chk.conv_ty_red(CTX, Sort(2), Sort(2))
    assert not chk.conv_ty_red(CTX, Sort(1), Sort(2))


def test_beta_and_eta(chk):
    assert chk.conv_tm(CTX, tm("(fun (x : A) -> x) a"), tm("a"), tm("A"))
    assert chk.conv_tm(CTX, tm("f"), tm("fun (x : A) -> f x"), tm("A -> B"))
    assert chk.conv_tm(CTX, tm("p"), tm("(fst p, snd p)@[_. B]"), tm("A ** B"))
    assert not chk.conv_tm(CTX, tm("a"), tm("b"), tm("A"))


def test_constructors(chk):
    assert chk.conv_tm(CTX, tm("a ::@A l"), tm("(fun (y : A) -> y) a ::@A l"), tm("List A"))
    assert not chk.conv_tm(CTX, tm("nil@A"), tm("a ::@A l"), tm("List A"))


def test_neutral_comparison(chk):
    assert chk.neu_cmp(CTX, tm("l"), tm("l")) == tm("List A")
    assert chk.neu_cmp(CTX, tm("f a"), tm("f a")) == tm("B")
    assert chk.neu_cmp(CTX, tm("l"), tm("k")) is None


def test_stuck_maps_compare_by_function_and_argument(chk):
    lst = tm("List A")
    assert chk.conv_tm(CTX, tm("map[List]{A => A}(fun (y : A) -> y) l"), tm("l"), lst)
    assert chk.conv_tm(CTX, tm("map[List]{A => A}(fun (y : A) -> (fun (z : A) -> z) y) l"),
                       tm("map[List]{A => A}(fun (y : A) -> y) l"), lst)
    assert not chk.conv_tm(CTX, tm("map[List]{A => A}(fun (y : A) -> a) l"), tm("l"), lst)
    assert not chk.conv_tm(CTX, tm("map[List]{A => A}(fun (y : A) -> y) l"), tm("k"), lst)


def test_unmap_helpers():
    stuck = tm("map[List]{A => B}(f) l")
    assert unmap(stuck) == tm("l")
    assert unmap(tm("l")) == tm("l")
    assert unmapfun(tm("l"), Var(0)) == Var(0)
    assert unmapfun(stuck, tm("a")) == tm("f a")


def test_example_glue_roundtrip():
    from support.corpus import PROGRAMS
    prog = parse_program((PROGRAMS / "example_1_1.fmltt").read_text())
    ctx = Context(tuple(prog.env.var_types))
    lhs = parse_term("map[List]{R2 => R1}(glue_retr) (map[List]{R1 => R2}(glue) l)", prog.env)
    assert MapChecker().conv_tm(ctx, lhs, parse_term("l", prog.env), parse_term("List R1", prog.env))


@pytest.mark.parametrize("former", list(Former))
@pytest.mark.parametrize("scrutinee", ["canonical", "neutral"])
def test_functor_laws_hold_by_conversion(former, scrutinee):
    insts = law_instances(RandomChooser(7), former, scrutinee, 5)
    assert insts
    chk = MapChecker()
    for i in insts:
        assert chk.conv_tm(i.ctx, i.id_lhs, i.id_rhs, i.id_ty)
        assert chk.conv_tm(i.ctx, i.comp_lhs, i.comp_rhs, i.comp_ty)


def test_conversion_is_an_equivalence_on_samples():
    tally = conversion_laws(fragment_size=6, samples=10)
    assert not tally.failures, tally.failures[:3]
    assert tally.checked["conv-transitive"] > 100


def test_conversion_agrees_with_joinability_on_small_list_terms():
    frag = list_fragment(7)
    chk, ctx = MapChecker(), frag.ctx()
    rep = compare(frag, lambda a, b, ty: chk.conv_tm(ctx, a, b, ty), lambda t, _s: list_fingerprint(t),
                  cross_samples=300)
    assert rep.ok, rep.disagreements[:3]
    assert rep.overflow == 0
