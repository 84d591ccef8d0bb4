import io
import json

import pytest

from fmltt.surface.cli import run
from fmltt.surface.lexer import ParseError
from fmltt.surface.parser import parse_program, parse_term
from fmltt.surface.printer import show
from fmltt.syntax import BOOL, App, Coe, Lam, Var
from support.corpus import PROGRAMS, load

CORPUS = PROGRAMS / "corpus"


def test_parse_basic_forms():
    assert parse_term("fun (x : Bool) -> x") == Lam(BOOL, Var(0))
    assert parse_term("coe {A => B} t", names=("A", "B", "t")) == Coe(Var(2), Var(1), Var(0))


def test_inner_binder_shadows_outer():
    assert parse_term("fun (x : Bool) -> fun (x : Bool) -> x") == Lam(BOOL, Lam(BOOL, Var(0)))
    assert parse_term("fun (x : Bool) -> fun (y : Bool) -> x") == Lam(BOOL, Lam(BOOL, Var(1)))


def test_definitions_are_inlined():
    prog = parse_program("""
def not : Bool -> Bool := fun (b : Bool) -> ind_bool b as z return Bool | tt => ff | ff => tt
def x : Bool := not tt
""")
    not_def, x_def = prog.defs()
    assert x_def.term == App(not_def.term, parse_term("tt"))


def test_example_program_is_the_pair_encoding():
    prog = parse_program((PROGRAMS / "example_1_1.fmltt").read_text())
    names = [d.name for d in prog.defs()]
    assert {"glue", "glue_retr", "roundtrip"} <= set(names)
    r1 = prog.env.defs["R1"][1]
    assert type(r1).__name__ == "Sigma"


def test_parse_errors_and_unbound_names_carry_a_span():
    with pytest.raises(ParseError) as e:
        parse_term("fun (x : Bool) ->")
    assert e.value.span.line == 1
    with pytest.raises(ParseError) as e:
        parse_term("fun (x : Bool) -> y")
    assert "y" in e.value.message


@pytest.mark.parametrize("entry", load(), ids=lambda e: f"{e.system}:{e.label}")
def test_print_parse_round_trip_on_the_corpus(entry):
    for t in (entry.term, entry.ty):
        assert parse_term(show(t, entry.names), names=entry.names) == t


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_cli_check():
    assert _run("check", str(PROGRAMS / "example_1_1.fmltt"), "--system=map")[0] == 0
    code, out = _run("check", str(PROGRAMS / "illtyped.fmltt"), "--json")
    assert code == 1
    report = json.loads(out)
    assert report["version"] == 1
    assert report["diagnostics"][0]["code"] == "CONV_FAILED"
    assert report["diagnostics"][0]["span"]["line"] == 3
    for system in ("sub", "coe", "map"):
        for path in sorted((CORPUS / system).glob("*.fmltt")):
            assert _run("check", str(path), f"--system={system}", "-q")[0] == 0, path


def test_cli_conv_and_eval():
    laws = str(CORPUS / "map" / "laws.fmltt")
    ident = "map[List]{A => A}(fun (x : A) -> x) l"
    assert _run("conv", "--ctx", laws, "-e", ident, "-e", "l", "--at", "List A")[0] == 0
    assert _run("conv", "--ctx", laws, "-e", ident, "-e", "nil@A", "--at", "List A")[0] == 1
    assert _run("conv", "-e", "(fun (X : Type 0) -> X) Bool", "-e", "Bool")[0] == 0
    code, out = _run("eval", "-e", "(fun (x : Bool) -> x) tt")
    assert (code, out.strip()) == (0, "tt")
    omega = "(fun (x : Bool) -> x x) (fun (x : Bool) -> x x)"
    assert _run("eval", "-e", omega, "--fuel", "50")[0] == 2


def test_cli_subtyping_and_inference():
    assert _run("sub", "-e", "{a : Bool, b : Bool}", "-e", "{a : Bool}")[0] == 0
    assert _run("sub", "-e", "{a : Bool}", "-e", "{a : Bool, b : Bool}", "--system=sub")[0] == 1
    assert _run("sub", "-e", "Bool", "-e", "Bool", "--system=map")[0] == 2
    code, out = _run("infer", "-e", "fun (x : Bool) -> x")
    assert (code, out.strip()) == (0, "Bool -> Bool")


def test_cli_elaborate_erase_translate():
    compute = str(CORPUS / "sub" / "compute.fmltt")
    code, out = _run("elaborate", compute)
    assert code == 0 and "coe {" in out
    explicit = str(CORPUS / "coe" / "explicit.fmltt")
    code, out = _run("erase", explicit)
    assert code == 0 and "coe {" not in out
    code, out = _run("translate", explicit)
    assert code == 0 and "coe {" not in out and "map[List]" in out
    code, out = _run("elaborate", "--ctx", compute, "-e", "{a := tt, b := ff}", "--type", "{a : Bool}")
    assert code == 0 and out.startswith("coe {")


def test_cli_usage_errors():
    assert _run("eval", "-e", "fun (x : Bool) ->")[0] == 2
    assert _run("frobnicate")[0] == 2
    assert _run("check", "/nonexistent.fmltt")[0] == 2
