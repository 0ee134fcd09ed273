import random

import pytest
from hypothesis import given, strategies as st

from objeval import syntax as S
from objeval.errors import ParseError
from objeval.evaluator import agree, oracle_eval, run
from objeval.parsing import (
    parse_bindings, parse_code, parse_description, parse_env_shape, parse_formula,
    parse_literal, parse_term, parse_type,
)
from objeval.randgen import PROBES, TermGen
from objeval.values import Atom, MapV, PairV, PrimV, SetV, TRUE, UNIT, render_value

BUILTINS = ["succ", "+"]


# ------------------------------------------------------------- terms

@pytest.mark.parametrize("text, expected", [
    ("x", S.Var("x")),
    ("42", S.Const(42)),
    ("atom:c", S.Const("c")),
    ("f x y", S.App(S.App(S.Var("f"), S.Var("x")), S.Var("y"))),
    (r"\x. x", S.Abs("x", S.Var("x"))),
    ("λx. x", S.Abs("x", S.Var("x"))),
    (r"\x, y. x", S.Abs("x", S.Abs("y", S.Var("x")))),
    ("[a, b]", S.PairT(S.Var("a"), S.Var("b"))),
    ("+ [2, 3]", S.App(S.Builtin("+"), S.PairT(S.Const(2), S.Const(3)))),
    (r"f \x. x", S.App(S.Var("f"), S.Abs("x", S.Var("x")))),
    ("can_nat 2", S.App(S.Builtin("can_nat"), S.Const(2))),
])
def test_parse_term(text, expected):
    assert parse_term(text) == expected


def test_declared_identifiers_are_builtins():
    assert parse_term("succ x", ["succ"]) == S.App(S.Builtin("succ"), S.Var("x"))
    assert parse_term("succ x") == S.App(S.Var("succ"), S.Var("x"))


@pytest.mark.parametrize("text", [r"\x x", "(f x", "f )", "[a b]", r"\. x", ""])
def test_parse_term_errors(text):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    assert isinstance(info.value, SyntaxError)
    assert info.value.position >= 0


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_term("f (x")
    assert info.value.position == 4


def _random_terms(seed, n):
    gen = TermGen(random.Random(seed))
    return [gen.case().term for _ in range(n)]


@given(st.integers(0, 10_000))
def test_render_parse_round_trip(seed):
    for t in _random_terms(seed, 5):
        assert parse_term(S.render_term(t), BUILTINS) == t


def test_free_and_bound_vars():
    t = parse_term(r"(\x. f x y) (\y. x)")
    assert S.free_vars(t) == ["f", "y", "x"]
    assert S.bound_vars(t) == ["x", "y"]


# ------------------------------------------------------------- renaming

def _binders_unique(t, free):
    bs = S.bound_vars(t)
    return len(bs) == len(set(bs)) and not set(bs) & set(free)


@given(st.integers(0, 10_000))
def test_alpha_rename_properties(seed):
    for t in _random_terms(seed, 5):
        r = S.alpha_rename(t)
        assert S.free_vars(r) == S.free_vars(t)
        assert _binders_unique(r, S.free_vars(t))
        assert S.alpha_rename(r) == r


@given(st.integers(0, 10_000))
def test_alpha_rename_preserves_meaning(seed):
    gen = TermGen(random.Random(seed))
    for _ in range(5):
        case = gen.case()
        renamed = S.alpha_rename(case.term, reserved=case.bindings)
        # the machine on the renamed term against the oracle on the original
        assert agree(run(renamed, case.bindings), oracle_eval(case.term, case.bindings),
                     PROBES)


def test_alpha_rename_avoids_reserved_names():
    t = parse_term(r"\h. h")
    assert S.alpha_rename(t, reserved=["h"]) == S.Abs("h1", S.Var("h1"))


def test_shadowing_is_renamed_apart():
    t = parse_term(r"\x. \x. x")
    assert S.alpha_rename(t) == S.Abs("x", S.Abs("x1", S.Var("x1")))


# ------------------------------------------------------------- formulas

@pytest.mark.parametrize("text, expected", [
    ("x = y", S.EqVar("x", "y")),
    ("x = 2", S.EqVar("x", S.Lit(2))),
    ("y = g x", S.EqCFun("y", "g", "x")),
    ("z = [x, y]", S.EqPair("z", "x", "y")),
    ("z = x(y)", S.EqApp("z", "x", "y")),
    ("y in x", S.Mem("y", "x")),
    ("true", S.Verum()),
    ("not x = y", S.Not(S.EqVar("x", "y"))),
    ("a = b and c = d or e = f",
     S.Or(S.And(S.EqVar("a", "b"), S.EqVar("c", "d")), S.EqVar("e", "f"))),
    ("a = b -> c = d -> e = f",
     S.Implies(S.EqVar("a", "b"), S.Implies(S.EqVar("c", "d"), S.EqVar("e", "f")))),
    ("forall s:[T]. y in s",
     S.Forall("s", S.Power(S.Base("T")), S.Mem("y", "s"))),
])
def test_parse_formula(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text", [
    "x = y", "y = g x", "z = [x, y]", "z = x(y)", "y in x", "not (x = y and y = z)",
    "forall s:[T]. exists t:T. t in s -> s = s", "(a = b or c = d) and e = f",
    "x = atom:c1",
])
def test_formula_round_trip(text):
    phi = parse_formula(text)
    assert parse_formula(S.render_formula(phi)) == phi


def test_formula_free_vars_and_rename():
    phi = parse_formula("forall s:[T]. y in s and x = y")
    assert S.formula_free_vars(phi) == ["y", "x"]
    assert S.rename_free(phi, "s", "q") == phi
    assert S.formula_free_vars(S.rename_free(phi, "y", "w")) == ["w", "x"]


def test_description():
    d = parse_description("iota x:T. x = 2")
    assert d == S.Description("x", S.Base("T"), S.EqVar("x", S.Lit(2)))
    assert S.render_description(d) == "iota x:T. x = 2"


# ------------------------------------------------------------- misc syntax

@pytest.mark.parametrize("text", ["nat", "nat -> nat", "nat * nat -> nat", "[T]",
                                  "(nat -> nat) -> nat", "Truth", "T * (S * U)"])
def test_type_round_trip(text):
    ty = parse_type(text)
    assert parse_type(S.render_type(ty)) == ty


def test_arrow_is_right_associative():
    assert parse_type("a -> b -> c") == S.Arrow(S.Base("a"), S.Arrow(S.Base("b"), S.Base("c")))


def test_literals():
    assert parse_literal("[1, atom:a]") == PairV(Atom(1), Atom("a"))
    assert parse_literal("{1, 2}") == SetV(frozenset({Atom(1), Atom(2)}))
    assert parse_literal("prim:succ") == PrimV("succ")
    assert parse_literal("()") == UNIT
    assert parse_literal("true") == TRUE
    m = parse_literal("{1 |-> atom:one, 2 |-> 3}")
    assert m == MapV(frozenset({(Atom(1), Atom("one")), (Atom(2), Atom(3))}))
    assert parse_literal(render_value(m)) == m
    with pytest.raises(ParseError):
        parse_literal("{1 |-> 2, 3}")


def test_env_shape():
    shape = parse_env_shape("E; y:Dy; x:Dx")
    assert shape.names == ("y", "x")
    assert shape.type_of("x") == S.Base("Dx")
    assert str(shape) == "E; y:Dy; x:Dx"
    assert parse_env_shape("y; x").names == ("y", "x")


def test_bindings_keep_order():
    b = parse_bindings("h = 2  # the argument\nf = prim:succ\n")
    assert list(b) == ["h", "f"]
    assert b["f"] == PrimV("succ")
    with pytest.raises(ParseError):
        parse_bindings("h 2")


def test_code_parse_round_trip():
    text = "Cur(Eps . <Snd . Fst . Fst, Snd>)"
    from objeval.combinators import render_code
    assert render_code(parse_code(text)) == text
