"""Worked derivations rendered as line-oriented traces.

Each derivation compiles a small term, lists the rewrite steps that take
the raw translation to normal form, then evaluates both the raw and the
normal code step by step.  ``tests/golden`` holds the expected output; the
files are regenerated by ``scripts/regen_goldens.py``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from objeval import syntax as S
from objeval.combinators import Comp, CombTerm, normalize, render_code
from objeval.compiler import SUBST, EnvShape, compile_env, compile_term
from objeval.evaluator import DEFAULT_PRIMITIVES, env_value, evaluate
from objeval.parsing import parse_term
from objeval.values import Atom, PairV, Poison, PrimV, UNIT, Value, render_value


@dataclass
class Derivation:
    name: str
    title: str
    shape: EnvShape
    raw: CombTerm
    input: Value
    bindings: dict = field(default_factory=dict)
    term: str = ""

    def result(self) -> Value:
        return evaluate(normalize(self.raw), self.input)

    def trace(self) -> str:
        lines = [f"# {self.title}"]
        if self.term:
            lines.append(f"# term: {self.term}")
        for k, v in self.bindings.items():
            lines.append(f"# binding: {k} = {render_value(v)}")
        lines.append(f"# shape: {self.shape}")
        lines.append(f"# input: {render_value(self.input)}")
        steps: list = []
        nf = normalize(self.raw, steps)
        lines.append(f"# code (raw): {render_code(self.raw)}")
        lines.append(f"# code: {render_code(nf)}")
        lines.append("## rewrite")
        lines += [str(s) for s in steps] or ["(no rules apply)"]
        lines.append("## evaluation (raw)")
        raw_trace: list = []
        raw_out = evaluate(self.raw, self.input, trace=raw_trace)
        lines += raw_trace
        lines.append("## evaluation")
        nf_trace: list = []
        out = evaluate(nf, self.input, trace=nf_trace)
        lines += nf_trace
        if out != raw_out:
            lines.append(f"# MISMATCH raw gives {render_value(raw_out)}")
        lines.append(f"result: {render_value(out)}")
        return "\n".join(lines) + "\n"


def _from_term(name, title, text, bindings) -> Derivation:
    declared = [p for p in DEFAULT_PRIMITIVES if p not in bindings]
    term = S.alpha_rename(parse_term(text, declared), reserved=bindings)
    shape = compile_env(bindings, term)
    unit = compile_term(term, shape)
    # the bound slot holds a poison placeholder: reading it would fail
    return Derivation(name, title, shape, unit.raw, env_value(shape, bindings, poison=True),
                      bindings, text)


def constant() -> Derivation:
    """A constant held in the outermost slot is read by ``Snd``."""
    return _from_term("constant", "constant c", "c", {"c": Atom("c0")})


def variable() -> Derivation:
    """``x`` under ``Subst_x``: the slot value is overwritten by the
    argument before the access function reads it."""
    shape = EnvShape.of("x")
    access_x = compile_term(S.Var("x"), shape).code
    inp = PairV(PairV(UNIT, Poison("x")), Atom("h1"))
    return Derivation("variable", "variable x", shape, Comp(access_x, SUBST), inp,
                      term="x . Subst_x")


def identity() -> Derivation:
    return _from_term("identity", "identity (\\x. x) h", "(\\x. x) h", {"h": Atom("h1")})


def compound() -> Derivation:
    """``(\\x. f x) h`` with ``f = succ`` and ``h = 2``."""
    return _from_term("compound", "compound (\\x. f x) h", "(\\x. f x) h",
                      {"h": Atom(2), "f": PrimV("succ")})


def plus() -> Derivation:
    """``+ [2, 3]`` with both operands passed through canonical embeddings."""
    return _from_term("plus", "computation of + [2, 3]", "+ [can_nat 2, can_nat 3]", {})


DERIVATIONS = {d.__name__: d for d in (constant, variable, identity, compound, plus)}


def all_traces() -> dict[str, str]:
    return {name: make().trace() for name, make in DERIVATIONS.items()}
