"""Execution of combinator code against nested-pair environment values.

``evaluate`` is strict: both components of a pair are evaluated, left
first.  Closures capture the whole input value, so ``Cur(c)`` at ``i`` is
``Closure(c, i)`` and applying it to ``a`` runs ``c`` on ``[i, a]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional

from objeval import syntax as S
from objeval.combinators import (
    Basic, CanEmbed, CombTerm, Comp, ConstC, Cur, PairC, Prim, Step, render_code,
)
from objeval.compiler import compile_env, compile_term
from objeval.errors import (
    ApplyOnNonFunction, EvalError, PlaceholderRead, PrimitiveFailure,
    ProjectionOnNonPair, UnboundVariable, UnknownPrimitive,
)
from objeval.values import (
    FALSE, TRUE, UNIT, Atom, BoolV, Closure, MapV, PairV, Poison, PrimV, SetV, Value,
    render_value,
)


@dataclass(frozen=True)
class Primitive:
    name: str
    fn: Callable            # fn(arg, apply) -> Value
    ty: Optional[S.TypeExpr] = None


def _nat(v, name):
    if isinstance(v, Atom) and isinstance(v.value, int) and not isinstance(v.value, bool):
        return v.value
    raise PrimitiveFailure(f"{name}: expected a natural number, got {render_value(v)}")


def _pair(v, name):
    if not isinstance(v, PairV):
        raise PrimitiveFailure(f"{name}: expected a pair, got {render_value(v)}")
    return v.left, v.right


def _bool(v, name):
    if not isinstance(v, BoolV):
        raise PrimitiveFailure(f"{name}: expected a truth value, got {render_value(v)}")
    return v.value


def _plus(arg, apply):
    a, b = _pair(arg, "+")
    return Atom(_nat(a, "+") + _nat(b, "+"))


def _succ(arg, apply):
    return Atom(_nat(arg, "succ") + 1)


def _member(arg, apply):
    s, x = _pair(arg, "in")
    if isinstance(s, SetV):
        return BoolV(x in s.items)
    # a truth-valued function is a subset of its domain
    return BoolV(apply(s, x) == TRUE)


def _quantifier(name, combine):
    def fn(arg, apply):
        f, dom = _pair(arg, name)
        if not isinstance(dom, SetV):
            raise PrimitiveFailure(f"{name}: expected a finite domain")
        return BoolV(combine(_bool(apply(f, x), name) for x in dom.items))
    return fn


def _connective(name, op):
    def fn(arg, apply):
        a, b = _pair(arg, name)
        return BoolV(op(_bool(a, name), _bool(b, name)))
    return fn


_NAT2 = S.Arrow(S.Prod(S.NAT, S.NAT), S.NAT)

DEFAULT_PRIMITIVES: dict[str, Primitive] = {p.name: p for p in [
    Primitive("+", _plus, _NAT2),
    Primitive("succ", _succ, S.Arrow(S.NAT, S.NAT)),
    Primitive("id", lambda arg, apply: arg),
    # used by compiled formulas
    Primitive("eq", lambda arg, apply: BoolV(_pair(arg, "eq")[0] == _pair(arg, "eq")[1])),
    Primitive("not", lambda arg, apply: BoolV(not _bool(arg, "not"))),
    Primitive("and", _connective("and", lambda a, b: a and b)),
    Primitive("or", _connective("or", lambda a, b: a or b)),
    Primitive("implies", _connective("implies", lambda a, b: (not a) or b)),
    Primitive("in", _member),
    Primitive("forall", _quantifier("forall", all)),
    Primitive("exists", _quantifier("exists", any)),
]}


def with_primitives(*extra: Primitive, base=None) -> dict[str, Primitive]:
    table = dict(DEFAULT_PRIMITIVES if base is None else base)
    table.update({p.name: p for p in extra})
    return table


def table_primitive(name, graph: Mapping, ty=None) -> Primitive:
    """Primitive given by a finite table of Values."""
    graph = dict(graph)

    def fn(arg, apply):
        try:
            return graph[arg]
        except KeyError:
            raise PrimitiveFailure(f"{name}: {render_value(arg)} outside its domain") from None

    return Primitive(name, fn, ty)


class Machine:
    """Evaluator state: a primitive table and an optional trace sink."""

    def __init__(self, prims=None, trace: Optional[list] = None):
        self.prims = DEFAULT_PRIMITIVES if prims is None else prims
        self.trace = trace
        self.depth = 0

    def _emit(self, code, inp, out):
        if self.trace is not None:
            self.trace.append(f"{'  ' * self.depth}{render_code(code)} ⊢ "
                              f"{render_value(inp)} ⇒ {render_value(out)}")

    def _project(self, code, inp, left):
        if not isinstance(inp, PairV):
            raise ProjectionOnNonPair(
                f"{code.name} applied to non-pair {render_value(inp)}", code)
        out = inp.left if left else inp.right
        if isinstance(out, Poison):
            raise PlaceholderRead(f"{code.name} read placeholder slot {out.slot!r}", code)
        return out

    def eval(self, code: CombTerm, inp: Value) -> Value:
        self.depth += 1
        try:
            out = self._eval(code, inp)
        finally:
            self.depth -= 1
        self._emit(code, inp, out)
        return out

    def _eval(self, code, inp):
        if isinstance(code, Basic):
            if code.name == "Id":
                return inp
            if code.name == "Fst":
                return self._project(code, inp, True)
            if code.name == "Snd":
                return self._project(code, inp, False)
            if not isinstance(inp, PairV):
                raise ApplyOnNonFunction(f"Eps applied to non-pair {render_value(inp)}", code)
            return self.apply(inp.left, inp.right, code)
        if isinstance(code, Comp):
            return self.eval(code.outer, self.eval(code.inner, inp))
        if isinstance(code, PairC):
            left = self.eval(code.left, inp)
            return PairV(left, self.eval(code.right, inp))
        if isinstance(code, Cur):
            return Closure(code.body, inp)
        if isinstance(code, ConstC):
            return code.value
        if isinstance(code, CanEmbed):
            return inp
        if isinstance(code, Prim):
            return self.call_prim(code.name, inp, code)
        raise TypeError(f"not a combinator term: {code!r}")

    def call_prim(self, name, arg, code=None):
        prim = self.prims.get(name)
        if prim is None:
            if name.startswith("can_"):
                return arg
            raise UnknownPrimitive(f"unknown primitive {name!r}", code)
        try:
            return prim.fn(arg, self.apply)
        except PrimitiveFailure as e:
            e.code = code
            raise

    def apply(self, fv: Value, arg: Value, code=None) -> Value:
        if isinstance(fv, Closure):
            return self.eval(fv.body, PairV(fv.captured, arg))
        if isinstance(fv, PrimV):
            return self.call_prim(fv.name, arg, code)
        if isinstance(fv, MapV):
            try:
                return fv.lookup(arg)
            except KeyError:
                raise PrimitiveFailure(f"{render_value(arg)} outside the domain of a finite map",
                                       code) from None
        raise ApplyOnNonFunction(f"cannot apply {render_value(fv)}", code)


def evaluate(code: CombTerm, inp: Value, prims=None, trace: Optional[list] = None) -> Value:
    """Run ``code`` on ``inp``.  ``trace`` collects one line per evaluation
    step, ``code ⊢ input ⇒ output``, innermost steps first."""
    return Machine(prims, trace).eval(code, inp)


def apply(fv: Value, arg: Value, prims=None, trace: Optional[list] = None) -> Value:
    return Machine(prims, trace).apply(fv, arg)


def env_value(shape, bindings: Mapping[str, Value], poison=False) -> Value:
    """Right-nested environment value for ``shape``.  Slots without a
    binding hold a placeholder: ``()`` normally, a ``Poison`` that fails on
    read when ``poison`` is set."""
    out: Value = UNIT
    for name in shape.names:
        if name in bindings:
            v = bindings[name]
        else:
            v = Poison(name) if poison else UNIT
        out = PairV(out, v)
    return out


def prepare(term_text, bindings, builtins=None):
    """Parse, alpha-rename and compile; returns (term, CompiledUnit, prims)."""
    from objeval.parsing import parse_term

    prims = DEFAULT_PRIMITIVES if builtins is None else builtins
    declared = [name for name in prims if name not in bindings]
    term = parse_term(term_text, declared) if isinstance(term_text, str) else term_text
    term = S.alpha_rename(term, reserved=bindings)
    for name in S.free_vars(term):
        if name not in bindings:
            raise UnboundVariable(name)
    unit = compile_term(term, compile_env(bindings, term), prims)
    return term, unit, prims


def run(term_text, bindings: Mapping[str, Value] = None, builtins=None, *,
        trace: Optional[list] = None, poison=False) -> Value:
    """Parse, rename, compile, normalize and evaluate a term.

    ``bindings`` fixes the environment slots in order; ``builtins`` is the
    primitive table (defaults to ``DEFAULT_PRIMITIVES``).  With ``trace``
    the rewrite steps of normalization precede the evaluation steps.
    """
    bindings = dict(bindings or {})
    _, unit, prims = prepare(term_text, bindings, builtins)
    if trace is not None:
        steps: list[Step] = []
        from objeval.combinators import normalize
        normalize(unit.raw, steps)
        trace.extend(str(s) for s in steps)
    return evaluate(unit.code, env_value(unit.shape, bindings, poison), prims, trace)


# ------------------------------------------------------------------ oracle

@dataclass(frozen=True)
class Quote:
    """A value embedded in a term during substitution."""
    value: object


@dataclass(frozen=True)
class Lam:
    """Function value of the substitution oracle: a closed abstraction."""
    term: S.Abs


def _free(t):
    if isinstance(t, Quote):
        return set()
    return set(S.free_vars(t))


def substitute(t, name: str, s):
    """Capture-avoiding ``t[s/name]``."""
    if isinstance(t, S.Var):
        return s if t.name == name else t
    if isinstance(t, S.App):
        return S.App(substitute(t.fun, name, s), substitute(t.arg, name, s))
    if isinstance(t, S.PairT):
        return S.PairT(substitute(t.left, name, s), substitute(t.right, name, s))
    if isinstance(t, S.Abs):
        if t.bound == name:
            return t
        fs = _free(s)
        if t.bound in fs:
            fresh = S._fresh(t.bound, fs | _free(t.body) | {name})
            body = substitute(t.body, t.bound, S.Var(fresh))
            return S.Abs(fresh, substitute(body, name, s))
        return S.Abs(t.bound, substitute(t.body, name, s))
    return t


class Oracle:
    """Big-step evaluation by substitution on surface terms."""

    def __init__(self, prims=None):
        self.prims = DEFAULT_PRIMITIVES if prims is None else prims

    def eval(self, t):
        if isinstance(t, Quote):
            return t.value
        if isinstance(t, S.Const):
            return Atom(t.lit)
        if isinstance(t, S.Builtin):
            return PrimV(t.name)
        if isinstance(t, S.Var):
            raise UnboundVariable(t.name)
        if isinstance(t, S.Abs):
            return Lam(t)
        if isinstance(t, S.PairT):
            left = self.eval(t.left)
            return PairV(left, self.eval(t.right))
        if isinstance(t, S.App):
            f = self.eval(t.fun)
            return self.apply(f, self.eval(t.arg))
        raise TypeError(f"not a term: {t!r}")

    def apply(self, f, a):
        if isinstance(f, Lam):
            return self.eval(substitute(f.term.body, f.term.bound, Quote(a)))
        if isinstance(f, PrimV):
            prim = self.prims.get(f.name)
            if prim is None:
                if f.name.startswith("can_"):
                    return a
                raise UnknownPrimitive(f"unknown primitive {f.name!r}")
            return prim.fn(a, self.apply)
        if isinstance(f, MapV):
            try:
                return f.lookup(a)
            except KeyError:
                raise PrimitiveFailure("outside the domain of a finite map") from None
        raise ApplyOnNonFunction(f"cannot apply {f!r}")


def oracle_eval(t: S.LambdaTerm, bindings: Mapping[str, Value] = None, builtins=None):
    """Reference semantics: substitute the bindings, then reduce by
    capture-avoiding substitution (call by value, left to right).  Returns
    a Value, or a ``Lam`` for function results."""
    bindings = dict(bindings or {})
    prims = DEFAULT_PRIMITIVES if builtins is None else builtins
    if isinstance(t, str):
        from objeval.parsing import parse_term
        t = parse_term(t, [n for n in prims if n not in bindings])
    for name in S.free_vars(t):
        if name not in bindings:
            raise UnboundVariable(name)
        t = substitute(t, name, Quote(bindings[name]))
    return Oracle(prims).eval(t)


def _outcome(thunk):
    try:
        return thunk(), None
    except EvalError as e:
        return None, type(e).__name__


def agree(code_value, oracle_value, probes, prims=None, depth=2) -> bool:
    """Observational equality between a machine value and an oracle value.

    First-order parts must be equal; function values are compared by
    applying both to every probe argument (up to ``depth`` nested
    applications).  An error counts as an observation, so two applications
    that both fail agree.
    """
    functional = (Closure, PrimV, MapV, Lam)
    if isinstance(code_value, PairV) and isinstance(oracle_value, PairV):
        return (agree(code_value.left, oracle_value.left, probes, prims, depth)
                and agree(code_value.right, oracle_value.right, probes, prims, depth))
    if isinstance(code_value, functional) or isinstance(oracle_value, functional):
        if not (isinstance(code_value, functional) and isinstance(oracle_value, functional)):
            return False
        if depth == 0:
            return True
        machine, oracle = Machine(prims), Oracle(prims)
        for p in probes:
            a, ea = _outcome(lambda: machine.apply(code_value, p))
            b, eb = _outcome(lambda: oracle.apply(oracle_value, p))
            if (ea is None) != (eb is None):
                return False
            if ea is None and not agree(a, b, probes, prims, depth - 1):
                return False
        return True
    return code_value == oracle_value


def same_observation(v1: Value, v2: Value, probes, prims=None, depth=2) -> bool:
    """``agree`` between two machine values."""
    functional = (Closure, PrimV, MapV)
    if isinstance(v1, PairV) and isinstance(v2, PairV):
        return (same_observation(v1.left, v2.left, probes, prims, depth)
                and same_observation(v1.right, v2.right, probes, prims, depth))
    if isinstance(v1, functional) and isinstance(v2, functional):
        if depth == 0 or v1 == v2:
            return True
        machine = Machine(prims)
        for p in probes:
            a, ea = _outcome(lambda: machine.apply(v1, p))
            b, eb = _outcome(lambda: machine.apply(v2, p))
            if ea != eb:
                return False
            if ea is None and not same_observation(a, b, probes, prims, depth - 1):
                return False
        return True
    return v1 == v2


__all__ = [
    "DEFAULT_PRIMITIVES", "FALSE", "TRUE", "Machine", "Oracle", "Primitive", "agree",
    "apply", "env_value", "evaluate", "oracle_eval", "run", "same_observation",
    "table_primitive", "with_primitives",
]
