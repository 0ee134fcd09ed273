"""Seeded random generators for the differential and property suites.

Everything takes an explicit ``random.Random`` so runs are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from objeval import syntax as S
from objeval import values as V
from objeval.combinators import (
    Comp, ConstC, Cur, Eps, Fst, Id, PairC, Prim, Snd,
)

NAT, FUN = S.NAT, S.Arrow(S.NAT, S.NAT)
PAIR = S.Prod(S.NAT, S.NAT)
PROBES = tuple(V.Atom(n) for n in range(5))


@dataclass
class TermConfig:
    max_depth: int = 5
    free_names: tuple = ("u", "v", "w")
    binder_names: tuple = ("x", "y", "z", "u")   # "u" also occurs free: exercises renaming
    max_free: int = 3
    max_lit: int = 4
    fun_values: tuple = ("succ", "id")
    result_types: tuple = (NAT, NAT, FUN, PAIR)


@dataclass
class TermCase:
    term: S.LambdaTerm
    bindings: dict = field(default_factory=dict)
    ty: object = None

    @property
    def text(self):
        return S.render_term(self.term)


def _vars_of(ctx, ty):
    # innermost binding of each name wins
    seen, out = set(), []
    for name, t in reversed(ctx):
        if name not in seen:
            seen.add(name)
            if t == ty:
                out.append(name)
    return out


class TermGen:
    """Well-typed, well-scoped terms over ``nat``, ``nat -> nat`` and
    ``nat * nat`` with builtins ``succ`` and ``+``."""

    def __init__(self, rng: random.Random, cfg: TermConfig = None):
        self.rng = rng
        self.cfg = cfg or TermConfig()

    def case(self) -> TermCase:
        rng, cfg = self.rng, self.cfg
        names = rng.sample(cfg.free_names, rng.randint(0, cfg.max_free))
        bindings, ctx = {}, []
        for n in names:
            if rng.random() < 0.6:
                bindings[n] = V.Atom(rng.randint(0, cfg.max_lit))
                ctx.append((n, NAT))
            else:
                bindings[n] = V.PrimV(rng.choice(cfg.fun_values))
                ctx.append((n, FUN))
        ty = rng.choice(cfg.result_types)
        return TermCase(self.term(ty, ctx, cfg.max_depth), bindings, ty)

    def term(self, ty, ctx, budget):
        rng = self.rng
        if ty == PAIR:
            # no variables of product type, so a pair needs budget >= 2
            return S.PairT(self.term(NAT, ctx, budget - 1), self.term(NAT, ctx, budget - 1))
        if budget <= 1:
            return self._leaf(ty, ctx)
        # every subterm has depth >= 1, so each form needs a minimum budget
        options = ["leaf"] + (["beta"] if budget >= 3 else [])
        if ty == NAT:
            options += ["app", "succ", "app"] + (["plus"] if budget >= 3 else [])
        else:
            options += ["lam", "lam"] + (["curried"] if budget >= 4 else [])
        kind = rng.choice(options)
        if kind == "leaf":
            return self._leaf(ty, ctx)
        if kind == "beta":
            # (\x. body) arg
            sigma = rng.choice([NAT, NAT, FUN])
            x = rng.choice(self.cfg.binder_names)
            body = self.term(ty, ctx + [(x, sigma)], budget - 2)
            return S.App(S.Abs(x, body), self.term(sigma, ctx, budget - 1))
        if kind == "app":
            return S.App(self.term(FUN, ctx, budget - 1), self.term(NAT, ctx, budget - 1))
        if kind == "plus":
            return S.App(S.Builtin("+"), self.term(PAIR, ctx, budget - 1))
        if kind == "succ":
            return S.App(S.Builtin("succ"), self.term(NAT, ctx, budget - 1))
        if kind == "lam":
            x = rng.choice(self.cfg.binder_names)
            return S.Abs(x, self.term(NAT, ctx + [(x, NAT)], budget - 1))
        if kind == "curried":
            # (\f. \x. f (f x)) style: a function built from a function argument
            f, x = rng.sample(self.cfg.binder_names, 2)
            inner = S.Abs(x, self.term(NAT, ctx + [(f, FUN), (x, NAT)], budget - 3))
            return S.App(S.Abs(f, inner), self.term(FUN, ctx, budget - 1))
        raise AssertionError(kind)

    def _leaf(self, ty, ctx):
        rng = self.rng
        names = _vars_of(ctx, ty)
        if names and rng.random() < 0.7:
            return S.Var(rng.choice(names))
        if ty == NAT:
            return S.Const(rng.randint(0, self.cfg.max_lit))
        return S.Builtin("succ")


def term_cases(seed: int, n: int, cfg: TermConfig = None) -> list[TermCase]:
    gen = TermGen(random.Random(seed), cfg)
    return [gen.case() for _ in range(n)]


# ------------------------------------------------------------- combinator code

def random_value(rng: random.Random, depth=3) -> V.Value:
    """Nested pairs of small atoms, with the occasional function value."""
    if depth <= 0 or rng.random() < 0.15:
        r = rng.random()
        if r < 0.7:
            return V.Atom(rng.randint(0, 4))
        if r < 0.85:
            return V.PrimV("succ")
        return V.UNIT
    return V.PairV(random_value(rng, depth - 1), random_value(rng, depth - 1))


def random_code(rng: random.Random, depth=3):
    """Random combinator term; many do not evaluate on a given input, the
    callers filter."""
    if depth <= 0:
        return rng.choice([Id, Fst, Snd, Fst, Snd, ConstC(V.Atom(rng.randint(0, 4)))])
    r = rng.random()
    if r < 0.25:
        return random_code(rng, 0)
    if r < 0.5:
        return Comp(random_code(rng, depth - 1), random_code(rng, depth - 1))
    if r < 0.7:
        return PairC(random_code(rng, depth - 1), random_code(rng, depth - 1))
    if r < 0.8:
        return Cur(random_code(rng, depth - 1))
    if r < 0.9:
        # an application that has a chance to succeed
        return Comp(Eps, PairC(Cur(random_code(rng, depth - 1)), random_code(rng, depth - 1)))
    return Comp(Prim("succ"), random_code(rng, depth - 1))


def rule_instance(rule: str, rng: random.Random):
    """A (redex, contractum) pair for ``rule`` with random subterms."""
    c = lambda: random_code(rng, rng.randint(0, 3))  # noqa: E731
    if rule == "R1":
        h = c()
        return Comp(Eps, PairC(Comp(Cur(h), Fst), Snd)), h
    if rule == "R2":
        k = c()
        return Cur(Comp(Eps, PairC(Comp(k, Fst), Snd))), k
    if rule == "R3":
        a, b = c(), c()
        return Comp(Fst, PairC(a, b)), a
    if rule == "R4":
        a, b = c(), c()
        return Comp(Snd, PairC(a, b)), b
    if rule == "R5":
        a, b, d = c(), c(), c()
        return Comp(PairC(a, b), d), PairC(Comp(a, d), Comp(b, d))
    if rule == "R6":
        a = c()
        return (Comp(Id, a), a) if rng.random() < 0.5 else (Comp(a, Id), a)
    if rule == "R7":
        return PairC(Fst, Snd), Id
    raise ValueError(rule)


# ------------------------------------------------------------- finite models

@dataclass
class FormulaCase:
    formula: S.Formula
    subject: str
    stage: str
    ty: S.TypeExpr
    cat: object
    car: object
    nu: dict


def random_model(rng: random.Random, max_stage=3, max_type=3):
    """One stage ``I`` and one type ``T`` with a transition ``g: T -> T``
    and parameters of types ``T``, ``[T]``, ``T -> T`` and ``T * T``."""
    from objeval.domains.model import Carrier, Individual, StageCat

    n_i, n_t = rng.randint(1, max_stage), rng.randint(1, max_type)
    cat = StageCat({"I": tuple(f"i{k}" for k in range(n_i))})
    car = Carrier({"T": tuple(f"t{k}" for k in range(n_t))})
    T = S.Base("T")
    ts = car.elements(T)
    car.add_transition("g", T, T, {t: rng.choice(ts) for t in ts})
    nu = {}
    for name, ty in (("p", T), ("q", T), ("s", S.Power(T)), ("m", S.Arrow(T, T)),
                     ("z", S.Prod(T, T))):
        vals = car.elements(ty)
        nu[name] = Individual("I", ty, tuple(rng.choice(vals) for _ in range(n_i)))
    return cat, car, nu


def random_atomic(rng: random.Random, car, x="x"):
    """Random atomic formula mentioning the subject ``x : T``."""
    ts = car.elements(S.Base("T"))

    def t_operand():
        r = rng.random()
        if r < 0.4:
            return x
        if r < 0.7:
            return rng.choice(["p", "q"])
        return S.Lit(rng.choice(ts))

    while True:
        kind = rng.choice(["eq", "cfun", "pair", "app", "mem"])
        if kind == "eq":
            phi = S.EqVar(t_operand(), t_operand())
        elif kind == "cfun":
            phi = S.EqCFun(t_operand(), rng.choice(["g", "1_T"]), t_operand())
        elif kind == "pair":
            phi = S.EqPair("z", t_operand(), t_operand())
        elif kind == "app":
            phi = S.EqApp(t_operand(), "m", t_operand())
        else:
            phi = S.Mem(t_operand(), "s")
        if x in S.operands(phi):
            return phi


def formula_cases(seed: int, n: int) -> list[FormulaCase]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        cat, car, nu = random_model(rng)
        phi = random_atomic(rng, car)
        used = {k: v for k, v in nu.items() if k in S.formula_free_vars(phi)}
        out.append(FormulaCase(phi, "x", "I", S.Base("T"), cat, car, used))
    return out
