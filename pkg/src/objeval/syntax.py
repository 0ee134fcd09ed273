"""Surface syntax: type expressions, lambda terms, formulas and descriptions.

All nodes are frozen dataclasses, so structural equality is ``==`` and
terms can be used as dict keys.  Parsing lives in :mod:`objeval.parsing`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")


def is_ident(name: str) -> bool:
    return bool(IDENT_RE.match(name))


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Prod:
    left: "TypeExpr"
    right: "TypeExpr"


@dataclass(frozen=True)
class Arrow:
    dom: "TypeExpr"
    cod: "TypeExpr"


@dataclass(frozen=True)
class Power:
    elem: "TypeExpr"


@dataclass(frozen=True)
class Truth:
    pass


TypeExpr = Union[Base, Unit, Prod, Arrow, Power, Truth]
NAT = Base("nat")
ATOM = Base("atom")


def render_type(ty: TypeExpr, prec: int = 0) -> str:
    # prec: 0 arrow context, 1 product operand, 2 arrow domain
    if isinstance(ty, Base):
        return ty.name
    if isinstance(ty, Unit):
        return "1"
    if isinstance(ty, Truth):
        return "Truth"
    if isinstance(ty, Power):
        return f"[{render_type(ty.elem)}]"
    if isinstance(ty, Prod):
        s = f"{render_type(ty.left, 1)} * {render_type(ty.right, 2)}"
        return f"({s})" if prec >= 2 else s
    if isinstance(ty, Arrow):
        s = f"{render_type(ty.dom, 2)} -> {render_type(ty.cod, 0)}"
        return f"({s})" if prec >= 1 else s
    raise TypeError(f"not a type: {ty!r}")


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    lit: Union[int, str]      # str literals are atom names


@dataclass(frozen=True)
class Builtin:
    name: str


@dataclass(frozen=True)
class App:
    fun: "LambdaTerm"
    arg: "LambdaTerm"


@dataclass(frozen=True)
class Abs:
    bound: str
    body: "LambdaTerm"


@dataclass(frozen=True)
class PairT:
    left: "LambdaTerm"
    right: "LambdaTerm"


LambdaTerm = Union[Var, Const, Builtin, App, Abs, PairT]


def render_literal(lit) -> str:
    if isinstance(lit, bool):
        return "true" if lit else "false"
    if isinstance(lit, int):
        return str(lit)
    return f"atom:{lit}"


def render_term(t: LambdaTerm) -> str:
    if isinstance(t, Var) or isinstance(t, Builtin):
        return t.name
    if isinstance(t, Const):
        return render_literal(t.lit)
    if isinstance(t, PairT):
        return f"[{render_term(t.left)}, {render_term(t.right)}]"
    if isinstance(t, Abs):
        return f"\\{t.bound}. {render_term(t.body)}"
    if isinstance(t, App):
        fun = render_term(t.fun)
        if isinstance(t.fun, Abs):
            fun = f"({fun})"
        arg = render_term(t.arg)
        if isinstance(t.arg, (App, Abs)):
            arg = f"({arg})"
        return f"{fun} {arg}"
    raise TypeError(f"not a lambda term: {t!r}")


def free_vars(t: LambdaTerm) -> list[str]:
    """Free variable names in first-occurrence order (left to right)."""
    out: list[str] = []

    def walk(t, bound):
        if isinstance(t, Var):
            if t.name not in bound and t.name not in out:
                out.append(t.name)
        elif isinstance(t, App):
            walk(t.fun, bound)
            walk(t.arg, bound)
        elif isinstance(t, PairT):
            walk(t.left, bound)
            walk(t.right, bound)
        elif isinstance(t, Abs):
            walk(t.body, bound | {t.bound})

    walk(t, frozenset())
    return out


def bound_vars(t: LambdaTerm) -> list[str]:
    """Binder names in preorder (binding order), duplicates kept."""
    out: list[str] = []

    def walk(t):
        if isinstance(t, Abs):
            out.append(t.bound)
            walk(t.body)
        elif isinstance(t, App):
            walk(t.fun)
            walk(t.arg)
        elif isinstance(t, PairT):
            walk(t.left)
            walk(t.right)

    walk(t)
    return out


def _fresh(name: str, used) -> str:
    k = 1
    while f"{name}{k}" in used:
        k += 1
    return f"{name}{k}"


def alpha_rename(t: LambdaTerm, reserved=()) -> LambdaTerm:
    """Rename binders so that bound names are pairwise distinct and never
    collide with a free name (or a name in ``reserved``).  Binders that are
    already unique keep their name, so the operation is idempotent."""
    used = set(free_vars(t)) | set(reserved)

    def walk(t, ren):
        if isinstance(t, Var):
            return Var(ren.get(t.name, t.name))
        if isinstance(t, App):
            return App(walk(t.fun, ren), walk(t.arg, ren))
        if isinstance(t, PairT):
            return PairT(walk(t.left, ren), walk(t.right, ren))
        if isinstance(t, Abs):
            new = t.bound if t.bound not in used else _fresh(t.bound, used)
            used.add(new)
            return Abs(new, walk(t.body, {**ren, t.bound: new}))
        return t

    return walk(t, {})


def term_depth(t: LambdaTerm) -> int:
    if isinstance(t, (App, PairT)):
        a, b = (t.fun, t.arg) if isinstance(t, App) else (t.left, t.right)
        return 1 + max(term_depth(a), term_depth(b))
    if isinstance(t, Abs):
        return 1 + term_depth(t.body)
    return 1


# ---------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Lit:
    """Literal operand in an atomic formula (integer or atom name)."""
    value: Union[int, str]


Operand = Union[str, Lit]


@dataclass(frozen=True)
class EqVar:
    x: Operand
    y: Operand


@dataclass(frozen=True)
class EqCFun:
    y: Operand
    g: str
    x: Operand


@dataclass(frozen=True)
class EqPair:
    z: Operand
    x: Operand
    y: Operand


@dataclass(frozen=True)
class EqApp:
    z: Operand
    x: Operand
    y: Operand


@dataclass(frozen=True)
class Mem:
    y: Operand
    x: Operand


@dataclass(frozen=True)
class Verum:
    pass


@dataclass(frozen=True)
class Falsum:
    pass


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    ty: TypeExpr
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    ty: TypeExpr
    body: "Formula"


ATOMIC = (EqVar, EqCFun, EqPair, EqApp, Mem)
Formula = Union[EqVar, EqCFun, EqPair, EqApp, Mem, Verum, Falsum,
                Not, And, Or, Implies, Forall, Exists]


@dataclass(frozen=True)
class Description:
    bound: str
    ty: TypeExpr
    body: Formula


def operands(phi) -> tuple:
    """Operand positions of an atomic formula (the function name of
    ``EqCFun`` is not an operand)."""
    if isinstance(phi, EqVar):
        return (phi.x, phi.y)
    if isinstance(phi, EqCFun):
        return (phi.y, phi.x)
    if isinstance(phi, (EqPair, EqApp)):
        return (phi.z, phi.x, phi.y)
    if isinstance(phi, Mem):
        return (phi.y, phi.x)
    return ()


def formula_free_vars(phi: Formula) -> list[str]:
    out: list[str] = []

    def walk(f, bound):
        if isinstance(f, ATOMIC):
            for o in operands(f):
                if isinstance(o, str) and o not in bound and o not in out:
                    out.append(o)
        elif isinstance(f, Not):
            walk(f.body, bound)
        elif isinstance(f, (And, Or, Implies)):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, (Forall, Exists)):
            walk(f.body, bound | {f.var})

    walk(phi, frozenset())
    return out


def rename_free(phi: Formula, old: str, new: str) -> Formula:
    """Replace free occurrences of variable ``old`` by ``new``."""
    def op(o):
        return new if o == old else o

    if isinstance(phi, EqVar):
        return EqVar(op(phi.x), op(phi.y))
    if isinstance(phi, EqCFun):
        return EqCFun(op(phi.y), phi.g, op(phi.x))
    if isinstance(phi, EqPair):
        return EqPair(op(phi.z), op(phi.x), op(phi.y))
    if isinstance(phi, EqApp):
        return EqApp(op(phi.z), op(phi.x), op(phi.y))
    if isinstance(phi, Mem):
        return Mem(op(phi.y), op(phi.x))
    if isinstance(phi, Not):
        return Not(rename_free(phi.body, old, new))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(rename_free(phi.left, old, new),
                         rename_free(phi.right, old, new))
    if isinstance(phi, (Forall, Exists)):
        if phi.var == old:
            return phi
        return type(phi)(phi.var, phi.ty, rename_free(phi.body, old, new))
    return phi


def _render_operand(o: Operand) -> str:
    return render_literal(o.value) if isinstance(o, Lit) else o


def render_formula(phi: Formula, prec: int = 0) -> str:
    # precedence: quantifier 0 < implies 1 < or 2 < and 3 < not 4 < atom 5
    r = _render_operand
    if isinstance(phi, EqVar):
        return f"{r(phi.x)} = {r(phi.y)}"
    if isinstance(phi, EqCFun):
        return f"{r(phi.y)} = {phi.g} {r(phi.x)}"
    if isinstance(phi, EqPair):
        return f"{r(phi.z)} = [{r(phi.x)}, {r(phi.y)}]"
    if isinstance(phi, EqApp):
        return f"{r(phi.z)} = {r(phi.x)}({r(phi.y)})"
    if isinstance(phi, Mem):
        return f"{r(phi.y)} in {r(phi.x)}"
    if isinstance(phi, Verum):
        return "true"
    if isinstance(phi, Falsum):
        return "false"
    if isinstance(phi, Not):
        s, own = f"not {render_formula(phi.body, 4)}", 4
    elif isinstance(phi, And):
        s, own = f"{render_formula(phi.left, 3)} and {render_formula(phi.right, 4)}", 3
    elif isinstance(phi, Or):
        s, own = f"{render_formula(phi.left, 2)} or {render_formula(phi.right, 3)}", 2
    elif isinstance(phi, Implies):
        s, own = f"{render_formula(phi.left, 2)} -> {render_formula(phi.right, 1)}", 1
    elif isinstance(phi, (Forall, Exists)):
        q = "forall" if isinstance(phi, Forall) else "exists"
        s, own = f"{q} {phi.var}:{render_type(phi.ty)}. {render_formula(phi.body, 0)}", 0
    else:
        raise TypeError(f"not a formula: {phi!r}")
    return f"({s})" if own < prec else s


def render_description(d: Description) -> str:
    return f"iota {d.bound}:{render_type(d.ty)}. {render_formula(d.body)}"


def render(t) -> str:
    """Render a lambda term, formula, description, type or combinator term."""
    from objeval import combinators

    if isinstance(t, (Var, Const, Builtin, App, Abs, PairT)):
        return render_term(t)
    if isinstance(t, Description):
        return render_description(t)
    if isinstance(t, (Base, Unit, Prod, Arrow, Power, Truth)):
        return render_type(t)
    if isinstance(t, combinators.COMB_TYPES):
        return combinators.render_code(t)
    return render_formula(t)
