"""Lambda terms and formulas to categorical combinator code.

An environment shape lists slots innermost first; it denotes the product
``(...((E x D_1) x D_2) ...) x D_n``, so the last slot is reached by ``Snd``
and every step inward adds one ``Fst``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional

from objeval import syntax as S
from objeval import values as V
from objeval.combinators import (
    CanEmbed, CombTerm, Comp, ConstC, Cur, Eps, Fst, PairC, Prim, Snd, chain, normalize,
)
from objeval.errors import IllTyped, NotOutermost, ShapeMismatch, UnknownBuiltin, UnknownVariable


@dataclass(frozen=True)
class EnvShape:
    slots: tuple = ()          # ((name, TypeExpr | None), ...)
    base: str = "E"

    def __post_init__(self):
        names = self.names
        if len(set(names)) != len(names):
            raise ShapeMismatch(f"duplicate slot names in {names}")

    @classmethod
    def of(cls, *names, base="E"):
        return cls(tuple((n, None) for n in names), base)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.slots)

    @property
    def last(self) -> Optional[str]:
        return self.slots[-1][0] if self.slots else None

    def type_of(self, name):
        for n, ty in self.slots:
            if n == name:
                return ty
        raise UnknownVariable(name)

    def extend(self, name, ty=None) -> "EnvShape":
        return EnvShape(self.slots + ((name, ty),), self.base)

    def __str__(self):
        parts = [self.base] + [n if ty is None else f"{n}:{S.render_type(ty)}"
                               for n, ty in self.slots]
        return "; ".join(parts)


@dataclass(frozen=True)
class CompiledUnit:
    code: CombTerm
    shape: EnvShape
    result_ty: Optional[S.TypeExpr]
    raw: CombTerm = None       # translation before normalization


def access(name: str, shape: EnvShape) -> CombTerm:
    """``Snd . Fst^k`` projecting slot ``name`` out of the environment."""
    names = shape.names
    if name not in names:
        raise UnknownVariable(name)
    k = len(names) - 1 - names.index(name)
    return chain(Snd, *([Fst] * k))


SUBST = PairC(Comp(Fst, Fst), Snd)


def subst_map(shape: EnvShape, name: str) -> CombTerm:
    """``<Fst . Fst, Snd> : Env x D_name -> Env``, overwriting the outermost
    slot with the supplied value."""
    if name not in shape.names:
        raise UnknownVariable(name)
    if shape.last != name:
        raise NotOutermost(name)
    return SUBST


def _builtin_type(name, prims):
    prim = prims.get(name) if prims is not None else None
    return getattr(prim, "ty", None)


def compile_builtin_app(g: str, arg_ty=None, prims=None) -> CombTerm:
    """Entry point ``Cur(g . Snd)`` for a builtin applied through ``Eps``.
    Names ``can_T`` denote the canonical embedding of base type ``T``."""
    if g.startswith("can_") and S.is_ident(g[4:]):
        return Cur(Comp(CanEmbed(S.Base(g[4:])), Snd))
    if prims is None:
        from objeval.evaluator import DEFAULT_PRIMITIVES as prims
    if g not in prims:
        raise UnknownBuiltin(g)
    return Cur(Comp(Prim(g), Snd))


def _unify_app(fun_ty, arg_ty, t):
    if fun_ty is None:
        return None
    if isinstance(fun_ty, S.Base) and fun_ty not in (S.NAT, S.ATOM):
        return None        # opaque domain such as D_f: nothing to check
    if not isinstance(fun_ty, S.Arrow):
        raise IllTyped(f"applying a value of type {S.render_type(fun_ty)} in {S.render_term(t)}")
    if arg_ty is not None and fun_ty.dom != arg_ty:
        raise IllTyped(f"argument of type {S.render_type(arg_ty)} where "
                       f"{S.render_type(fun_ty.dom)} expected in {S.render_term(t)}")
    return fun_ty.cod


def _translate(t, shape, prims):
    """Return (raw code, result type or None)."""
    if isinstance(t, S.Var):
        return access(t.name, shape), shape.type_of(t.name)
    if isinstance(t, S.Const):
        ty = S.NAT if isinstance(t.lit, int) else S.ATOM
        return ConstC(V.literal_value(t.lit)), ty
    if isinstance(t, S.Builtin):
        code = compile_builtin_app(t.name, prims=prims)
        if isinstance(code.body.outer, CanEmbed):
            ty = code.body.outer.ty
            return code, S.Arrow(ty, ty)
        return code, _builtin_type(t.name, prims)
    if isinstance(t, S.App):
        f, fty = _translate(t.fun, shape, prims)
        a, aty = _translate(t.arg, shape, prims)
        return Comp(Eps, PairC(f, a)), _unify_app(fty, aty, t)
    if isinstance(t, S.PairT):
        l, lty = _translate(t.left, shape, prims)
        r, rty = _translate(t.right, shape, prims)
        ty = S.Prod(lty, rty) if lty is not None and rty is not None else None
        return PairC(l, r), ty
    if isinstance(t, S.Abs):
        x = t.bound
        if shape.last == x:
            body, bty = _translate(t.body, shape, prims)
            code = Cur(Comp(body, subst_map(shape, x)))
            xty = shape.type_of(x)
        elif x not in shape.names:
            # binder opens a fresh outermost slot
            inner = shape.extend(x)
            body, bty = _translate(t.body, inner, prims)
            code = Cur(body)
            xty = None
        else:
            raise ShapeMismatch(f"bound variable {x!r} must be the outermost slot of "
                                f"[{shape}] at its abstraction")
        ty = S.Arrow(xty, bty) if xty is not None and bty is not None else None
        return code, ty
    raise TypeError(f"not a lambda term: {t!r}")


def compile_term(t: S.LambdaTerm, shape: EnvShape, prims=None) -> CompiledUnit:
    """Translate ``t`` into normalized combinator code over ``shape``.

    Variables become access functions, application becomes
    ``Eps . <fun, arg>`` and ``\\x. b`` becomes ``Cur(b . Subst_x)`` when
    ``x`` is the outermost slot.  A binder whose name is not in the shape
    gets a fresh outermost slot (``Cur(b)`` over the extended shape), which
    is how nested abstractions are compiled.
    """
    if prims is None:
        from objeval.evaluator import DEFAULT_PRIMITIVES as prims
    raw, ty = _translate(t, shape, prims)
    return CompiledUnit(normalize(raw), shape, ty, raw)


# ----------------------------------------------------------- formulas

def _operand(o, shape):
    if isinstance(o, S.Lit):
        return ConstC(V.literal_value(o.value))
    return access(o, shape)


def _binop(name, a, b):
    return Comp(Prim(name), PairC(a, b))


def _formula_code(phi, shape, prims, carrier_of):
    op = lambda o: _operand(o, shape)  # noqa: E731
    if isinstance(phi, S.EqVar):
        return _binop("eq", op(phi.x), op(phi.y))
    if isinstance(phi, S.EqCFun):
        if prims is not None and phi.g not in prims:
            raise UnknownBuiltin(phi.g)
        return _binop("eq", op(phi.y), Comp(Prim(phi.g), op(phi.x)))
    if isinstance(phi, S.EqPair):
        return _binop("eq", op(phi.z), PairC(op(phi.x), op(phi.y)))
    if isinstance(phi, S.EqApp):
        return _binop("eq", op(phi.z), Comp(Eps, PairC(op(phi.x), op(phi.y))))
    if isinstance(phi, S.Mem):
        return _binop("in", op(phi.x), op(phi.y))
    if isinstance(phi, S.Verum):
        return ConstC(V.TRUE)
    if isinstance(phi, S.Falsum):
        return ConstC(V.FALSE)
    if isinstance(phi, S.Not):
        return Comp(Prim("not"), _formula_code(phi.body, shape, prims, carrier_of))
    if isinstance(phi, (S.And, S.Or, S.Implies)):
        name = {S.And: "and", S.Or: "or", S.Implies: "implies"}[type(phi)]
        return _binop(name, _formula_code(phi.left, shape, prims, carrier_of),
                      _formula_code(phi.right, shape, prims, carrier_of))
    if isinstance(phi, (S.Forall, S.Exists)):
        var, body = phi.var, phi.body
        if var in shape.names:
            fresh = S._fresh(var, set(shape.names) | set(S.formula_free_vars(body)))
            body, var = S.rename_free(body, var, fresh), fresh
        if carrier_of is None:
            raise ShapeMismatch(f"no carrier for quantified type {S.render_type(phi.ty)}")
        domain = ConstC(V.SetV(frozenset(carrier_of(phi.ty))))
        inner = _formula_code(body, shape.extend(var, phi.ty), prims, carrier_of)
        name = "forall" if isinstance(phi, S.Forall) else "exists"
        return _binop(name, Cur(inner), domain)
    raise TypeError(f"not a formula: {phi!r}")


def compile_formula(phi: S.Formula, shape: EnvShape, subject: str, prims=None,
                    carrier_of: Optional[Callable] = None) -> CompiledUnit:
    """Code for ``Env x T -> Truth`` deciding ``phi`` for the subject value.

    The raw form is ``Eps . <Cur(body) . Fst, Snd>`` with
    ``body = code(phi) . Subst_subject``; R1 collapses it to ``body``.
    ``carrier_of`` maps a quantified type to its finite set of values.
    """
    if shape.last != subject:
        raise NotOutermost(subject)
    body = Comp(_formula_code(phi, shape, prims, carrier_of), subst_map(shape, subject))
    raw = Comp(Eps, PairC(Comp(Cur(body), Fst), Snd))
    return CompiledUnit(normalize(raw), shape, S.Truth(), raw)


def compile_env(bindings: Mapping[str, object], term: S.LambdaTerm) -> EnvShape:
    """Shape used by the end-to-end pipeline: one slot per binding, in
    order, plus a slot for the first binder of ``term`` (preorder)."""
    slots = [(name, None) for name in bindings]
    binders = S.bound_vars(term)
    if binders and binders[0] not in bindings:
        slots.append((binders[0], None))
    return EnvShape(tuple(slots))
