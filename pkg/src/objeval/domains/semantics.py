"""Variable domains H_T over a finite stage category, and formulas
interpreted at a stage.

``hom(I, T)`` is the set of all functions from the elements of stage ``I``
into the carrier of ``T``.  An arrow ``f: B -> A`` acts on individuals by
precomposition (``restrict``); a type transition ``g: T -> S`` acts by
postcomposition (``transact``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from objeval import syntax as S
from objeval.domains.model import (
    Arrow, Carrier, Individual, StageCat, _as_type, constant, elem_key, enum_cap, one_point,
    render_elem,
)
from objeval.errors import (
    EnumerationCapExceeded, NotUnique, NoWitness, StageMismatch, TypeMismatch, UnboundVariable,
)


def hom(I: str, T, cat: StageCat, car: Carrier, cap: Optional[int] = None) -> list[Individual]:
    """All individuals ``I -> T``, in a fixed order."""
    T = _as_type(T)
    n = len(cat.elements(I))
    vals = car.elements(T, cap)
    limit = enum_cap(cap)
    if len(vals) ** n > limit:
        raise EnumerationCapExceeded(
            f"hom({I}, {S.render_type(T)}) has {len(vals)}^{n} members, over the cap {limit}")
    return [Individual(I, T, combo) for combo in itertools.product(vals, repeat=n)]


def restrict(h: Individual, f: Arrow) -> Individual:
    """``h . f`` for ``f: B -> dom(h)``: the individual cloned along ``f``."""
    if f.cod != h.dom_stage:
        raise StageMismatch(f"cannot restrict an individual over {h.dom_stage!r} along "
                            f"{f.name}: {f.dom} -> {f.cod}")
    vals = h.values
    return Individual(f.dom, h.cod_type, tuple(vals[k] for k in f.index))


def transact(g, h: Individual) -> Individual:
    """``g . h`` for a type transition ``g: C -> E``."""
    if g.dom != h.cod_type:
        raise TypeMismatch(f"transition {g.name}: {S.render_type(g.dom)} -> "
                           f"{S.render_type(g.cod)} applied to an individual into "
                           f"{S.render_type(h.cod_type)}")
    table = dict(g.table)
    return Individual(h.dom_stage, g.cod, tuple(table[v] for v in h.values))


def clone_transact(g, h: Individual, f: Arrow) -> Individual:
    """``g . h . f``."""
    return transact(g, restrict(h, f))


def stage_state(T, i, pop, cat: StageCat) -> frozenset:
    """``{h(i) | h in pop}``: what the population looks like at element ``i``."""
    out = set()
    for h in pop:
        out.add(h.at(cat, i))
    return frozenset(out)


# ------------------------------------------------------------- formulas

def _literal_elem(lit, ty, car):
    if ty is not None:
        for e in car.elements(ty):
            if e == lit or str(e) == str(lit):
                return e
    return lit


class _Interp:
    """Interpretation of a formula at stage ``A`` under a valuation."""

    def __init__(self, A, cat, car, cap=None):
        self.A, self.cat, self.car, self.cap = A, cat, car, cap
        self.n = len(cat.elements(A))

    def values(self, o, nu, ty_hint=None):
        """Per-element values of an operand (tuple aligned with stage A)."""
        if isinstance(o, S.Lit):
            return (_literal_elem(o.value, ty_hint, self.car),) * self.n, ty_hint
        if o not in nu:
            raise UnboundVariable(o)
        h = nu[o]
        if h.dom_stage != self.A:
            raise StageMismatch(f"{o} is evaluated over {h.dom_stage!r}, not {self.A!r}")
        return h.values, h.cod_type

    def _pair_hint(self, o, nu):
        if isinstance(o, str) and o in nu:
            return nu[o].cod_type
        return None

    def atomic(self, phi, nu) -> bool:
        if isinstance(phi, S.EqVar):
            hint = self._pair_hint(phi.x, nu) or self._pair_hint(phi.y, nu)
            xs, _ = self.values(phi.x, nu, hint)
            ys, _ = self.values(phi.y, nu, hint)
            return all(a == b for a, b in zip(xs, ys))
        if isinstance(phi, S.EqCFun):
            g = self.car.transition(phi.g)
            xs, xty = self.values(phi.x, nu, g.dom)
            ys, yty = self.values(phi.y, nu, g.cod)
            if xty is not None and xty != g.dom:
                raise TypeMismatch(f"{phi.g} expects {S.render_type(g.dom)}, "
                                   f"got {S.render_type(xty)}")
            if yty is not None and yty != g.cod:
                raise TypeMismatch(f"{phi.g} yields {S.render_type(g.cod)}, "
                                   f"compared with {S.render_type(yty)}")
            return all(y == g(x) for x, y in zip(xs, ys))
        if isinstance(phi, S.EqPair):
            zty = self._pair_hint(phi.z, nu)
            lh = zty.left if isinstance(zty, S.Prod) else None
            rh = zty.right if isinstance(zty, S.Prod) else None
            zs, _ = self.values(phi.z, nu)
            xs, _ = self.values(phi.x, nu, lh)
            ys, _ = self.values(phi.y, nu, rh)
            return all(z == (x, y) for z, x, y in zip(zs, xs, ys))
        if isinstance(phi, S.EqApp):
            fs, fty = self.values(phi.x, nu)
            if not isinstance(fty, S.Arrow):
                raise TypeMismatch(f"{phi.x} is applied but has type "
                                   f"{S.render_type(fty) if fty else 'unknown'}")
            ys, _ = self.values(phi.y, nu, fty.dom)
            zs, _ = self.values(phi.z, nu, fty.cod)
            return all(z == f(y) for z, f, y in zip(zs, fs, ys))
        if isinstance(phi, S.Mem):
            xs, xty = self.values(phi.x, nu)
            if not isinstance(xty, S.Power):
                raise TypeMismatch(f"membership in {phi.x}, which is not of a power type")
            ys, _ = self.values(phi.y, nu, xty.elem)
            return all(y in x for y, x in zip(ys, xs))
        raise TypeError(f"not an atomic formula: {phi!r}")

    def holds(self, phi, nu) -> bool:
        if isinstance(phi, S.ATOMIC):
            return self.atomic(phi, nu)
        if isinstance(phi, S.Verum):
            return True
        if isinstance(phi, S.Falsum):
            return False
        if isinstance(phi, S.Not):
            return not self.holds(phi.body, nu)
        if isinstance(phi, S.And):
            return self.holds(phi.left, nu) and self.holds(phi.right, nu)
        if isinstance(phi, S.Or):
            return self.holds(phi.left, nu) or self.holds(phi.right, nu)
        if isinstance(phi, S.Implies):
            return (not self.holds(phi.left, nu)) or self.holds(phi.right, nu)
        if isinstance(phi, (S.Forall, S.Exists)):
            quant = all if isinstance(phi, S.Forall) else any
            return quant(self.holds(phi.body, {**nu, phi.var: t})
                         for t in hom(self.A, phi.ty, self.cat, self.car, self.cap))
        raise TypeError(f"not a formula: {phi!r}")


def eval_formula(phi: S.Formula, A: str, nu: Mapping[str, Individual], cat: StageCat,
                 car: Carrier, cap=None) -> bool:
    """Truth of ``phi`` at stage ``A`` under valuation ``nu``.

    Atomic formulas are checked element by element and conjoined over the
    elements of ``A`` (so ``x = y`` is equality of individuals).
    Connectives are classical; quantifiers range over ``hom(A, T)``.
    """
    return _Interp(A, cat, car, cap).holds(phi, dict(nu))


@dataclass(frozen=True)
class Concept:
    formula: S.Formula
    subject: str
    per_stage: dict        # stage -> frozenset of Individual


def concept_at(phi, y: str, ty, A: str, cat: StageCat, car: Carrier,
               nu: Optional[Mapping] = None, cap=None) -> frozenset:
    """``C(A)``: the members ``t`` of ``hom(A, ty)`` with ``phi`` true for
    ``y := t``.  ``nu`` supplies any other free variables."""
    ty = _as_type(ty)
    nu = dict(nu or {})
    interp = _Interp(A, cat, car, cap)
    return frozenset(t for t in hom(A, ty, cat, car, cap) if interp.holds(phi, {**nu, y: t}))


def concept(phi, y: str, ty, cat: StageCat, car: Carrier, cap=None) -> Concept:
    """``C(A)`` for every stage of ``cat``."""
    return Concept(phi, y, {A: concept_at(phi, y, ty, A, cat, car, cap=cap)
                            for A in cat.stages})


def concept_along(phi, y: str, ty, f: Arrow, cat: StageCat, car: Carrier,
                  nu: Optional[Mapping] = None, cap=None) -> frozenset:
    """``C_f`` for ``f: B -> A``: the image of ``C(A)`` under restriction
    along ``f``, a subset of ``hom(B, ty)``."""
    return frozenset(restrict(s, f) for s in concept_at(phi, y, ty, f.cod, cat, car, nu, cap))


def along_within_target(phi, y, ty, f: Arrow, cat, car, cap=None) -> bool:
    """Whether ``C_f`` is contained in ``C(B)`` for this formula and arrow.
    This holds for formulas preserved by restriction, not in general."""
    return concept_along(phi, y, ty, f, cat, car, cap=cap) <= \
        concept_at(phi, y, ty, f.dom, cat, car, cap=cap)


# ------------------------------------------------------------- descriptions

POINT = "*"


def describe(phi, x: str, domain, car: Optional[Carrier] = None, context=None):
    """The unique ``d`` in ``domain`` making ``phi`` true for ``x := d``.

    ``domain`` is a type (resolved in ``car``) or an explicit collection of
    elements.  ``context`` fixes other free variables as plain elements.
    Every candidate is checked at a one-point stage; an empty extension
    raises :class:`NoWitness`, more than one witness :class:`NotUnique`.
    """
    if car is None:
        car = Carrier({})
    if isinstance(domain, (S.Base, S.Unit, S.Prod, S.Arrow, S.Power, S.Truth, str)):
        ty = _as_type(domain)
        elems = car.elements(ty)
    else:
        elems = tuple(sorted(domain, key=elem_key))
        ty = S.Base("_D")
        car = Carrier({**car.types, "_D": elems}, dict(car.transitions))
    cat = one_point(POINT, POINT)
    nu = {name: Individual(POINT, ty_of(v, car), (v,)) for name, v in (context or {}).items()}
    interp = _Interp(POINT, cat, car)
    witnesses = [d for d in elems if interp.holds(phi, {**nu, x: Individual(POINT, ty, (d,))})]
    if not witnesses:
        raise NoWitness(f"no element satisfies {S.render_formula(phi)}")
    if len(witnesses) > 1:
        shown = ", ".join(render_elem(w) for w in witnesses)
        raise NotUnique(f"{len(witnesses)} elements satisfy {S.render_formula(phi)}: {shown}",
                        witnesses)
    return witnesses[0]


def describe_description(d: S.Description, car: Carrier, context=None):
    return describe(d.body, d.bound, d.ty, car, context)


def ty_of(v, car: Carrier):
    """Best-effort type of a bare element (used for context values)."""
    for name, elems in car.types.items():
        if v in elems:
            return S.Base(name)
    if isinstance(v, bool):
        return S.Truth()
    return None


__all__ = [
    "Concept", "along_within_target", "clone_transact", "concept", "concept_along",
    "concept_at", "constant", "describe", "describe_description", "eval_formula", "hom",
    "restrict", "stage_state", "transact",
]
