"""Individuals into a power type as relations, and concept extents computed
by running compiled formula code.

A relation ``R`` between the elements of stage ``I`` and a type ``T``
corresponds to the individual ``h_R: I -> [T]`` with
``h_R(i) = {t | i R t}``; the inverse sends ``h`` to ``{(i, t) | t in h(i)}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from objeval import syntax as S
from objeval import values as V
from objeval.compiler import EnvShape, compile_formula
from objeval.domains.model import (
    Carrier, Graph, Individual, Relation, StageCat, _as_type, enum_cap, render_elem,
)
from objeval.domains.semantics import POINT, _Interp, concept_at, hom
from objeval.errors import EnumerationCapExceeded, TypeMismatch, UnboundVariable
from objeval.evaluator import evaluate, table_primitive, with_primitives


def rel_to_func(R: Relation, cat: StageCat) -> Individual:
    sections = {i: set() for i in cat.elements(R.dom_stage)}
    for i, t in R.pairs:
        sections[i].add(t)
    return Individual(R.dom_stage, S.Power(R.cod_type),
                      tuple(frozenset(sections[i]) for i in cat.elements(R.dom_stage)))


def func_to_rel(h: Individual, cat: StageCat) -> Relation:
    if not isinstance(h.cod_type, S.Power):
        raise TypeMismatch(f"expected an individual into a power type, got "
                           f"{S.render_type(h.cod_type)}")
    pairs = frozenset((i, t) for i, section in zip(cat.elements(h.dom_stage), h.values)
                      for t in section)
    return Relation(h.dom_stage, h.cod_type.elem, pairs)


def all_relations(I: str, T, cat: StageCat, car: Carrier, cap=None):
    """Every relation between stage ``I`` and type ``T``."""
    T = _as_type(T)
    cells = list(itertools.product(cat.elements(I), car.elements(T)))
    if 2 ** len(cells) > enum_cap(cap):
        raise EnumerationCapExceeded(f"2^{len(cells)} relations exceed the cap")
    for bits in range(2 ** len(cells)):
        yield Relation(I, T, frozenset(c for k, c in enumerate(cells) if bits >> k & 1))


def membership_domain(T, car: Carrier, cap=None) -> frozenset:
    """The membership relation on ``[T] x T``: all ``(U, t)`` with ``t in U``."""
    T = _as_type(T)
    subsets = car.elements(S.Power(T), cap)
    return frozenset((U, t) for U in subsets for t in U)


def biconditional_violations(R: Relation, cat: StageCat, car: Carrier, member=None) -> list[str]:
    """Pairs where ``(i, t) in R``, ``t in h_R(i)`` and ``(h_R(i), t) in
    membership`` do not all agree."""
    h = rel_to_func(R, cat)
    member = membership_domain(R.cod_type, car) if member is None else member
    out = []
    for i, section in zip(cat.elements(R.dom_stage), h.values):
        for t in car.elements(R.cod_type):
            a, b, c = (i, t) in R.pairs, t in section, (section, t) in member
            if not (a == b == c):
                out.append(f"({render_elem(i)}, {render_elem(t)}): in R={a}, "
                           f"in h_R(i)={b}, in membership={c}")
    return out


# ------------------------------------------------------------- compiled route

def to_value(e) -> V.Value:
    """Model element to runtime value."""
    if isinstance(e, bool):
        return V.BoolV(e)
    if isinstance(e, (int, str)):
        return V.Atom(e)
    if isinstance(e, tuple):
        if not e:
            return V.UNIT
        if len(e) == 2:
            return V.PairV(to_value(e[0]), to_value(e[1]))
    if isinstance(e, frozenset):
        return V.SetV(frozenset(to_value(x) for x in e))
    if isinstance(e, Graph):
        return V.MapV(frozenset((to_value(a), to_value(b)) for a, b in e.pairs))
    raise TypeMismatch(f"no runtime value for element {e!r}")


def _transition_names(phi) -> list[str]:
    out = []

    def walk(f):
        if isinstance(f, S.EqCFun) and f.g not in out:
            out.append(f.g)
        elif isinstance(f, S.Not):
            walk(f.body)
        elif isinstance(f, (S.And, S.Or, S.Implies)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, (S.Forall, S.Exists)):
            walk(f.body)

    walk(phi)
    return out


def formula_prims(phi, car: Carrier) -> dict:
    """Primitive table with one finite-map primitive per transition used."""
    extra = []
    for name in _transition_names(phi):
        g = car.transition(name)
        extra.append(table_primitive(name, {to_value(a): to_value(b) for a, b in g.table},
                                     S.Arrow(g.dom, g.cod)))
    return with_primitives(*extra)


@dataclass(frozen=True)
class CodeExtent:
    per_element: dict           # stage element -> frozenset of type elements
    relation: Relation
    function: Individual        # rel_to_func(relation)


def concept_extent_via_code(phi, x: str, I: str, T, cat: StageCat, car: Carrier,
                            nu: Optional[Mapping[str, Individual]] = None) -> CodeExtent:
    """Compile ``phi`` to code ``Env x T -> Truth`` and run it on every
    ``[i, t]``.  Other free variables of ``phi`` come from ``nu`` and are
    placed in environment slots, read off at ``i``."""
    T = _as_type(T)
    nu = dict(nu or {})
    params = [v for v in S.formula_free_vars(phi) if v != x]
    shape = EnvShape(tuple((p, nu[p].cod_type if p in nu else None) for p in params) + ((x, T),))
    prims = formula_prims(phi, car)
    unit = compile_formula(phi, shape, x, prims,
                           carrier_of=lambda ty: [to_value(e) for e in car.elements(ty)])
    elems = car.elements(T)
    tvals = [to_value(t) for t in elems]
    per = {}
    for i in cat.elements(I):
        env: V.Value = V.UNIT
        for p in params:
            if p not in nu:
                raise UnboundVariable(p)
            env = V.PairV(env, to_value(nu[p].at(cat, i)))
        env = V.PairV(env, V.Poison(x))
        per[i] = frozenset(t for t, tv in zip(elems, tvals)
                           if evaluate(unit.code, V.PairV(env, tv), prims) == V.TRUE)
    R = Relation(I, T, frozenset((i, t) for i, ts in per.items() for t in ts))
    return CodeExtent(per, R, rel_to_func(R, cat))


def extent_via_sets(phi, x: str, I: str, T, cat: StageCat, car: Carrier,
                    nu: Optional[Mapping[str, Individual]] = None) -> dict:
    """Per-element extents by the set-theoretic route: ``phi`` evaluated at
    the one-point stage ``{i}`` for every ``i`` and every candidate."""
    T = _as_type(T)
    nu = dict(nu or {})
    point = StageCat({POINT: (POINT,)})
    interp = _Interp(POINT, point, car)
    per = {}
    for i in cat.elements(I):
        local = {k: Individual(POINT, h.cod_type, (h.at(cat, i),)) for k, h in nu.items()}
        per[i] = frozenset(t for t in car.elements(T)
                           if interp.holds(phi, {**local, x: Individual(POINT, T, (t,))}))
    return per


def _pointwise(phi) -> bool:
    if isinstance(phi, S.ATOMIC) or isinstance(phi, S.Verum):
        return True
    if isinstance(phi, S.And):
        return _pointwise(phi.left) and _pointwise(phi.right)
    return False


def cross_check(phi, x: str, I: str, T, cat: StageCat, car: Carrier,
                nu: Optional[Mapping[str, Individual]] = None) -> list[str]:
    """Compare the compiled route with the set route; returns mismatches.

    Per-element extents must agree for every formula.  For formulas
    built from atoms with ``and`` the stage-level concept ``C(I)`` must
    also equal the set of individuals choosing from those extents.
    """
    T = _as_type(T)
    code = concept_extent_via_code(phi, x, I, T, cat, car, nu)
    sets = extent_via_sets(phi, x, I, T, cat, car, nu)
    out = []
    for i in cat.elements(I):
        if code.per_element[i] != sets[i]:
            out.append(f"{S.render_formula(phi)} at {render_elem(i)}: code "
                       f"{render_elem(code.per_element[i])} vs sets {render_elem(sets[i])}")
    if _pointwise(phi):
        whole = concept_at(phi, x, T, I, cat, car, nu)
        chosen = frozenset(t for t in hom(I, T, cat, car)
                           if all(v in code.per_element[i]
                                  for i, v in zip(cat.elements(I), t.values)))
        if whole != chosen:
            out.append(f"{S.render_formula(phi)}: C({I}) differs from the product of extents")
    return out
