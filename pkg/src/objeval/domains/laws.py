"""Exhaustive checks of the functor laws of H_T and of naturality of
transactions.  Reports are sorted lists of violation strings; an empty
list means every law holds."""
from __future__ import annotations

import itertools

from objeval import syntax as S
from objeval.domains.model import Carrier, StageCat, Transition, _as_type
from objeval.domains.semantics import hom, restrict, transact


def _composable_pairs(cat: StageCat):
    arrows = sorted(cat.arrows.values(), key=lambda a: a.name)
    for f in arrows:
        for g in arrows:
            if g.cod == f.dom:
                yield f, g


def check_functor_laws(cat: StageCat, T, car: Carrier, cap=None) -> list[str]:
    """Violations of ``H_T(1_A) = 1`` and ``H_T(f . g) = H_T(g) . H_T(f)``.

    Checked for every stage, every composable pair of listed arrows, and
    every arrow that declares itself an identity or a composite, over all
    individuals.  The declared cases are the ones a corrupted arrow table
    can break.
    """
    T = _as_type(T)
    H = f"H_{S.render_type(T)}"
    out = set()
    homs = {A: hom(A, T, cat, car, cap) for A in cat.stages}
    for A, hs in homs.items():
        one = cat.identity(A)
        if any(restrict(h, one) != h for h in hs):
            out.add(f"identity: {H}(1_{A}) is not the identity")
    for a in cat.arrows.values():
        if a.identity:
            if a.dom != a.cod:
                out.add(f"identity: {a.name} is declared an identity but maps {a.dom} -> {a.cod}")
            elif any(restrict(h, a) != h for h in homs[a.cod]):
                out.add(f"identity: {a.name} is declared the identity on {a.dom} "
                        f"but {H}({a.name}) moves an individual")
        if a.composite:
            f_name, g_name = a.composite
            try:
                f, g = cat.arrow(f_name), cat.arrow(g_name)
            except Exception:
                out.add(f"composition: {a.name} names unknown arrows {f_name}, {g_name}")
                continue
            if g.cod != f.dom or (g.dom, f.cod) != (a.dom, a.cod):
                out.add(f"composition: {a.name} declared {f_name} . {g_name}, which does not type")
                continue
            bad = [h for h in homs[f.cod] if restrict(h, a) != restrict(restrict(h, f), g)]
            if bad:
                out.add(f"composition: {H}({a.name}) != {H}({g_name}) . {H}({f_name}) "
                        f"on {len(bad)} individual(s)")
    for f, g in _composable_pairs(cat):
        fg = cat.compose(f, g)
        for h in homs[f.cod]:
            if restrict(restrict(h, f), g) != restrict(h, fg):
                out.add(f"composition: {H}({f.name} . {g.name}) != {H}({g.name}) . {H}({f.name})")
                break
    return sorted(out)


def restriction_violations(cat: StageCat, T, car: Carrier, cap=None) -> tuple[int, list[str]]:
    """Checks ``h|1 = h`` and ``(h|f)|g = h|(f . g)`` directly for every
    individual and every composable pair (identities included).  Returns
    the number of checks made and the violations."""
    T = _as_type(T)
    homs = {A: hom(A, T, cat, car, cap) for A in cat.stages}
    arrows = list(cat.arrows.values()) + [cat.identity(A) for A in cat.stages]
    into = {}
    for a in arrows:
        into.setdefault(a.cod, []).append(a)
    checks, out = 0, []
    for A, hs in homs.items():
        one = cat.identity(A)
        for h in hs:
            checks += 1
            if restrict(h, one) != h:
                out.append(f"h|1_{A} != h for {h.values}")
    for f in arrows:
        for g in into.get(f.dom, ()):
            fg = cat.compose(f, g)
            for h in homs[f.cod]:
                checks += 1
                if restrict(restrict(h, f), g) != restrict(h, fg):
                    out.append(f"(h|{f.name})|{g.name} != h|({f.name} . {g.name}) for {h.values}")
    return checks, sorted(out)


def all_transitions(T, S_, car: Carrier) -> list[Transition]:
    """Every function between the carriers of ``T`` and ``S_``."""
    T, S_ = _as_type(T), _as_type(S_)
    src, dst = car.elements(T), car.elements(S_)
    return [Transition(f"g{k}", T, S_, tuple(zip(src, img)))
            for k, img in enumerate(itertools.product(dst, repeat=len(src)))]


def check_naturality(cat: StageCat, car: Carrier, transitions=None, cap=None) -> tuple[int, list[str]]:
    """``H_g(B) . H_T(f) = H_S(f) . H_g(A)`` for every transition ``g`` and
    every arrow ``f: B -> A`` (identities included), pointwise on all of
    ``hom(A, T)``.  Returns (checks made, sorted violations)."""
    transitions = list(car.transitions.values()) if transitions is None else list(transitions)
    arrows = list(cat.arrows.values()) + [cat.identity(A) for A in cat.stages]
    checks, out = 0, []
    for g in transitions:
        homs = {A: hom(A, g.dom, cat, car, cap) for A in cat.stages}
        for f in arrows:
            for h in homs[f.cod]:
                checks += 1
                if transact(g, restrict(h, f)) != restrict(transact(g, h), f):
                    out.append(f"naturality: {g.name} against {f.name} at {h.values}")
    return checks, sorted(out)


def full_category(sizes, prefix="A") -> StageCat:
    """Stages of the given sizes with every function between every ordered
    pair of stages listed as an arrow."""
    stages = {f"{prefix}{k}": tuple(f"e{j}" for j in range(n)) for k, n in enumerate(sizes)}
    cat = StageCat(stages)
    for B, A in itertools.product(stages, repeat=2):
        src, dst = stages[B], stages[A]
        for m, img in enumerate(itertools.product(dst, repeat=len(src))):
            cat.add_arrow(f"{B}>{A}#{m}", B, A, dict(zip(src, img)))
    return cat


def small_categories(max_stages=3, max_size=3):
    """Every full category with 1..max_stages stages of 0..max_size
    elements, up to reordering of the stages."""
    for k in range(1, max_stages + 1):
        for sizes in itertools.combinations_with_replacement(range(max_size + 1), k):
            yield sizes, full_category(sizes)


__all__ = [
    "all_transitions", "check_functor_laws", "check_naturality", "full_category",
    "restriction_violations", "small_categories",
]
