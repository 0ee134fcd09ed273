"""Finite stage categories, carriers and individuals.

Stage elements and type elements are plain hashable Python values as read
from JSON (strings or ints).  Compound types use tuples for products,
frozensets for power types, :class:`Graph` for function types and bools
for ``Truth``.  Individuals store their values positionally, aligned with
the element order of their stage, which keeps restriction cheap.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Mapping, Optional

from objeval import syntax as S
from objeval.errors import (
    ElementNotInStage, EnumerationCapExceeded, ModelError, StageMismatch, TypeMismatch,
)

DEFAULT_ENUM_CAP = 10 ** 6


def enum_cap(cap: Optional[int] = None) -> int:
    """Explicit ``cap``, else ``$OBJEVAL_ENUM_CAP``, else 10^6."""
    if cap is not None:
        return cap
    env = os.environ.get("OBJEVAL_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


def elem_key(e):
    """Total order on elements of mixed kinds, used for deterministic output."""
    if isinstance(e, bool):
        return (0, int(e))
    if isinstance(e, int):
        return (1, e)
    if isinstance(e, str):
        return (2, e)
    if isinstance(e, tuple):
        return (3, tuple(elem_key(x) for x in e))
    if isinstance(e, frozenset):
        return (4, len(e), sorted(elem_key(x) for x in e))
    if isinstance(e, Graph):
        return (5, sorted((elem_key(a), elem_key(b)) for a, b in e.pairs))
    return (6, repr(e))


def render_elem(e) -> str:
    if isinstance(e, bool):
        return "true" if e else "false"
    if isinstance(e, tuple):
        return "()" if not e else "[" + ", ".join(render_elem(x) for x in e) + "]"
    if isinstance(e, frozenset):
        return "{" + ", ".join(render_elem(x) for x in sorted(e, key=elem_key)) + "}"
    if isinstance(e, Graph):
        return "{" + ", ".join(f"{render_elem(a)} |-> {render_elem(b)}"
                               for a, b in sorted(e.pairs, key=lambda p: elem_key(p[0]))) + "}"
    return str(e)


@dataclass(frozen=True)
class Graph:
    """Element of a function type: a finite total function."""
    pairs: frozenset

    def __call__(self, x):
        for a, b in self.pairs:
            if a == x:
                return b
        raise TypeMismatch(f"{render_elem(x)} outside the domain of {render_elem(self)}")


# ------------------------------------------------------------- stages

@dataclass(frozen=True)
class Arrow:
    """Stage arrow ``name: dom -> cod``; ``index[k]`` is the position in
    ``cod`` of the image of the k-th element of ``dom``."""
    name: str
    dom: str
    cod: str
    index: tuple
    composite: Optional[tuple] = None     # declared (f, g) meaning f . g
    identity: bool = False                # declared to be an identity


@dataclass
class StageCat:
    stages: dict                          # name -> tuple of elements
    arrows: dict = field(default_factory=dict)

    def __post_init__(self):
        self.stages = {k: tuple(v) for k, v in self.stages.items()}
        self._pos = {k: {e: n for n, e in enumerate(v)} for k, v in self.stages.items()}
        for k, v in self.stages.items():
            if len(self._pos[k]) != len(v):
                raise ModelError(f"stage {k!r} lists an element twice")

    def elements(self, stage):
        try:
            return self.stages[stage]
        except KeyError:
            raise StageMismatch(f"unknown stage {stage!r}") from None

    def position(self, stage, elem):
        try:
            return self._pos[stage][elem]
        except KeyError:
            raise ElementNotInStage(f"{render_elem(elem)} is not an element of stage {stage!r}") \
                from None

    def add_arrow(self, name, dom, cod, mapping: Mapping, composite=None, identity=False):
        src = self.elements(dom)
        self.elements(cod)
        missing = [e for e in src if e not in mapping]
        if missing:
            raise ModelError(f"arrow {name!r} is not total: no image for {render_elem(missing[0])}")
        extra = [e for e in mapping if e not in self._pos[dom]]
        if extra:
            raise ModelError(f"arrow {name!r} maps {render_elem(extra[0])}, not in stage {dom!r}")
        try:
            index = tuple(self._pos[cod][mapping[e]] for e in src)
        except KeyError as e:
            raise ModelError(f"arrow {name!r} leaves its codomain {cod!r}: {e.args[0]!r}") from None
        a = Arrow(name, dom, cod, index, tuple(composite) if composite else None, identity)
        self.arrows[name] = a
        return a

    def arrow(self, name) -> Arrow:
        if name in self.arrows:
            return self.arrows[name]
        if name.startswith("1_") and name[2:] in self.stages:
            return self.identity(name[2:])
        raise StageMismatch(f"unknown arrow {name!r}")

    def identity(self, stage) -> Arrow:
        n = len(self.elements(stage))
        return Arrow(f"1_{stage}", stage, stage, tuple(range(n)), identity=True)

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        """``f . g`` (apply ``g`` first)."""
        if g.cod != f.dom:
            raise StageMismatch(f"cannot compose {f.name}: {f.dom} -> {f.cod} after "
                                f"{g.name}: {g.dom} -> {g.cod}")
        return Arrow(f"{f.name} . {g.name}", g.dom, f.cod, tuple(f.index[k] for k in g.index))

    def mapping(self, f: Arrow) -> dict:
        src, dst = self.stages[f.dom], self.stages[f.cod]
        return {e: dst[k] for e, k in zip(src, f.index)}

    def arrows_between(self, dom, cod):
        return [a for a in self.arrows.values() if a.dom == dom and a.cod == cod]


def one_point(name="*", elem="*") -> StageCat:
    return StageCat({name: (elem,)})


# ------------------------------------------------------------- carriers

@dataclass(frozen=True)
class Transition:
    name: str
    dom: S.TypeExpr
    cod: S.TypeExpr
    table: tuple           # ((elem, image), ...)

    def __call__(self, x):
        for a, b in self.table:
            if a == x:
                return b
        raise TypeMismatch(f"transition {self.name} undefined at {render_elem(x)}")


@dataclass
class Carrier:
    types: dict                               # base type name -> tuple of elements
    transitions: dict = field(default_factory=dict)

    def __post_init__(self):
        self.types = {k: tuple(v) for k, v in self.types.items()}
        self._cache = {}

    def elements(self, ty, cap=None) -> tuple:
        """All elements of ``ty`` in a fixed order."""
        ty = _as_type(ty)
        key = (ty, enum_cap(cap))
        if key not in self._cache:
            self._cache[key] = self._elements(ty, enum_cap(cap))
        return self._cache[key]

    def _elements(self, ty, cap):
        if isinstance(ty, S.Base):
            if ty.name not in self.types:
                raise TypeMismatch(f"unknown type {ty.name!r}")
            return self.types[ty.name]
        if isinstance(ty, S.Unit):
            return ((),)
        if isinstance(ty, S.Truth):
            return (False, True)
        if isinstance(ty, S.Prod):
            left, right = self.elements(ty.left, cap), self.elements(ty.right, cap)
            _check_cap(len(left) * len(right), cap, S.render_type(ty))
            return tuple(itertools.product(left, right))
        if isinstance(ty, S.Power):
            base = self.elements(ty.elem, cap)
            _check_cap(2 ** len(base), cap, S.render_type(ty))
            return tuple(frozenset(c) for r in range(len(base) + 1)
                         for c in itertools.combinations(base, r))
        if isinstance(ty, S.Arrow):
            dom, cod = self.elements(ty.dom, cap), self.elements(ty.cod, cap)
            _check_cap(len(cod) ** len(dom), cap, S.render_type(ty))
            return tuple(Graph(frozenset(zip(dom, img)))
                         for img in itertools.product(cod, repeat=len(dom)))
        raise TypeMismatch(f"not a type: {ty!r}")

    def contains(self, ty, e) -> bool:
        return e in self.elements(ty)

    def add_transition(self, name, dom, cod, mapping: Mapping):
        dom = _as_type(dom)
        cod = _as_type(cod)
        src, dst = self.elements(dom), set(self.elements(cod))
        missing = [e for e in src if e not in mapping]
        if missing:
            raise ModelError(f"transition {name!r} is not total: no image for "
                             f"{render_elem(missing[0])}")
        bad = [v for v in mapping.values() if v not in dst]
        if bad:
            raise ModelError(f"transition {name!r} leaves {S.render_type(cod)}: {render_elem(bad[0])}")
        t = Transition(name, dom, cod, tuple((e, mapping[e]) for e in src))
        self.transitions[name] = t
        return t

    def transition(self, name) -> Transition:
        if name in self.transitions:
            return self.transitions[name]
        if name.startswith("1_"):
            ty = _as_type(name[2:])
            return Transition(name, ty, ty, tuple((e, e) for e in self.elements(ty)))
        raise TypeMismatch(f"unknown transition {name!r}")


def _check_cap(n, cap, what):
    if n > cap:
        raise EnumerationCapExceeded(f"{what}: {n} candidates exceed the enumeration cap {cap}")


def _as_type(ty) -> S.TypeExpr:
    if isinstance(ty, str):
        if S.is_ident(ty) and ty != "Truth":
            return S.Base(ty)
        from objeval.parsing import parse_type
        return parse_type(ty)
    return ty


# ------------------------------------------------------------- individuals

@dataclass(frozen=True)
class Individual:
    """A total function from the elements of ``dom_stage`` into the carrier
    of ``cod_type``; ``values[k]`` is the image of the k-th stage element."""
    dom_stage: str
    cod_type: S.TypeExpr
    values: tuple

    def at(self, cat: StageCat, elem):
        return self.values[cat.position(self.dom_stage, elem)]

    def mapping(self, cat: StageCat) -> dict:
        return dict(zip(cat.elements(self.dom_stage), self.values))

    def render(self, cat: StageCat) -> str:
        pairs = ", ".join(f"{render_elem(e)} |-> {render_elem(v)}"
                          for e, v in zip(cat.elements(self.dom_stage), self.values))
        return "{" + pairs + "}"


def make_individual(cat: StageCat, car: Carrier, stage, ty, mapping: Mapping) -> Individual:
    ty = _as_type(ty)
    elems = cat.elements(stage)
    missing = [e for e in elems if e not in mapping]
    if missing:
        raise ModelError(f"individual is not total on {stage!r}: no value at {render_elem(missing[0])}")
    values = tuple(mapping[e] for e in elems)
    allowed = set(car.elements(ty))
    for v in values:
        if v not in allowed:
            raise TypeMismatch(f"{render_elem(v)} is not an element of {S.render_type(ty)}")
    return Individual(stage, ty, values)


def constant(cat: StageCat, stage, ty, value) -> Individual:
    return Individual(stage, _as_type(ty), (value,) * len(cat.elements(stage)))


@dataclass(frozen=True)
class Relation:
    dom_stage: str
    cod_type: S.TypeExpr
    pairs: frozenset       # {(stage element, type element)}


# ------------------------------------------------------------- loading

def _load_json(source):
    if isinstance(source, Mapping):
        return source
    text = source
    if isinstance(source, os.PathLike) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"invalid JSON: {e}") from None


def _elem(x):
    # JSON has no tuples; lists denote pairs / compound elements
    if isinstance(x, list):
        return tuple(_elem(y) for y in x)
    return x


def _decode(v, elems):
    """Match a JSON value or key against the known elements ``elems``.
    Object keys are always strings, so ``"3"`` finds the int 3; a list may
    denote a pair or a subset."""
    if isinstance(v, list):
        for cand in (_elem(v), frozenset(_elem(x) for x in v)):
            if cand in elems:
                return cand
        return _elem(v)
    if v in elems:
        return v
    for e in elems:
        if str(e) == v or render_elem(e) == v:
            return e
    return v


def _decode_map(raw, src, dst):
    return {_decode(k, src): _decode(v, dst) for k, v in raw.items()}


def load_model(source) -> tuple[StageCat, Carrier]:
    """Read a model from a JSON file path, JSON text, or a decoded dict.

    Arrows may carry ``"composite": ["f", "g"]`` (the arrow is declared to
    be ``f . g``) or ``"identity": true``; these declarations are what
    :func:`objeval.domains.laws.check_functor_laws` audits.
    """
    data = _load_json(source)
    if not isinstance(data, Mapping) or "stages" not in data:
        raise ModelError("model needs a 'stages' object")
    try:
        cat = StageCat({k: [_elem(e) for e in v] for k, v in data["stages"].items()})
        for name, spec in data.get("arrows", {}).items():
            dom, cod = spec["dom"], spec["cod"]
            mapping = _decode_map(spec.get("map", {}), cat.elements(dom), cat.elements(cod))
            cat.add_arrow(name, dom, cod, mapping, spec.get("composite"), bool(spec.get("identity")))
        car = Carrier({k: [_elem(e) for e in v] for k, v in data.get("types", {}).items()})
        for name, spec in data.get("transitions", {}).items():
            dom, cod = _as_type(spec["dom"]), _as_type(spec["cod"])
            mapping = _decode_map(spec.get("map", {}), car.elements(dom), car.elements(cod))
            car.add_transition(name, dom, cod, mapping)
    except (KeyError, TypeError, StageMismatch) as e:
        raise ModelError(f"malformed model: {e}") from None
    return cat, car


def load_individual(source, cat: StageCat, car: Carrier) -> Individual:
    """Individual file: ``{"stage": "I", "type": "T", "map": {"i1": "t1"}}``."""
    data = _load_json(source)
    try:
        stage, ty = data["stage"], _as_type(data["type"])
        mapping = _decode_map(data["map"], cat.elements(stage), car.elements(ty))
    except (KeyError, TypeError) as e:
        raise ModelError(f"malformed individual: {e}") from None
    return make_individual(cat, car, stage, ty, mapping)
