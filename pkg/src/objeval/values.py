"""Runtime values produced by the evaluator."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Atom:
    value: Union[int, str]


@dataclass(frozen=True)
class PairV:
    left: "Value"
    right: "Value"


@dataclass(frozen=True)
class Closure:
    body: object          # CombTerm
    captured: "Value"


@dataclass(frozen=True)
class SetV:
    items: frozenset


@dataclass(frozen=True)
class BoolV:
    value: bool


@dataclass(frozen=True)
class UnitV:
    pass


@dataclass(frozen=True)
class PrimV:
    """A primitive function used as a first-class value."""
    name: str


@dataclass(frozen=True)
class MapV:
    """A finite function given by its graph (frozenset of (arg, result))."""
    graph: frozenset

    def lookup(self, arg):
        for a, r in self.graph:
            if a == arg:
                return r
        raise KeyError(arg)


@dataclass(frozen=True)
class Poison:
    """Placeholder for a bound-variable slot; reading it is an error."""
    slot: str


Value = Union[Atom, PairV, Closure, SetV, BoolV, UnitV, PrimV, MapV, Poison]
UNIT = UnitV()
TRUE = BoolV(True)
FALSE = BoolV(False)


def render_value(v: Value) -> str:
    if isinstance(v, Atom):
        return str(v.value) if isinstance(v.value, int) else f"atom:{v.value}"
    if isinstance(v, PairV):
        return f"[{render_value(v.left)}, {render_value(v.right)}]"
    if isinstance(v, SetV):
        return "{" + ", ".join(sorted(render_value(x) for x in v.items)) + "}"
    if isinstance(v, BoolV):
        return "true" if v.value else "false"
    if isinstance(v, UnitV):
        return "()"
    if isinstance(v, PrimV):
        return f"prim:{v.name}"
    if isinstance(v, MapV):
        body = ", ".join(sorted(f"{render_value(a)} |-> {render_value(r)}"
                                for a, r in v.graph))
        return "{" + body + "}"
    if isinstance(v, Poison):
        return f"?{v.slot}"
    if isinstance(v, Closure):
        from objeval.combinators import render_code
        return f"Closure({render_code(v.body)}; {render_value(v.captured)})"
    raise TypeError(f"not a value: {v!r}")


def literal_value(lit) -> Value:
    """Value of a surface literal: int, atom name, or bool."""
    if isinstance(lit, bool):
        return BoolV(lit)
    return Atom(lit)
