"""Categorical combinator terms and the equational optimizer.

Composition is written ``Comp(outer, inner)`` and means ``outer . inner``
(apply ``inner`` first).  Normal forms store composition chains
right-nested; rewrite rules are matched syntactically against that
canonical shape.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from objeval.syntax import TypeExpr, render_type
from objeval.values import render_value


@dataclass(frozen=True)
class Basic:
    """One of the four constant combinators Id, Fst, Snd, Eps."""
    name: str

    def __repr__(self):
        return self.name


Id = Basic("Id")
Fst = Basic("Fst")
Snd = Basic("Snd")
Eps = Basic("Eps")


@dataclass(frozen=True)
class Comp:
    outer: "CombTerm"
    inner: "CombTerm"


@dataclass(frozen=True)
class PairC:
    left: "CombTerm"
    right: "CombTerm"


@dataclass(frozen=True)
class Cur:
    body: "CombTerm"


@dataclass(frozen=True)
class ConstC:
    value: object         # Value


@dataclass(frozen=True)
class Prim:
    name: str


@dataclass(frozen=True)
class CanEmbed:
    ty: TypeExpr


CombTerm = Union[Basic, Comp, PairC, Cur, ConstC, Prim, CanEmbed]
COMB_TYPES = (Basic, Comp, PairC, Cur, ConstC, Prim, CanEmbed)


def chain(*terms: CombTerm) -> CombTerm:
    """Right-nested composition t1 . t2 . ... . tn, without simplification."""
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = Comp(t, out)
    return out


def comp(a: CombTerm, b: CombTerm) -> CombTerm:
    """``a . b`` with identities absorbed and the chain kept right-nested."""
    if a == Id:
        return b
    if b == Id:
        return a
    if isinstance(a, Comp):
        return comp(a.outer, comp(a.inner, b))
    return Comp(a, b)


def size(t: CombTerm) -> int:
    if isinstance(t, (Comp, PairC)):
        x, y = (t.outer, t.inner) if isinstance(t, Comp) else (t.left, t.right)
        return 1 + size(x) + size(y)
    if isinstance(t, Cur):
        return 1 + size(t.body)
    return 1


def render_code(t: CombTerm) -> str:
    if isinstance(t, Basic):
        return t.name
    if isinstance(t, Comp):
        outer = render_code(t.outer)
        if isinstance(t.outer, Comp):
            outer = f"({outer})"
        return f"{outer} . {render_code(t.inner)}"
    if isinstance(t, PairC):
        return f"<{render_code(t.left)}, {render_code(t.right)}>"
    if isinstance(t, Cur):
        return f"Cur({render_code(t.body)})"
    if isinstance(t, ConstC):
        return f"Const({render_value(t.value)})"
    if isinstance(t, Prim):
        return f"Prim({t.name})"
    if isinstance(t, CanEmbed):
        return f"Can({render_type(t.ty)})"
    raise TypeError(f"not a combinator term: {t!r}")


# ------------------------------------------------------------- rewriting

RULES = {
    "R1": "Eps . <Cur(h) . Fst, Snd>  ->  h",
    "R2": "Cur(Eps . <k . Fst, Snd>)  ->  k",
    "R3": "Fst . <a, b>  ->  a",
    "R4": "Snd . <a, b>  ->  b",
    "R5": "<a, b> . c  ->  <a . c, b . c>",
    "R6": "Id . a  ->  a,  a . Id  ->  a",
    "R7": "<Fst, Snd>  ->  Id",
}


@dataclass(frozen=True)
class Step:
    rule: str
    redex: CombTerm
    contractum: CombTerm

    def __str__(self):
        return f"{self.rule}: {render_code(self.redex)}  ~>  {render_code(self.contractum)}"


@dataclass
class _Rewriter:
    trace: Optional[list] = None
    steps: int = 0
    disabled: frozenset = field(default_factory=frozenset)

    def fire(self, rule, redex, contractum):
        self.steps += 1
        if self.trace is not None:
            self.trace.append(Step(rule, redex, contractum))
        return contractum

    # each mk_* assumes its arguments are already in normal form
    def mk_comp(self, a, b):
        if a == Id and "R6" not in self.disabled:
            return self.fire("R6", Comp(a, b), b)
        if b == Id and "R6" not in self.disabled:
            return self.fire("R6", Comp(a, b), a)
        if isinstance(a, Comp):
            return self.mk_comp(a.outer, self.mk_comp(a.inner, b))
        if isinstance(b, PairC):
            if a == Fst and "R3" not in self.disabled:
                return self.fire("R3", Comp(a, b), b.left)
            if a == Snd and "R4" not in self.disabled:
                return self.fire("R4", Comp(a, b), b.right)
            p, q = b.left, b.right
            if (a == Eps and q == Snd and isinstance(p, Comp) and p.inner == Fst
                    and isinstance(p.outer, Cur) and "R1" not in self.disabled):
                return self.fire("R1", Comp(a, b), p.outer.body)
        if isinstance(a, PairC) and "R5" not in self.disabled:
            self.fire("R5", Comp(a, b), PairC(Comp(a.left, b), Comp(a.right, b)))
            return self.mk_pair(self.mk_comp(a.left, b), self.mk_comp(a.right, b))
        return Comp(a, b)

    def mk_pair(self, a, b):
        if a == Fst and b == Snd and "R7" not in self.disabled:
            return self.fire("R7", PairC(a, b), Id)
        return PairC(a, b)

    def mk_cur(self, body):
        if ("R2" not in self.disabled and isinstance(body, Comp) and body.outer == Eps
                and isinstance(body.inner, PairC) and body.inner.right == Snd
                and isinstance(body.inner.left, Comp) and body.inner.left.inner == Fst):
            return self.fire("R2", Cur(body), body.inner.left.outer)
        return Cur(body)

    def norm(self, t):
        if isinstance(t, Comp):
            return self.mk_comp(self.norm(t.outer), self.norm(t.inner))
        if isinstance(t, PairC):
            return self.mk_pair(self.norm(t.left), self.norm(t.right))
        if isinstance(t, Cur):
            return self.mk_cur(self.norm(t.body))
        return t


def normalize(t: CombTerm, trace: Optional[list] = None, disabled=()) -> CombTerm:
    """Rewrite ``t`` innermost-first with R1-R7 until no rule applies.

    Children are normalized before their parent, so every redex contracted
    has normal subterms.  ``trace`` (a list) receives one :class:`Step` per
    rule application.

    Termination: interpret atoms as 2, ``<a, b>`` as a+b+1, ``a . b`` as
    a*b and ``Cur(a)`` as a+1.  Every value is >= 2, each constructor is
    strictly monotone, associativity preserves the value and each rule
    strictly decreases it (R5: (a+b+1)c > ac+bc+1 because c >= 2).  The
    interpretation is a natural number, so rewriting stops.

    ``disabled`` names rules to leave out; used to isolate rules in tests.
    """
    return _Rewriter(trace, disabled=frozenset(disabled)).norm(t)


def normalize_counted(t: CombTerm) -> tuple[CombTerm, int]:
    rw = _Rewriter()
    return rw.norm(t), rw.steps


def equivalent(a: CombTerm, b: CombTerm) -> bool:
    """Sound but incomplete equality: compares normal forms."""
    return normalize(a) == normalize(b)


def redexes(t: CombTerm) -> list[tuple[str, CombTerm]]:
    """All subterms matching a rule left-hand side or a left-nested
    composition.  Empty exactly when ``t`` is in normal form."""
    found = []

    def visit(s):
        if isinstance(s, Comp):
            a, b = s.outer, s.inner
            if a == Id or b == Id:
                found.append(("R6", s))
            if isinstance(a, Comp):
                found.append(("assoc", s))
            if isinstance(a, PairC):
                found.append(("R5", s))
            if isinstance(b, PairC):
                if a == Fst:
                    found.append(("R3", s))
                if a == Snd:
                    found.append(("R4", s))
                p = b.left
                if (a == Eps and b.right == Snd and isinstance(p, Comp)
                        and p.inner == Fst and isinstance(p.outer, Cur)):
                    found.append(("R1", s))
            visit(a)
            visit(b)
        elif isinstance(s, PairC):
            if s.left == Fst and s.right == Snd:
                found.append(("R7", s))
            visit(s.left)
            visit(s.right)
        elif isinstance(s, Cur):
            body = s.body
            if (isinstance(body, Comp) and body.outer == Eps
                    and isinstance(body.inner, PairC) and body.inner.right == Snd
                    and isinstance(body.inner.left, Comp) and body.inner.left.inner == Fst):
                found.append(("R2", s))
            visit(body)

    visit(t)
    return found
