"""Recursive-descent parsers for the ASCII surface notation.

Grammars (whitespace insignificant)::

    term    := "\\" ident ("," ident)* "." term | atom+ [abs]
    atom    := ident | integer | "atom:" ident | op | "[" term "," term "]" | "(" term ")"
    formula := impl
    impl    := or ["->" impl]
    or      := and ("or" and)*
    and     := unary ("and" unary)*
    unary   := "not" unary | ("forall"|"exists") ident ":" type "." formula | primary
    primary := "(" formula ")" | "true" | "false"
             | opnd "=" opnd | opnd "=" ident opnd | opnd "=" "[" opnd "," opnd "]"
             | opnd "=" ident "(" opnd ")" | opnd "in" opnd
    type    := prod ["->" type]
    prod    := tatom ("*" tatom)*
    tatom   := ident | "1" | "Truth" | "[" type "]" | "(" type ")"
    code    := catom ("." catom)*
    catom   := Id | Fst | Snd | Eps | "Cur(" code ")" | "<" code "," code ">"
             | "Const(" literal ")" | "Prim(" name ")" | "Can(" type ")" | "(" code ")"

Operator tokens such as ``+`` are always builtins, and so are the
canonical embeddings ``can_T``; other identifiers are builtins only when
listed in the ``builtins`` argument.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from objeval import combinators as C
from objeval import syntax as S
from objeval import values as V
from objeval.errors import ParseError

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<mapsto>\|->)
  | (?P<arrow>->)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
  | (?P<op>[+\-*/%^&|!?~@$]+)
  | (?P<punct>[\\λ.,()\[\]{}<>=:∘])
""", re.VERBOSE)

FORMULA_KEYWORDS = {"not", "and", "or", "forall", "exists", "in", "true", "false"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(pos, f"unexpected character {text[pos]!r}", text)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "punct" and tok == "λ":
                tok = "\\"
            elif kind == "punct" and tok == "∘":
                tok = "."
            out.append(Token(kind, tok, pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, message):
        raise ParseError(self.tok.pos, message, self.text)

    def at(self, text, kind=None) -> bool:
        t = self.tok
        return t.text == text and (kind is None or t.kind == kind) and t.kind != "eof"

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if not self.at(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.error(f"expected identifier, found {self.tok.text or 'end of input'!r}")
        return self.advance().text

    def finish(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")

    # ---- types

    def type_(self):
        left = self.prod_type()
        if self.tok.kind == "arrow":
            self.advance()
            return S.Arrow(left, self.type_())
        return left

    def prod_type(self):
        left = self.type_atom()
        while self.at("*", "op"):
            self.advance()
            left = S.Prod(left, self.type_atom())
        return left

    def type_atom(self):
        t = self.tok
        if t.kind == "int" and t.text == "1":
            self.advance()
            return S.Unit()
        if t.kind == "ident":
            self.advance()
            return S.Truth() if t.text == "Truth" else S.Base(t.text)
        if self.at("["):
            self.advance()
            inner = self.type_()
            self.expect("]")
            return S.Power(inner)
        if self.at("("):
            self.advance()
            inner = self.type_()
            self.expect(")")
            return inner
        self.error(f"expected a type, found {t.text or 'end of input'!r}")

    # ---- literals

    def atom_literal(self):
        """``atom:name`` if present; returns the name or None."""
        if self.tok.kind == "ident" and self.tok.text == "atom" and self.peek().text == ":":
            self.advance()
            self.advance()
            return self.ident()
        return None

    def literal(self) -> V.Value:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return V.Atom(int(t.text))
        name = self.atom_literal()
        if name is not None:
            return V.Atom(name)
        if t.kind == "ident" and t.text == "prim" and self.peek().text == ":":
            self.advance()
            self.advance()
            if self.tok.kind not in ("ident", "op"):
                self.error("expected primitive name")
            return V.PrimV(self.advance().text)
        if t.kind == "ident" and t.text in ("true", "false"):
            self.advance()
            return V.BoolV(t.text == "true")
        if t.kind == "op" and t.text == "?":
            # placeholder for an unfilled slot, as printed in traces
            self.advance()
            return V.Poison(self.ident())
        if self.at("["):
            self.advance()
            left = self.literal()
            self.expect(",")
            right = self.literal()
            self.expect("]")
            return V.PairV(left, right)
        if self.at("{"):
            # {a, b} is a set, {a |-> r, ...} a finite map
            self.advance()
            items, pairs = [], []
            while not self.at("}"):
                if items or pairs:
                    self.expect(",")
                x = self.literal()
                if self.at("|->") and not items:
                    self.advance()
                    pairs.append((x, self.literal()))
                elif pairs:
                    self.error("expected '|->' in a finite map")
                else:
                    items.append(x)
            self.expect("}")
            return V.MapV(frozenset(pairs)) if pairs else V.SetV(frozenset(items))
        if self.at("(") and self.peek().text == ")":
            self.advance()
            self.advance()
            return V.UNIT
        self.error(f"expected a literal, found {t.text or 'end of input'!r}")

    # ---- lambda terms

    def term(self, builtins):
        if self.at("\\"):
            return self.abstraction(builtins)
        parts = [self.term_atom(builtins)]
        while self._starts_atom():
            parts.append(self.term_atom(builtins))
        if self.at("\\"):
            parts.append(self.abstraction(builtins))
        out = parts[0]
        for p in parts[1:]:
            out = S.App(out, p)
        return out

    def abstraction(self, builtins):
        self.expect("\\")
        names = [self.ident()]
        while self.at(","):
            self.advance()
            names.append(self.ident())
        self.expect(".")
        body = self.term(builtins)
        for n in reversed(names):
            body = S.Abs(n, body)
        return body

    def _starts_atom(self):
        t = self.tok
        return t.kind in ("ident", "int", "op") or (t.kind == "punct" and t.text in "([")

    def term_atom(self, builtins):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return S.Const(int(t.text))
        if t.kind == "op":
            self.advance()
            return S.Builtin(t.text)
        if t.kind == "ident":
            name = self.atom_literal()
            if name is not None:
                return S.Const(name)
            self.advance()
            if t.text in builtins or t.text.startswith("can_"):
                return S.Builtin(t.text)
            return S.Var(t.text)
        if self.at("["):
            self.advance()
            left = self.term(builtins)
            self.expect(",")
            right = self.term(builtins)
            self.expect("]")
            return S.PairT(left, right)
        if self.at("("):
            self.advance()
            inner = self.term(builtins)
            self.expect(")")
            return inner
        self.error(f"expected a term, found {t.text or 'end of input'!r}")

    # ---- formulas

    def formula(self):
        left = self.or_formula()
        if self.tok.kind == "arrow":
            self.advance()
            return S.Implies(left, self.formula())
        return left

    def or_formula(self):
        left = self.and_formula()
        while self.at("or", "ident"):
            self.advance()
            left = S.Or(left, self.and_formula())
        return left

    def and_formula(self):
        left = self.unary_formula()
        while self.at("and", "ident"):
            self.advance()
            left = S.And(left, self.unary_formula())
        return left

    def unary_formula(self):
        if self.at("not", "ident"):
            self.advance()
            return S.Not(self.unary_formula())
        if self.at("forall", "ident") or self.at("exists", "ident"):
            q = self.advance().text
            var = self.ident()
            self.expect(":")
            ty = self.type_()
            self.expect(".")
            body = self.formula()
            return S.Forall(var, ty, body) if q == "forall" else S.Exists(var, ty, body)
        return self.primary_formula()

    def primary_formula(self):
        if self.at("("):
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if self.at("true", "ident"):
            self.advance()
            return S.Verum()
        if self.at("false", "ident"):
            self.advance()
            return S.Falsum()
        lhs = self.operand()
        if self.at("in", "ident"):
            self.advance()
            return S.Mem(lhs, self.operand())
        self.expect("=")
        if self.at("["):
            self.advance()
            x = self.operand()
            self.expect(",")
            y = self.operand()
            self.expect("]")
            return S.EqPair(lhs, x, y)
        if (self.tok.kind == "ident" and self.tok.text not in FORMULA_KEYWORDS
                and not (self.tok.text == "atom" and self.peek().text == ":")):
            nxt = self.peek()
            if nxt.text == "(":
                x = self.advance().text
                self.advance()
                y = self.operand()
                self.expect(")")
                return S.EqApp(lhs, x, y)
            if nxt.kind in ("ident", "int") and nxt.text not in FORMULA_KEYWORDS:
                g = self.advance().text
                return S.EqCFun(lhs, g, self.operand())
        return S.EqVar(lhs, self.operand())

    def operand(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return S.Lit(int(t.text))
        name = self.atom_literal()
        if name is not None:
            return S.Lit(name)
        if t.kind == "ident" and t.text not in FORMULA_KEYWORDS:
            return self.advance().text
        self.error(f"expected a variable or literal, found {t.text or 'end of input'!r}")

    # ---- combinator code

    def code(self):
        parts = [self.code_atom()]
        while self.at("."):
            self.advance()
            parts.append(self.code_atom())
        return C.chain(*parts)

    def code_atom(self):
        t = self.tok
        if t.kind == "ident":
            if t.text in ("Id", "Fst", "Snd", "Eps"):
                self.advance()
                return C.Basic(t.text)
            if t.text in ("Cur", "Const", "Prim", "Can"):
                self.advance()
                self.expect("(")
                if t.text == "Cur":
                    inner = C.Cur(self.code())
                elif t.text == "Const":
                    inner = C.ConstC(self.literal())
                elif t.text == "Prim":
                    if self.tok.kind not in ("ident", "op"):
                        self.error("expected primitive name")
                    inner = C.Prim(self.advance().text)
                else:
                    inner = C.CanEmbed(self.type_())
                self.expect(")")
                return inner
        if self.at("<"):
            self.advance()
            left = self.code()
            self.expect(",")
            right = self.code()
            self.expect(">")
            return C.PairC(left, right)
        if self.at("("):
            self.advance()
            inner = self.code()
            self.expect(")")
            return inner
        self.error(f"expected combinator, found {t.text or 'end of input'!r}")


def parse_term(text: str, builtins=()) -> S.LambdaTerm:
    p = _Parser(text)
    t = p.term(frozenset(builtins))
    p.finish()
    return t


def parse_formula(text: str) -> S.Formula:
    p = _Parser(text)
    f = p.formula()
    p.finish()
    return f


def parse_description(text: str) -> S.Description:
    p = _Parser(text)
    if not p.at("iota", "ident"):
        p.error("expected 'iota'")
    p.advance()
    var = p.ident()
    p.expect(":")
    ty = p.type_()
    p.expect(".")
    body = p.formula()
    p.finish()
    return S.Description(var, ty, body)


def parse_type(text: str) -> S.TypeExpr:
    p = _Parser(text)
    t = p.type_()
    p.finish()
    return t


def parse_code(text: str) -> C.CombTerm:
    p = _Parser(text)
    t = p.code()
    p.finish()
    return t


def parse_literal(text: str) -> V.Value:
    p = _Parser(text)
    v = p.literal()
    p.finish()
    return v


def parse_env_shape(text: str):
    """``"E; y:D_y; x:D_x"`` -> EnvShape (innermost slot first)."""
    from objeval.compiler import EnvShape

    parts = [p.strip() for p in text.split(";")]
    base = "E"
    # a leading capitalised name without a type is the base object
    if parts and parts[0][:1].isupper() and ":" not in parts[0]:
        base = parts.pop(0)
    slots = []
    for part in parts:
        if not part:
            continue
        name, sep, ty = part.partition(":")
        name = name.strip()
        if not S.is_ident(name):
            raise ParseError(0, f"bad slot name {name!r}", text)
        slots.append((name, parse_type(ty) if sep else None))
    return EnvShape(tuple(slots), base)


def parse_bindings(text: str) -> dict[str, V.Value]:
    """Lines ``name = literal``; ``#`` starts a comment.  Order is kept."""
    out: dict[str, V.Value] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, lit = line.partition("=")
        name = name.strip()
        if not sep or not (S.is_ident(name) or re.fullmatch(r"[+\-*/%^&|!?~@$]+", name)):
            raise ParseError(lineno, f"expected 'name = literal', got {line!r}", text)
        try:
            out[name] = parse_literal(lit.strip())
        except ParseError as e:
            raise ParseError(lineno, e.message, text) from None
    return out
