"""Object evaluator: lambda terms compiled to categorical combinators, an
equational optimizer and abstract machine, and finite variable-domain
semantics."""
from objeval.combinators import normalize, render_code
from objeval.compiler import EnvShape, compile_formula, compile_term
from objeval.evaluator import evaluate, oracle_eval, run
from objeval.parsing import parse_code, parse_formula, parse_term

__all__ = [
    "EnvShape", "compile_formula", "compile_term", "evaluate", "normalize", "oracle_eval",
    "parse_code", "parse_formula", "parse_term", "render_code", "run",
]
