"""``objeval`` command line.

Exit status: 0 on success, 1 on domain errors (evaluation failures, law
violations, non-unique descriptions, ...), 2 on usage, parse and model-file
errors.
"""
from __future__ import annotations

import argparse
import os
import sys

from objeval import syntax as S
from objeval.errors import ModelError, ObjevalError, ParseError

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _text(arg: str) -> str:
    """Argument given inline or as a path to a file holding it."""
    if arg and os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def _items(a, text):
    """One item, or one per non-empty line with ``--multi``."""
    if getattr(a, "multi", False):
        return [line.strip() for line in text.splitlines() if line.strip()]
    return [text]


def _literal_set(text):
    from objeval.parsing import parse_literal
    from objeval.domains.model import elem_key
    from objeval.values import Atom, SetV

    v = parse_literal(text)
    if not isinstance(v, SetV):
        raise UsageError(f"--carrier expects a set literal such as {{1,2,3}}, got {text!r}")
    out = []
    for item in v.items:
        if not isinstance(item, Atom):
            raise UsageError("carrier elements must be numbers or atoms")
        out.append(item.value)
    return sorted(out, key=elem_key)


# ------------------------------------------------------------- commands

def cmd_parse(a, out):
    from objeval import parsing

    kind = a.kind
    for text in _items(a, _text(a.text)):
        if kind == "term":
            from objeval.evaluator import DEFAULT_PRIMITIVES
            out(S.render_term(parsing.parse_term(text, list(DEFAULT_PRIMITIVES) + a.builtins)))
        elif kind == "formula":
            out(S.render_formula(parsing.parse_formula(text)))
        elif kind == "description":
            out(S.render_description(parsing.parse_description(text)))
        elif kind == "type":
            out(S.render_type(parsing.parse_type(text)))
        else:
            from objeval.combinators import render_code
            out(render_code(parsing.parse_code(text)))
    return EXIT_OK


def cmd_compile(a, out):
    from objeval.combinators import normalize, render_code
    from objeval.compiler import compile_formula, compile_term
    from objeval.evaluator import DEFAULT_PRIMITIVES
    from objeval.parsing import parse_env_shape, parse_formula, parse_term

    shape = parse_env_shape(a.env)
    declared = [p for p in list(DEFAULT_PRIMITIVES) + a.builtins if p not in shape.names]
    if a.formula:
        phi = parse_formula(_text(a.formula))
        subject = a.subject or shape.last
        if subject is None:
            raise UsageError("formula compilation needs a non-empty --env")
        prims = {**DEFAULT_PRIMITIVES, **{b: None for b in a.builtins}}
        units = [compile_formula(phi, shape, subject, prims)]
    else:
        units = [compile_term(parse_term(text, declared), shape)
                 for text in _items(a, _text(a.term))]
    for unit in units:
        if a.trace:
            out(f"# code (raw): {render_code(unit.raw)}")
            steps = []
            normalize(unit.raw, steps)
            for s in steps:
                out(str(s))
        out(render_code(unit.raw if a.raw else unit.code))
    return EXIT_OK


def cmd_optimize(a, out):
    from objeval.combinators import normalize, render_code
    from objeval.parsing import parse_code

    steps = []
    nf = normalize(parse_code(_text(a.code)), steps)
    if a.trace:
        for s in steps:
            out(str(s))
    out(render_code(nf))
    return EXIT_OK


def _bindings(a):
    from objeval.parsing import parse_bindings

    text = ""
    if a.env_file:
        with open(a.env_file, encoding="utf-8") as fh:
            text = fh.read()
    text += "\n" + "\n".join(a.bind or [])
    return parse_bindings(text)


def cmd_eval(a, out):
    from objeval.evaluator import evaluate, run
    from objeval.values import render_value

    if a.code:
        from objeval.parsing import parse_code, parse_literal
        jobs = [lambda trace: evaluate(parse_code(_text(a.code)), parse_literal(a.input),
                                       trace=trace)]
    else:
        bindings = _bindings(a)
        jobs = [lambda trace, text=text: run(text, bindings, trace=trace, poison=a.poison)
                for text in _items(a, _text(a.term))]
    for job in jobs:
        trace = [] if a.trace else None
        try:
            value = job(trace)
        finally:
            for line in trace or ():
                out(line)
        out(render_value(value))
    return EXIT_OK


def _load(path):
    from objeval.domains import load_model
    return load_model(path)


def cmd_domain_check(a, out):
    from objeval.domains import check_functor_laws, check_naturality

    cat, car = _load(a.model)
    names = a.type or sorted(car.types)
    violations = []
    for name in names:
        violations += check_functor_laws(cat, name, car)
    checks, bad = check_naturality(cat, car)
    violations += bad
    arrows = len(cat.arrows)
    out(f"stages: {len(cat.stages)}, arrows: {arrows}, types: {len(car.types)}, "
        f"transitions: {len(car.transitions)}")
    for v in sorted(violations):
        out(v)
    out(f"{len(violations)} violation(s)")
    return EXIT_DOMAIN if violations else EXIT_OK


def cmd_domain_clone(a, out):
    from objeval.domains import load_individual, restrict, transact

    cat, car = _load(a.model)
    h = load_individual(_text(a.individual), cat, car)
    if a.arrow:
        h = restrict(h, cat.arrow(a.arrow))
    if a.transition:
        h = transact(car.transition(a.transition), h)
    out(f"{h.dom_stage} -> {S.render_type(h.cod_type)}: {h.render(cat)}")
    return EXIT_OK


def cmd_domain_state(a, out):
    from objeval.domains import load_individual, stage_state
    from objeval.domains.model import render_elem

    cat, car = _load(a.model)
    pop = [load_individual(_text(x), cat, car) for x in a.individual]
    out(render_elem(stage_state(None, a.element, pop, cat)))
    return EXIT_OK


def _formula_var(phi, var):
    if var:
        return var
    free = S.formula_free_vars(phi)
    if len(free) != 1:
        raise UsageError(f"formula has free variables {free}; name the subject with --var")
    return free[0]


def cmd_concept(a, out):
    from objeval.domains import concept_along, concept_at, concept_extent_via_code
    from objeval.domains.model import render_elem
    from objeval.parsing import parse_formula, parse_type

    cat, car = _load(a.model)
    phi = parse_formula(_text(a.formula))
    y = _formula_var(phi, a.var)
    ty = parse_type(a.type)
    if a.arrow:
        f = cat.arrow(a.arrow)
        members = concept_along(phi, y, ty, f, cat, car)
        label = f"C_{f.name} in hom({f.dom}, {S.render_type(ty)})"
        stage = f.dom
    else:
        if not a.stage:
            raise UsageError("concept needs --stage or --arrow")
        members = concept_at(phi, y, ty, a.stage, cat, car)
        label = f"C({a.stage}) in hom({a.stage}, {S.render_type(ty)})"
        stage = a.stage
    out(f"{label}: {len(members)} member(s)")
    for line in sorted(h.render(cat) for h in members):
        out(line)
    if a.code:
        ext = concept_extent_via_code(phi, y, stage, ty, cat, car)
        for i in cat.elements(stage):
            out(f"C({{{render_elem(i)}}}) = {render_elem(ext.per_element[i])}")
    return EXIT_OK


def cmd_describe(a, out):
    from objeval.domains import describe
    from objeval.domains.model import Carrier, render_elem
    from objeval.parsing import parse_description, parse_formula, parse_type

    text = _text(a.formula)
    if text.lstrip().startswith("iota"):
        d = parse_description(text)
        phi, x, domain = d.body, d.bound, d.ty
    else:
        phi = parse_formula(text)
        x, domain = _formula_var(phi, a.var), None
    car = _load(a.model)[1] if a.model else Carrier({})
    if a.carrier:
        carrier = a.carrier.strip()
        domain = _literal_set(carrier) if carrier.startswith("{") else parse_type(carrier)
    if domain is None:
        raise UsageError("describe needs --carrier (a set literal or a type of --model)")
    out(render_elem(describe(phi, x, domain, car)))
    return EXIT_OK


def cmd_selftest(a, out):
    from objeval.selftest import selftest

    return EXIT_DOMAIN if selftest(a.seed, a.model, out) else EXIT_OK


# ------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="objeval",
                                description="Compile lambda terms to categorical combinators, "
                                            "evaluate them, and explore variable domains.")
    p.add_argument("--enum-cap", type=int, help="enumeration cap (default 10^6 or $OBJEVAL_ENUM_CAP)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="parse and re-print a term, formula, type or code")
    s.add_argument("text")
    s.add_argument("--kind", choices=["term", "formula", "description", "type", "code"],
                   default="term")
    s.add_argument("--builtins", type=lambda t: t.split(","), default=[])
    s.add_argument("--multi", action="store_true", help="one item per line")
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("compile", help="compile a term under an environment shape")
    s.add_argument("--env", default="E", help='shape such as "E; y:Dy; x:Dx"')
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--term", help="term text or file")
    g.add_argument("--formula", help="formula text or file, compiled to Env x T -> Truth")
    s.add_argument("--subject", help="formula subject (default: the outermost slot)")
    s.add_argument("--multi", action="store_true", help="one term per line")
    s.add_argument("--trace", action="store_true", help="print rewrite steps")
    s.add_argument("--raw", action="store_true", help="print the code before normalization")
    s.add_argument("--builtins", type=lambda t: t.split(","), default=[])
    s.set_defaults(fn=cmd_compile)

    s = sub.add_parser("optimize", help="normalize combinator code")
    s.add_argument("--code", required=True)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(fn=cmd_optimize)

    s = sub.add_parser("eval", help="parse, compile, normalize and run a term")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--term", help="term text or file")
    g.add_argument("--code", help="combinator code to run on --input instead of a term")
    s.add_argument("--input", default="()", help="input value for --code")
    s.add_argument("--multi", action="store_true", help="one term per line")
    s.add_argument("--env-file", help="bindings file, one 'name = literal' per line")
    s.add_argument("--bind", action="append", metavar="NAME=LITERAL")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--poison", action="store_true",
                   help="fill bound-variable slots with placeholders that fail when read")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("domain", help="stage-category tools")
    dsub = s.add_subparsers(dest="domain_command", required=True)
    d = dsub.add_parser("check", help="check functor laws and naturality of a model")
    d.add_argument("model")
    d.add_argument("--type", action="append")
    d.set_defaults(fn=cmd_domain_check)
    d = dsub.add_parser("clone", help="restrict an individual along an arrow and/or a transition")
    d.add_argument("--model", required=True)
    d.add_argument("--individual", required=True, help="individual JSON text or file")
    d.add_argument("--arrow")
    d.add_argument("--transition")
    d.set_defaults(fn=cmd_domain_clone)
    d = dsub.add_parser("state", help="values of a population of individuals at one element")
    d.add_argument("--model", required=True)
    d.add_argument("--individual", action="append", default=[],
                   help="individual JSON text or file (repeatable)")
    d.add_argument("--element", required=True)
    d.set_defaults(fn=cmd_domain_state)

    s = sub.add_parser("concept", help="individuals satisfying a formula at a stage")
    s.add_argument("--model", required=True)
    s.add_argument("--formula", required=True)
    s.add_argument("--stage")
    s.add_argument("--arrow", help="compute C_f for this arrow instead")
    s.add_argument("--var")
    s.add_argument("--type", required=True)
    s.add_argument("--code", action="store_true", help="also print per-element extents "
                                                       "computed by compiled code")
    s.set_defaults(fn=cmd_concept)

    s = sub.add_parser("describe", help="the unique element satisfying a formula")
    s.add_argument("--formula", required=True, help="formula, 'iota x:T. phi', or a file")
    s.add_argument("--carrier", help="set literal such as {1,2,3}, or a type of --model")
    s.add_argument("--model")
    s.add_argument("--var")
    s.set_defaults(fn=cmd_describe)

    s = sub.add_parser("selftest", help="run the small-model suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--model", help="also check this model file")
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or (lambda line: print(line))
    err = err or (lambda line: print(line, file=sys.stderr))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    saved = os.environ.get("OBJEVAL_ENUM_CAP")
    if args.enum_cap is not None:
        os.environ["OBJEVAL_ENUM_CAP"] = str(args.enum_cap)
    try:
        return args.fn(args, out)
    except ParseError as e:
        err(f"parse error: {e}")
        return EXIT_USAGE
    except (ModelError, UsageError) as e:
        err(f"error: {e}")
        return EXIT_USAGE
    except OSError as e:
        err(f"error: {e}")
        return EXIT_USAGE
    except ObjevalError as e:
        code = getattr(e, "code", None)
        where = ""
        if code is not None:
            from objeval.combinators import render_code
            where = f" (in {render_code(code)})"
        err(f"{type(e).__name__}: {e}{where}")
        return EXIT_DOMAIN
    finally:
        # main can be called in-process; leave the environment as found
        if saved is None:
            os.environ.pop("OBJEVAL_ENUM_CAP", None)
        else:
            os.environ["OBJEVAL_ENUM_CAP"] = saved


if __name__ == "__main__":
    sys.exit(main())
