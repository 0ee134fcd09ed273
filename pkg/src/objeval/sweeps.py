"""Differential and exhaustive sweeps shared by the test suite, the
``selftest`` command and the scripts in ``scripts/``.

Each sweep returns a :class:`SweepResult` with the number of cases
checked and a list of failure descriptions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from objeval import syntax as S
from objeval.combinators import RULES, normalize
from objeval.errors import EvalError
from objeval.evaluator import agree, evaluate, oracle_eval, run, same_observation
from objeval.randgen import PROBES, formula_cases, random_value, rule_instance, term_cases
from objeval.values import Closure, MapV, PrimV


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    attempts: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{status}  {self.name}: {self.checked} checked, {len(self.failures)} failed"


def oracle_sweep(seed=0, n=1000) -> SweepResult:
    """eval . compile against the substitution oracle on random terms."""
    res = SweepResult(f"oracle agreement (seed {seed})")
    for case in term_cases(seed, n):
        res.checked += 1
        try:
            got = run(case.term, case.bindings)
        except EvalError as e:
            res.failures.append(f"{case.text}: machine error {e}")
            continue
        want = oracle_eval(case.term, case.bindings)
        if not agree(got, want, PROBES):
            res.failures.append(f"{case.text} with {case.bindings}")
    return res


def _is_function(v):
    return isinstance(v, (Closure, PrimV, MapV))


def soundness_sweep(rule: str, seed=0, n=200, max_attempts=200_000) -> SweepResult:
    """Random instances of one rule whose redex evaluates: the redex, its
    contractum and the full normal form must give the same result.

    For R2 the redex is always a closure, so an instance counts only when
    the contractum ``k`` evaluates to a function; results are then compared
    by applying them to probe arguments.
    """
    rng = random.Random(f"{rule}:{seed}")
    res = SweepResult(f"rewrite soundness {rule}")
    while res.checked < n and res.attempts < max_attempts:
        res.attempts += 1
        redex, contractum = rule_instance(rule, rng)
        env = random_value(rng, 3)
        try:
            before = evaluate(redex, env)
            if rule == "R2":
                k_val = evaluate(contractum, env)
                if not _is_function(k_val):
                    continue
        except (EvalError, RecursionError):
            continue
        res.checked += 1
        try:
            after = evaluate(contractum, env)
            normal = evaluate(normalize(redex), env)
        except EvalError as e:
            res.failures.append(f"{rule}: rewritten form fails: {e}")
            continue
        if rule == "R2":
            same = same_observation(before, after, PROBES)
        else:
            same = before == after
        if not same or not same_observation(before, normal, PROBES):
            res.failures.append(f"{rule} on {env}")
    if res.checked < n:
        res.failures.append(f"only {res.checked} evaluating instances in {res.attempts} attempts")
    return res


def all_soundness(seed=0, n=200) -> list[SweepResult]:
    return [soundness_sweep(rule, seed, n) for rule in RULES]


def law_sweep(max_stages=3, max_size=3, type_size=2) -> SweepResult:
    """Restriction laws on every small full stage category."""
    from objeval.domains import Carrier, restriction_violations, small_categories

    car = Carrier({"T": tuple(f"t{k}" for k in range(type_size))})
    res = SweepResult("restriction laws")
    for sizes, cat in small_categories(max_stages, max_size):
        checks, bad = restriction_violations(cat, "T", car)
        res.checked += checks
        res.failures += [f"{sizes}: {b}" for b in bad]
    return res


def naturality_sweep(max_stages=3, max_size=3, type_size=2) -> SweepResult:
    """Naturality squares for every transition between two small types."""
    from objeval.domains import Carrier, all_transitions, check_naturality, small_categories

    car = Carrier({"T": tuple(f"t{k}" for k in range(type_size)),
                   "S": tuple(f"s{k}" for k in range(type_size))})
    gs = all_transitions("T", "S", car) + all_transitions("T", "T", car)
    res = SweepResult("naturality")
    for sizes, cat in small_categories(max_stages, max_size):
        checks, bad = check_naturality(cat, car, gs)
        res.checked += checks
        res.failures += [f"{sizes}: {b}" for b in bad]
    return res


def correspondence_sweep(n_i=3, n_t=3) -> SweepResult:
    """func_to_rel . rel_to_func = id on every relation, plus the
    membership biconditionals for every pair."""
    from objeval.domains import (
        Carrier, StageCat, all_relations, biconditional_violations, func_to_rel,
        membership_domain, rel_to_func,
    )

    cat = StageCat({"I": tuple(f"i{k}" for k in range(n_i))})
    car = Carrier({"T": tuple(f"t{k}" for k in range(n_t))})
    member = membership_domain("T", car)
    res = SweepResult(f"relation round trip |I|={n_i} |T|={n_t}")
    for R in all_relations("I", "T", cat, car):
        res.checked += 1
        if func_to_rel(rel_to_func(R, cat), cat) != R:
            res.failures.append(f"round trip changes {sorted(R.pairs)}")
        res.failures += biconditional_violations(R, cat, car, member)
    return res


def function_roundtrip_sweep(n_i=2, n_t=2) -> SweepResult:
    from objeval.domains import Carrier, StageCat, func_to_rel, hom, rel_to_func

    cat = StageCat({"I": tuple(f"i{k}" for k in range(n_i))})
    car = Carrier({"T": tuple(f"t{k}" for k in range(n_t))})
    res = SweepResult(f"function round trip |I|={n_i} |T|={n_t}")
    for h in hom("I", S.Power(S.Base("T")), cat, car):
        res.checked += 1
        if rel_to_func(func_to_rel(h, cat), cat) != h:
            res.failures.append(f"round trip changes {h.values}")
    return res


def concept_sweep(seed=0, n=200) -> SweepResult:
    """Compiled formula code against the set-theoretic semantics, and
    ``C_{1_A} = C(A)``, on random atomic formulas."""
    from objeval.domains import concept_along, concept_at, cross_check

    res = SweepResult(f"concept cross-check (seed {seed})")
    for case in formula_cases(seed, n):
        res.checked += 1
        text = S.render_formula(case.formula)
        try:
            res.failures += cross_check(case.formula, case.subject, case.stage, case.ty,
                                        case.cat, case.car, case.nu)
            one = case.cat.identity(case.stage)
            if concept_along(case.formula, case.subject, case.ty, one, case.cat, case.car,
                             case.nu) != concept_at(case.formula, case.subject, case.ty,
                                                    case.stage, case.cat, case.car, case.nu):
                res.failures.append(f"{text}: C along the identity differs from C")
        except Exception as e:  # a crash is a failure of the sweep, not of the run
            res.failures.append(f"{text}: {type(e).__name__}: {e}")
    return res


def description_sweep(size=5) -> SweepResult:
    from objeval.domains import describe
    from objeval.errors import NotUnique, NoWitness

    carrier = list(range(1, size + 1))
    res = SweepResult(f"descriptions over {size} elements")
    for d in carrier:
        res.checked += 1
        got = describe(S.EqVar("x", S.Lit(d)), "x", carrier)
        if got != d:
            res.failures.append(f"x = {d} described as {got}")
    for phi, err in ((S.Verum(), NotUnique), (S.Falsum(), NoWitness)):
        res.checked += 1
        try:
            describe(phi, "x", carrier)
            res.failures.append(f"{S.render_formula(phi)}: no error")
        except err:
            pass
    return res
