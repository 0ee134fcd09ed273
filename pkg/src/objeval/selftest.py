"""Fixed-seed run of every small-model suite, for ``objeval selftest``."""
from __future__ import annotations

from objeval import sweeps


def suites(seed=0):
    yield lambda: sweeps.oracle_sweep(seed, 1000)
    for rule in sorted(sweeps.RULES):
        yield lambda rule=rule: sweeps.soundness_sweep(rule, seed, 200)
    yield sweeps.law_sweep
    yield sweeps.naturality_sweep
    yield sweeps.correspondence_sweep
    yield sweeps.function_roundtrip_sweep
    yield lambda: sweeps.concept_sweep(seed, 200)
    yield sweeps.description_sweep


def model_report(path) -> sweeps.SweepResult:
    """Functor laws and naturality for a model file."""
    from objeval.domains import check_functor_laws, check_naturality, load_model

    cat, car = load_model(path)
    res = sweeps.SweepResult(f"model {path}")
    for name in sorted(car.types):
        res.checked += 1
        res.failures += check_functor_laws(cat, name, car)
    checks, bad = check_naturality(cat, car)
    res.checked += checks
    res.failures += bad
    return res


def selftest(seed=0, model=None, out=print) -> int:
    """Run the suites, print one line per suite and a total.  Returns the
    number of failing suites."""
    results = []
    for run in suites(seed):
        res = run()
        results.append(res)
        out(res.line())
    if model is not None:
        res = model_report(model)
        results.append(res)
        out(res.line())
        for f in res.failures:
            out(f"  {f}")
    failed = sum(not r.ok for r in results)
    out(f"{len(results) - failed} suites passed, {failed} failed")
    return failed
