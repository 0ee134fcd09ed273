import itertools
import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from objeval import syntax as S
from objeval.domains import (
    Carrier, Individual, StageCat, all_relations, along_within_target,
    biconditional_violations, check_functor_laws, check_naturality, clone_transact,
    concept_along, concept_at, constant, cross_check, describe, eval_formula, func_to_rel,
    hom, load_individual, load_model, make_individual, membership_domain, rel_to_func,
    restrict, stage_state, transact,
)
from objeval.errors import (
    ElementNotInStage, EnumerationCapExceeded, ModelError, NotUnique, NoWitness,
    StageMismatch, TypeMismatch, UnboundVariable,
)
from objeval.parsing import parse_formula
from objeval.selftest import model_report

MODELS = Path(__file__).parent.parent / "models"


@pytest.fixture
def evolvent():
    return load_model(MODELS / "evolvent.json")


@pytest.fixture
def h(evolvent):
    cat, car = evolvent
    return load_individual(MODELS / "h.json", cat, car)


# ------------------------------------------------------------- hom sets

@pytest.mark.parametrize("n_stage, n_type", [(1, 2), (2, 3), (0, 4), (3, 2), (2, 0)])
def test_hom_size_is_a_power(n_stage, n_type):
    cat = StageCat({"A": tuple(range(n_stage))})
    car = Carrier({"T": tuple(f"t{k}" for k in range(n_type))})
    hs = hom("A", "T", cat, car)
    assert len(hs) == n_type ** n_stage
    assert len(set(hs)) == len(hs)


def test_hom_over_compound_types(evolvent):
    cat, car = evolvent
    assert len(hom("A", "[C]", cat, car)) == 4
    assert len(hom("A", "C * E", cat, car)) == 6
    assert len(hom("A", "C -> E", cat, car)) == 9
    assert len(hom("I", "Truth", cat, car)) == 4


def test_enumeration_cap(evolvent, monkeypatch):
    cat, car = evolvent
    with pytest.raises(EnumerationCapExceeded):
        hom("B", "E", cat, car, cap=26)
    assert len(hom("B", "E", cat, car, cap=27)) == 27
    monkeypatch.setenv("OBJEVAL_ENUM_CAP", "8")
    with pytest.raises(EnumerationCapExceeded):
        hom("I", "E", cat, car)


# ------------------------------------------------------------- restriction

def test_restrict_and_transact(evolvent, h):
    cat, car = evolvent
    f, g = cat.arrow("f"), car.transition("g")
    assert h.mapping(cat) == {"i1": "c1", "i2": "c2"}
    assert restrict(h, f).mapping(cat) == {"b1": "c1", "b2": "c2", "b3": "c2"}
    assert transact(g, h).mapping(cat) == {"i1": "e1", "i2": "e3"}
    assert clone_transact(g, h, f).mapping(cat) == {"b1": "e1", "b2": "e3", "b3": "e3"}
    with pytest.raises(StageMismatch):
        restrict(h, cat.arrow("k"))
    with pytest.raises(TypeMismatch):
        transact(g, transact(g, h))


def test_restriction_laws(evolvent):
    cat, car = evolvent
    f, k, fk = cat.arrow("f"), cat.arrow("k"), cat.arrow("fk")
    for T in ["C", "E", "[C]"]:
        for x in hom("I", T, cat, car):
            assert restrict(x, cat.identity("I")) == x
            assert restrict(restrict(x, f), k) == restrict(x, cat.compose(f, k))
            assert restrict(x, fk) == restrict(restrict(x, f), k)


def test_transact_commutes_with_restriction(evolvent):
    cat, car = evolvent
    f, g = cat.arrow("f"), car.transition("g")
    for x in hom("I", "C", cat, car):
        assert transact(g, restrict(x, f)) == restrict(transact(g, x), f)


def test_stage_state(evolvent, h):
    cat, car = evolvent
    c2 = constant(cat, "I", "C", "c2")
    assert stage_state("C", "i1", [h, c2], cat) == {"c1", "c2"}
    assert stage_state("C", "i2", [h, c2], cat) == {"c2"}
    with pytest.raises(ElementNotInStage):
        stage_state("C", "b1", [h], cat)


def test_make_individual_validates(evolvent):
    cat, car = evolvent
    with pytest.raises(ModelError):
        make_individual(cat, car, "I", "C", {"i1": "c1"})
    with pytest.raises(TypeMismatch):
        make_individual(cat, car, "I", "C", {"i1": "c1", "i2": "e1"})


# ------------------------------------------------------------- formulas

@pytest.fixture
def mod3():
    cat = StageCat({"A": ("a1", "a2"), "Z": ()})
    car = Carrier({"N": (0, 1, 2), "Empty": ()})
    car.add_transition("s", "N", "N", {n: (n + 1) % 3 for n in range(3)})
    return cat, car


def test_successor_mod_three(mod3):
    cat, car = mod3
    # every individual has a successor and s has no fixed point
    assert eval_formula(parse_formula("forall x:N. exists y:N. y = s x"), "A", {}, cat, car)
    assert not eval_formula(parse_formula("exists x:N. x = s x"), "A", {}, cat, car)


def test_nothing_is_in_the_empty_set(mod3):
    cat, car = mod3
    empty = constant(cat, "A", "[N]", frozenset())
    phi = parse_formula("exists t:N. t in e")
    assert not eval_formula(phi, "A", {"e": empty}, cat, car)
    full = constant(cat, "A", "[N]", frozenset({0, 1, 2}))
    assert eval_formula(phi, "A", {"e": full}, cat, car)


def test_quantifiers_are_local_to_the_stage(mod3):
    cat, car = mod3
    # the empty stage has exactly one individual into any type, even an empty one
    phi = parse_formula("exists t:Empty. true")
    assert eval_formula(phi, "Z", {}, cat, car)
    assert not eval_formula(phi, "A", {}, cat, car)


def test_atomic_formulas_hold_at_every_element(mod3):
    cat, car = mod3
    x = make_individual(cat, car, "A", "N", {"a1": 0, "a2": 1})
    y = make_individual(cat, car, "A", "N", {"a1": 1, "a2": 1})
    assert not eval_formula(parse_formula("y = s x"), "A", {"x": x, "y": y}, cat, car)
    assert eval_formula(parse_formula("y = s x"), "A", {"x": x, "y": y}, cat, car) == \
        all((y.at(cat, i) - x.at(cat, i)) % 3 == 1 for i in ("a1", "a2"))


def test_formula_errors(mod3, evolvent):
    cat, car = mod3
    x = constant(cat, "A", "N", 0)
    with pytest.raises(UnboundVariable):
        eval_formula(parse_formula("x = y"), "A", {"x": x}, cat, car)
    with pytest.raises(TypeMismatch):
        eval_formula(parse_formula("x in x"), "A", {"x": x}, cat, car)
    with pytest.raises(StageMismatch):
        eval_formula(parse_formula("x = x"), "Z", {"x": x}, cat, car)
    ecat, ecar = evolvent
    c = constant(ecat, "I", "C", "c1")
    with pytest.raises(TypeMismatch):
        eval_formula(parse_formula("x = g x"), "I", {"x": c}, ecat, ecar)


# ------------------------------------------------------------- concepts

def test_concept_of_an_image(evolvent):
    cat, car = evolvent
    phi = parse_formula("exists p:C. y = g p")
    # g hits e1 and e3, so C(A) is every individual into {e1, e3}
    for stage, n in [("A", 1), ("I", 2), ("B", 3)]:
        c = concept_at(phi, "y", "E", stage, cat, car)
        assert len(c) == 2 ** n
        assert all(set(x.values) <= {"e1", "e3"} for x in c)
    along = concept_along(phi, "y", "E", cat.arrow("f"), cat, car)
    # b2 and b3 share an image under f, so only 4 of the 8 patterns appear
    assert len(along) == 4
    assert all(x.at(cat, "b2") == x.at(cat, "b3") for x in along)
    assert along_within_target(phi, "y", "E", cat.arrow("f"), cat, car)


def test_concept_with_a_parameter(evolvent, h):
    cat, car = evolvent
    c = concept_at(parse_formula("y = g p"), "y", "E", "I", cat, car, {"p": h})
    assert [x.mapping(cat) for x in c] == [{"i1": "e1", "i2": "e3"}]
    assert cross_check(parse_formula("y = g p"), "y", "I", "E", cat, car, {"p": h}) == []


@pytest.mark.parametrize("text", [
    "y = g p", "not y = g p", "y = g p or y = y", "exists q:C. y = g q",
    "forall q:C. y = g q -> q = p",
])
def test_compiled_concept_matches_sets(evolvent, h, text):
    cat, car = evolvent
    assert cross_check(parse_formula(text), "y", "I", "E", cat, car, {"p": h}) == []


# ------------------------------------------------------------- descriptions

def test_describe():
    assert describe(S.EqVar("x", S.Lit(3)), "x", [1, 2, 3]) == 3
    with pytest.raises(NotUnique) as info:
        describe(S.Verum(), "x", [1, 2])
    assert list(info.value.witnesses) == [1, 2]
    with pytest.raises(NoWitness):
        describe(S.EqVar("x", S.Lit(9)), "x", [1, 2])


def test_describe_in_a_model(evolvent):
    _, car = evolvent
    phi = parse_formula("y = g x")
    assert describe(phi, "y", "E", car, context={"x": "c2"}) == "e3"
    with pytest.raises(NoWitness):
        describe(parse_formula("e2 = g x"), "x", "C", car, context={"e2": "e2"})


# ------------------------------------------------------------- relations

@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_membership_domain_size(n):
    car = Carrier({"T": tuple(range(n))})
    # each element lies in half of the subsets
    assert len(membership_domain("T", car)) == (n * 2 ** (n - 1) if n else 0)


def test_relations_and_functions_correspond(evolvent):
    cat, car = evolvent
    rels = list(all_relations("I", "C", cat, car))
    assert len(rels) == 2 ** 4
    funcs = {rel_to_func(R, cat) for R in rels}
    assert funcs == set(hom("I", "[C]", cat, car))
    for R in rels:
        assert func_to_rel(rel_to_func(R, cat), cat) == R
        assert biconditional_violations(R, cat, car) == []


def test_func_to_rel_needs_a_power_type(evolvent, h):
    cat, _ = evolvent
    with pytest.raises(TypeMismatch):
        func_to_rel(h, cat)


# ------------------------------------------------------------- laws and models

def test_model_laws_hold(evolvent):
    cat, car = evolvent
    for T in car.types:
        assert check_functor_laws(cat, T, car) == []
    checks, bad = check_naturality(cat, car)
    assert checks > 0 and bad == []


def test_corrupted_model_is_reported():
    res = model_report(MODELS / "corrupted.json")
    # fk sends a1 to i1 while f . k sends it to i2: an individual is caught
    # exactly when it differs at i1 and i2, 2 of 4 into C and 6 of 9 into E
    assert res.failures == [
        "composition: H_C(fk) != H_C(k) . H_C(f) on 2 individual(s)",
        "composition: H_E(fk) != H_E(k) . H_E(f) on 6 individual(s)",
    ]


def _model(**override):
    data = json.loads((MODELS / "evolvent.json").read_text())
    data.update(override)
    return data


@pytest.mark.parametrize("data", [
    _model(arrows={"f": {"dom": "B", "cod": "I", "map": {"b1": "i1"}}}),
    _model(arrows={"f": {"dom": "B", "cod": "I", "map": {"b1": "i1", "b2": "i9", "b3": "i1"}}}),
    _model(stages={"I": ["i1", "i1"]}, arrows={}),
    _model(transitions={"g": {"dom": "C", "cod": "E", "map": {"c1": "e1"}}}),
    "{not json",
])
def test_load_errors(data):
    with pytest.raises(ModelError):
        load_model(data if isinstance(data, str) else json.dumps(data))


def test_declared_identity_is_checked():
    data = _model(arrows={"one": {"dom": "I", "cod": "I", "map": {"i1": "i2", "i2": "i1"},
                                  "identity": True}})
    cat, car = load_model(data)
    assert check_functor_laws(cat, "C", car) == [
        "identity: one is declared the identity on I but H_C(one) moves an individual"]


@st.composite
def categories(draw):
    sizes = draw(st.lists(st.integers(0, 3), min_size=1, max_size=3))
    stages = {f"S{k}": tuple(f"s{k}_{j}" for j in range(n)) for k, n in enumerate(sizes)}
    cat = StageCat(stages)
    names = list(stages)
    for m in range(draw(st.integers(0, 4))):
        B, A = draw(st.sampled_from(names)), draw(st.sampled_from(names))
        if stages[B] and not stages[A]:
            continue
        img = [draw(st.sampled_from(stages[A])) for _ in stages[B]]
        cat.add_arrow(f"a{m}", B, A, dict(zip(stages[B], img)))
    return cat


@settings(max_examples=50)
@given(categories(), st.integers(1, 3))
def test_random_categories_satisfy_the_laws(cat, n_type):
    car = Carrier({"T": tuple(range(n_type)), "U": ("u", "v")})
    car.add_transition("g", "T", "U", {k: "uv"[k % 2] for k in range(n_type)})
    assert check_functor_laws(cat, "T", car) == []
    checks, bad = check_naturality(cat, car)
    assert bad == []


def test_compose_matches_function_composition(evolvent):
    cat, _ = evolvent
    f, k = cat.arrow("f"), cat.arrow("k")
    fk = cat.compose(f, k)
    fmap, kmap = cat.mapping(f), cat.mapping(k)
    assert cat.mapping(fk) == {a: fmap[kmap[a]] for a in cat.elements("A")}
    with pytest.raises(StageMismatch):
        cat.compose(k, f)


def test_individual_from_json_text(evolvent):
    cat, car = evolvent
    x = load_individual('{"stage": "A", "type": "[C]", "map": {"a1": ["c1"]}}', cat, car)
    assert x == Individual("A", S.Power(S.Base("C")), (frozenset({"c1"}),))


def test_elements_are_listed_in_a_fixed_order(evolvent):
    _, car = evolvent
    assert car.elements("C * E") == tuple(itertools.product(("c1", "c2"), ("e1", "e2", "e3")))


# ------------------------------------------------------------- small operational facts

def test_stage_state_extremes(evolvent):
    cat, car = evolvent
    whole = hom("I", "C", cat, car)
    assert stage_state("C", "i1", whole, cat) == frozenset(car.elements("C"))
    assert stage_state("C", "i1", [], cat) == frozenset()
    assert stage_state("C", "i2", [constant(cat, "I", "C", "c2")], cat) == {"c2"}


def _identity_transition(car, ty):
    from objeval.domains.model import Transition
    t = S.Base(ty)
    return Transition(f"1_{ty}", t, t, tuple((e, e) for e in car.elements(ty)))


def test_identities_act_trivially(evolvent, h):
    cat, car = evolvent
    one_c = _identity_transition(car, "C")
    one_i = cat.identity("I")
    assert transact(one_c, h) == h
    assert restrict(h, one_i) == h
    assert clone_transact(one_c, h, one_i) == h
    g, f = car.transitions["g"], cat.arrow("f")
    assert clone_transact(g, h, f) == restrict(transact(g, h), f)


def test_constants_stay_constant(evolvent):
    cat, car = evolvent
    c = constant(cat, "I", "C", "c1")
    assert transact(car.transitions["g"], c) == constant(cat, "I", "E", "e1")
    assert restrict(c, cat.arrow("f")) == constant(cat, "B", "C", "c1")


def test_extreme_relations(evolvent):
    from objeval.domains.model import Relation
    cat, car = evolvent
    T = S.Base("C")
    empty = Relation("I", T, frozenset())
    assert rel_to_func(empty, cat) == constant(cat, "I", S.Power(T), frozenset())
    full = Relation("I", T, frozenset(itertools.product(cat.elements("I"), car.elements(T))))
    assert rel_to_func(full, cat) == constant(cat, "I", S.Power(T), frozenset(car.elements(T)))


def test_function_relation_round_trip(evolvent):
    cat, car = evolvent
    for h in hom("I", "[C]", cat, car):
        assert rel_to_func(func_to_rel(h, cat), cat) == h


def test_concept_extremes(evolvent):
    cat, car = evolvent
    everything = frozenset(hom("I", "E", cat, car))
    assert concept_at(parse_formula("y = y"), "y", "E", "I", cat, car) == everything
    assert concept_at(parse_formula("not y = y"), "y", "E", "I", cat, car) == frozenset()
    car.transitions["idE"] = _identity_transition(car, "E")
    assert concept_at(parse_formula("y = idE y"), "y", "E", "I", cat, car) == everything


def test_code_extent_extremes(evolvent):
    from objeval.domains.correspondence import concept_extent_via_code
    cat, car = evolvent
    ext = concept_extent_via_code(parse_formula("true"), "x", "I", "C", cat, car)
    assert ext.function == constant(cat, "I", "[C]", frozenset(car.elements("C")))
    ext = concept_extent_via_code(parse_formula("x = atom:c2"), "x", "I", "C", cat, car)
    assert ext.function == constant(cat, "I", "[C]", frozenset({"c2"}))


def test_single_stage_category_has_no_law_violations():
    cat = StageCat({"A": ("a1", "a2")})
    car = Carrier({"T": ("t1", "t2")})
    assert check_functor_laws(cat, "T", car) == []
