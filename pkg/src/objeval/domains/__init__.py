"""Finite-model semantics for variable domains."""
from objeval.domains.correspondence import (
    CodeExtent, all_relations, biconditional_violations, concept_extent_via_code, cross_check,
    extent_via_sets, func_to_rel, membership_domain, rel_to_func, to_value,
)
from objeval.domains.laws import (
    all_transitions, check_functor_laws, check_naturality, full_category,
    restriction_violations, small_categories,
)
from objeval.domains.model import (
    Arrow, Carrier, Graph, Individual, Relation, StageCat, Transition, constant, enum_cap,
    load_individual, load_model, make_individual, render_elem,
)
from objeval.domains.semantics import (
    Concept, along_within_target, clone_transact, concept, concept_along, concept_at,
    describe, describe_description, eval_formula, hom, restrict, stage_state, transact,
)

__all__ = [
    "Arrow", "Carrier", "CodeExtent", "Concept", "Graph", "Individual", "Relation", "StageCat",
    "Transition", "all_relations", "all_transitions", "along_within_target",
    "biconditional_violations", "check_functor_laws", "check_naturality", "clone_transact",
    "concept", "concept_along", "concept_at", "concept_extent_via_code", "constant",
    "cross_check", "describe", "describe_description", "enum_cap", "eval_formula",
    "extent_via_sets", "full_category", "func_to_rel", "hom", "load_individual", "load_model",
    "make_individual", "membership_domain", "rel_to_func", "render_elem", "restrict",
    "restriction_violations", "small_categories", "stage_state", "to_value", "transact",
]
