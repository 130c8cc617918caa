"""Formulas, explanation terms and coverage-table saturation."""

from .grammar import parse_formula, parse_term
from .syntax import (
    BOT,
    MODAL_TYPES,
    TOP,
    Agent,
    And,
    Formula,
    K,
    Ky,
    KyCond,
    ModalAtomization,
    Not,
    Prop,
    agents_of,
    as_implication,
    conjunction_of,
    depth,
    disjunction,
    formula_key,
    implies,
    is_propositional_tautology,
    modal_atomize,
    possible,
    print_formula,
    props_of,
    subformula_closure,
    subformulas,
)
from .terms import (
    SELF_EVIDENT,
    App,
    Base,
    ClosureViolation,
    CoverageEntry,
    CoverageTable,
    Seed,
    SelfEvident,
    Term,
    brute_force_saturation_oracle,
    covers_uniformly,
    print_term,
    saturate,
    subterms,
)

__all__ = [
    "Agent",
    "And",
    "App",
    "BOT",
    "Base",
    "ClosureViolation",
    "CoverageEntry",
    "CoverageTable",
    "Formula",
    "K",
    "Ky",
    "KyCond",
    "MODAL_TYPES",
    "ModalAtomization",
    "Not",
    "Prop",
    "SELF_EVIDENT",
    "Seed",
    "SelfEvident",
    "TOP",
    "Term",
    "agents_of",
    "as_implication",
    "brute_force_saturation_oracle",
    "conjunction_of",
    "covers_uniformly",
    "depth",
    "disjunction",
    "formula_key",
    "implies",
    "is_propositional_tautology",
    "modal_atomize",
    "parse_formula",
    "parse_term",
    "possible",
    "print_formula",
    "print_term",
    "props_of",
    "saturate",
    "subformula_closure",
    "subformulas",
    "subterms",
]
