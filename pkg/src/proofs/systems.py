"""Axiom schemas of SKY and SKYI and schema matching.

Schemas are written in formula syntax over the metavariables phi and psi and
the agent metavariable i. Matching works on the desugared core form, so an
instance written with -> and one built from ~ and & match alike.
"""

from dataclasses import dataclass, field
from functools import cache
from typing import Literal

from ..errors import ModelValidationError, UnknownSchemaError
from ..logic.grammar import parse_formula
from ..logic.syntax import (
    Agent,
    And,
    Formula,
    K,
    Ky,
    KyCond,
    Not,
    Prop,
    is_propositional_tautology,
    print_formula,
)

SCHEMAS: dict[str, str] = {
    "DISTK": "(K[i] (phi -> psi) -> (K[i] phi -> K[i] psi))",
    "DISTY": "(Ky[i] (phi -> psi) -> (Ky[i] phi -> Ky[i] psi))",
    "T": "(K[i] phi -> phi)",
    "4": "(K[i] phi -> K[i] K[i] phi)",
    "5": "(~K[i] phi -> K[i] ~K[i] phi)",
    "PRES": "(Ky[i] phi -> K[i] phi)",
    "4YK": "(Ky[i] phi -> K[i] Ky[i] phi)",
    "4KY": "(K[i] phi -> Ky[i] K[i] phi)",
    "5KY": "(~K[i] phi -> Ky[i] ~K[i] phi)",
    "4Y": "(Ky[i] phi -> Ky[i] Ky[i] phi)",
    "5Y": "(~Ky[i] phi -> Ky[i] ~Ky[i] phi)",
}

# TAUT admits every formula whose modal-atom skeleton is a tautology.
TAUT = "TAUT"

SYSTEM_AXIOMS: dict[str, tuple[str, ...]] = {
    "SKY": (TAUT, "DISTK", "DISTY", "T", "4", "5", "PRES", "4YK"),
    "SKYI": (TAUT, "DISTK", "DISTY", "T", "PRES", "4KY", "5KY", "4Y", "5Y"),
}

SystemName = Literal["SKY", "SKYI"]


@dataclass(frozen=True)
class SystemId:
    """
    A proof system together with its tautology ground Λ.

    Attributes:
        name: "SKY" or "SKYI".
        ground: Formulas NECKY may wrap in Ky; each must be a tautology.
    """

    name: SystemName
    ground: tuple[Formula, ...] = ()

    def __post_init__(self):
        if self.name not in SYSTEM_AXIOMS:
            raise ValueError(f"unknown proof system {self.name!r}")
        for formula in self.ground:
            if not is_propositional_tautology(formula):
                raise ModelValidationError(f"{print_formula(formula)} is not a propositional tautology")

    @property
    def axioms(self) -> tuple[str, ...]:
        return SYSTEM_AXIOMS[self.name]


@cache
def schema(name: str) -> Formula:
    """The parsed schema for an axiom name other than TAUT."""
    return parse_formula(SCHEMAS[name])


@dataclass(frozen=True)
class Substitution:
    """Metavariable bindings produced by a schema match."""

    formulas: dict[str, Formula] = field(default_factory=dict)
    agents: dict[str, Agent] = field(default_factory=dict)

    def apply(self, pattern: Formula) -> Formula:
        """Instantiate pattern; unbound metavariables stay as they are."""
        match pattern:
            case Prop(name=name):
                return self.formulas.get(name, pattern)
            case Not(body=body):
                return Not(self.apply(body))
            case And(left=left, right=right):
                return And(self.apply(left), self.apply(right))
            case K(agent=agent, body=body):
                return K(self.agents.get(agent.name, agent), self.apply(body))
            case Ky(agent=agent, body=body):
                return Ky(self.agents.get(agent.name, agent), self.apply(body))
            case KyCond(agent=agent, condition=condition, body=body):
                return KyCond(self.agents.get(agent.name, agent), self.apply(condition), self.apply(body))
        raise TypeError(f"not a formula: {pattern!r}")


def _unify(pattern: Formula, target: Formula, formulas: dict, agents: dict) -> bool:
    if isinstance(pattern, Prop):
        bound = formulas.setdefault(pattern.name, target)
        return bound == target
    if type(pattern) is not type(target):
        return False
    if isinstance(pattern, (K, Ky, KyCond)):
        if agents.setdefault(pattern.agent.name, target.agent) != target.agent:
            return False
    match pattern:
        case Not(body=body) | K(body=body) | Ky(body=body):
            return _unify(body, target.body, formulas, agents)
        case And(left=left, right=right):
            return _unify(left, target.left, formulas, agents) and _unify(right, target.right, formulas, agents)
        case KyCond(condition=condition, body=body):
            return _unify(condition, target.condition, formulas, agents) and _unify(body, target.body, formulas, agents)
    return False


def match_schema(name: str, f: Formula) -> Substitution | None:
    """Match f against one schema regardless of system."""
    if name == TAUT:
        return Substitution() if is_propositional_tautology(f) else None
    if name not in SCHEMAS:
        raise UnknownSchemaError(f"unknown axiom {name!r}")
    formulas: dict[str, Formula] = {}
    agents: dict[str, Agent] = {}
    if not _unify(schema(name), f, formulas, agents):
        return None
    return Substitution(formulas, agents)


def match_axiom(system: SystemId, name: str, f: Formula) -> Substitution | None:
    """
    A substitution making axiom name of system equal to f, or None.

    Examples:
        PRES against (Ky[i] p -> K[i] p) binds phi to p and i to i.
        4YK against (Ky[i] p -> K[j] Ky[i] p) fails: i cannot be both i and j.

    Raises:
        UnknownSchemaError: name is not an axiom of system.
    """
    if name not in system.axioms:
        raise UnknownSchemaError(f"{name} is not an axiom of {system.name}")
    return match_schema(name, f)
