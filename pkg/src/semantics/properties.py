"""Factivity and introspection checks, and introspective completion of a model."""

import logging
from dataclasses import dataclass
from typing import Iterable

from ..config import get_settings
from ..errors import IntrospectionShapeError, ResourceLimitError
from ..logic.syntax import Agent, Formula, K, Ky, Not, print_formula, subformula_closure
from ..logic.terms import Base, Seed, Term, covers_uniformly, print_term
from ..models.model import Model
from .evaluator import truth_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactivityViolation:
    """witness explains formula at world although formula is false there."""

    witness: Term
    formula: Formula
    world: str

    def describe(self) -> str:
        return f"{print_term(self.witness)} explains {print_formula(self.formula)} at {self.world}, where it is false"


@dataclass(frozen=True)
class IntrospectionViolation:
    """formula holds at world but no term explains it across the agent's class."""

    world: str
    formula: Formula

    def describe(self) -> str:
        return f"{print_formula(self.formula)} holds at {self.world} without a uniform explanation"


def check_factivity(m: Model) -> list[FactivityViolation]:
    """Every (witness, formula, world) where coverage claims an explanation of a falsehood."""
    violations = []
    for formula, entry in m.coverage:
        false_at = entry.worlds - truth_set(m, formula)
        for world in m.sorted_worlds(false_at):
            violations.append(FactivityViolation(entry.witness, formula, world))
    return violations


def shaped_agent(f: Formula) -> Agent:
    """
    The agent of a formula shaped K[i] φ, ~K[i] φ, Ky[i] φ or ~Ky[i] φ.

    Raises:
        IntrospectionShapeError: any other shape.
    """
    inner = f.body if isinstance(f, Not) else f
    if isinstance(inner, (K, Ky)):
        return inner.agent
    raise IntrospectionShapeError(f"{print_formula(f)} is not of shape K, ~K, Ky or ~Ky")


def introspection_universe(formulas: Iterable[Formula], agents: Iterable[Agent]) -> list[Formula]:
    """K, ~K, Ky and ~Ky around every subformula of formulas, for every agent."""
    agents = list(agents)
    universe = []
    for f in subformula_closure(formulas):
        for agent in agents:
            universe += [K(agent, f), Not(K(agent, f)), Ky(agent, f), Not(Ky(agent, f))]
    return universe


def check_introspection(m: Model, universe: Iterable[Formula]) -> list[IntrospectionViolation]:
    """
    Worlds where a true shaped formula lacks a uniform explanation on its agent's class.

    The model's universe is extended by the given formulas first.

    Raises:
        IntrospectionShapeError: a member not of the four shapes.
    """
    universe = list(dict.fromkeys(universe))
    agents = [shaped_agent(f) for f in universe]
    if not universe:
        return []
    m = m.with_queries(universe)
    violations = []
    for formula, agent in zip(universe, agents):
        for world in m.sorted_worlds(truth_set(m, formula)):
            cls = m.equivalence_class(agent, world)
            if covers_uniformly(m.coverage, formula, cls) is None:
                violations.append(IntrospectionViolation(world, formula))
    return violations


def _fresh_names(taken: set[str]):
    k = 0
    while True:
        k += 1
        name = f"c{k}"
        if name not in taken:
            yield name


def introspective_completion(
    m: Model,
    universe: Iterable[Formula],
    *,
    max_rounds: int | None = None,
) -> Model:
    """
    Add fresh seeds until check_introspection(m, universe) is empty.

    Each round seeds one new base term on every violated formula, covering
    the formula's whole truth set; that set is a union of classes, so the
    seed is factive and uniform.

    Raises:
        IntrospectionShapeError: a member not of the four shapes.
        ResourceLimitError: still violated after max_rounds rounds.
    """
    limit = max_rounds if max_rounds is not None else get_settings().max_completion_rounds
    universe = list(dict.fromkeys(universe))
    m = m.with_queries(universe)
    names = _fresh_names(m.term_names())
    for round_number in range(1, limit + 1):
        violations = check_introspection(m, universe)
        if not violations:
            return m
        violated = list(dict.fromkeys(v.formula for v in violations))
        logger.debug(f"completion round {round_number}: seeding {len(violated)} formulas")
        m = m.with_seeds(Seed(Base(next(names)), f, truth_set(m, f)) for f in violated)
    if check_introspection(m, universe):
        raise ResourceLimitError(f"model not introspective after {limit} completion rounds")
    return m
