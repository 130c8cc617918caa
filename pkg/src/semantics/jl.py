"""Justification-logic style models: per-agent evidence tables and their semantics.

Here Ky[i] φ holds at w when some term's i-evidence for φ contains w itself
and φ holds across w's class. The corresponding JL model of an ELKy model
keeps, per agent, only the parts of each explanation made of whole blocks.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping

from ..errors import ModelFormatError, ModelValidationError, UniverseError, UnsupportedFormulaError
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
    subformula_closure,
    subformulas,
)
from ..logic.terms import SELF_EVIDENT, CoverageEntry, CoverageTable, print_term
from ..models.model import Frame, Model, WorldSet, normalize_partition
from ..models.modelfile import frame_lines, read_model_source, seed_line
from .evaluator import Trace, Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JLModel(Frame):
    """
    A frame with one evidence table per agent.

    Attributes:
        ground: The tautology ground Λ.
        evidence: Agent to its explanation table over universe.
        universe: Formulas the evidence tables are defined over.
    """

    ground: tuple[Formula, ...] = ()
    evidence: Mapping[Agent, CoverageTable] = field(default_factory=dict)
    universe: tuple[Formula, ...] = ()

    def with_queries(self, formulas: Iterable[Formula]) -> "JLModel":
        """The same evidence over a universe extended by formulas and their subformulas."""
        universe = tuple(subformula_closure(list(self.universe) + list(formulas)))
        if len(universe) == len(self.universe):
            return self
        evidence = {
            agent: CoverageTable(universe, {f: table.entries(f) for f in table.formulas()})
            for agent, table in self.evidence.items()
        }
        return JLModel(
            self.worlds, self.agents, self.partitions, self.valuation,
            ground=self.ground, evidence=evidence, universe=universe,
        )


def jl_transform(m: Model) -> JLModel:
    """
    M^J: per agent i, each entry (t, φ, S) becomes (t, φ, S') with S' the
    union of i-blocks contained in S; empty results are dropped.
    """

    def inner_blocks(agent: Agent):
        def restrict(_formula: Formula, worlds: WorldSet) -> WorldSet:
            return frozenset().union(*(b for b in m.partitions[agent] if b <= worlds))
        return restrict

    evidence = {agent: m.coverage.restricted(inner_blocks(agent)) for agent in m.agents}
    logger.info(
        f"JL transform: {', '.join(f'{a}: {len(t)} entries' for a, t in evidence.items())}"
    )
    return JLModel(
        m.worlds, m.agents, m.partitions, m.valuation,
        ground=m.ground, evidence=evidence, universe=m.universe,
    )


def _reject_conditional(f: Formula) -> None:
    if any(isinstance(g, KyCond) for g in subformulas(f)):
        raise UnsupportedFormulaError("JL semantics does not support conditional Ky")


def _truth(j: JLModel, f: Formula, memo: dict[Formula, WorldSet]) -> WorldSet:
    cached = memo.get(f)
    if cached is not None:
        return cached
    if f not in j.universe:
        raise UniverseError(f"{print_formula(f)} is outside the JL model's universe")
    match f:
        case Prop(name=name):
            result = j.valuation.get(name, frozenset())
        case Not(body=body):
            result = j.world_set - _truth(j, body, memo)
        case And(left=left, right=right):
            result = _truth(j, left, memo) & _truth(j, right, memo)
        case K(agent=agent, body=body) | Ky(agent=agent, body=body):
            if agent not in j.partitions:
                raise ModelValidationError(f"unknown agent {agent}")
            truth = _truth(j, body, memo)
            known = frozenset().union(*(b for b in j.partitions[agent] if b <= truth))
            if isinstance(f, Ky):
                evidenced = frozenset().union(*(e.worlds for e in j.evidence[agent].entries(body)))
                known &= evidenced
            result = known
        case _:
            raise TypeError(f"not a formula: {f!r}")
    memo[f] = result
    return result


def truth_set_jl(j: JLModel, f: Formula) -> WorldSet:
    """Worlds of j where f holds under the JL clauses."""
    _reject_conditional(f)
    return _truth(j, f, {})


def eval_jl(j: JLModel, world: str, f: Formula) -> Verdict:
    """
    Truth of f at world under the JL clauses.

    Raises:
        UnsupportedFormulaError: f contains a conditional Ky.
        UniverseError: f outside j's universe.
        ModelValidationError: unknown world or agent.
    """
    _reject_conditional(f)
    if world not in j.world_order:
        raise ModelValidationError(f"unknown world {world!r}")
    memo: dict[Formula, WorldSet] = {}
    value = world in _truth(j, f, memo)
    trace = None
    modal = f.body if isinstance(f, Not) else f
    if isinstance(modal, (K, Ky)):
        cls = j.equivalence_class(modal.agent, world)
        failing = j.sorted_worlds(cls - memo[modal.body])
        if failing:
            trace = Trace("failing-world", modal, cls, world=failing[0])
        elif isinstance(modal, K):
            trace = Trace("holds-throughout", modal, cls)
        else:
            here = frozenset({world})
            witness = next((e.witness for e in j.evidence[modal.agent].entries(modal.body) if world in e.worlds), None)
            trace = Trace("witness", modal, here, witness=witness) if witness else Trace("no-witness", modal, here)
    return Verdict(value, f, world, trace)


@dataclass(frozen=True)
class JLViolation:
    """
    A failed JL model condition.

    Attributes:
        condition: "I" closure, "II" ground, "III" monotonicity.
    """

    condition: Literal["I", "II", "III"]
    agent: Agent
    detail: str

    def describe(self) -> str:
        return f"condition ({self.condition}) for {self.agent}: {self.detail}"


def validate_jl(j: JLModel) -> list[JLViolation]:
    """All failures of closure (I), ground coverage (II) and monotonicity (III)."""
    violations = []
    for agent in j.agents:
        table = j.evidence.get(agent, CoverageTable(j.universe))
        for v in table.closure_violations():
            violations.append(JLViolation("I", agent, v.describe().removeprefix("condition (I): ")))
        for formula in j.ground:
            if formula not in table or not any(
                e.witness == SELF_EVIDENT and e.worlds == j.world_set for e in table.entries(formula)
            ):
                violations.append(JLViolation("II", agent, f"e does not explain {print_formula(formula)} at every world"))
        for formula, entry in table:
            for block in j.partitions[agent]:
                if block & entry.worlds and not block <= entry.worlds:
                    cut = " ".join(j.sorted_worlds(block & entry.worlds))
                    violations.append(JLViolation(
                        "III", agent,
                        f"{print_term(entry.witness)} explains {print_formula(formula)} at {{{cut}}} "
                        f"but not on the rest of block {{{' '.join(j.sorted_worlds(block))}}}",
                    ))
    return violations


def load_jl_model(text: str) -> JLModel:
    """
    Read a `model jl` file. Evidence is taken as written, without closure,
    so validate_jl can report hand-written defects.

    Raises:
        ModelFormatError: malformed text, or an ELKy model file.
        ModelValidationError: bad partitions or a non-tautology in lambda.
    """
    source = read_model_source(text)
    if not source.jl:
        raise ModelFormatError("not a JL model file (expected 'model jl' header)", 1)
    for formula in source.ground:
        if not is_propositional_tautology(formula):
            raise ModelValidationError(f"{print_formula(formula)} is not a propositional tautology")
    universe = tuple(subformula_closure([s[2] for s in source.seeds] + source.ground))
    entries: dict[Agent, dict[Formula, list[CoverageEntry]]] = {a: {} for a in source.agents}
    for agent, term, formula, worlds in source.seeds:
        entries[agent].setdefault(formula, []).append(CoverageEntry(term, worlds))
    return JLModel(
        tuple(source.worlds),
        tuple(source.agents),
        {a: normalize_partition(b, source.worlds) for a, b in source.partitions.items()},
        {p: frozenset(ws) for p, ws in source.valuation.items() if ws},
        ground=tuple(dict.fromkeys(source.ground)),
        evidence={a: CoverageTable(universe, per_agent) for a, per_agent in entries.items()},
        universe=universe,
    )


def print_jl_model(j: JLModel) -> str:
    """JL model file text with one `seed[i]` line per evidence entry."""
    lines = frame_lines(j, "model jl")
    for agent in j.agents:
        for formula, entry in j.evidence[agent]:
            lines.append(f"  {seed_line(j, entry.witness, formula, entry.worlds, agent)}")
    lines.append("end")
    return "\n".join(lines) + "\n"
