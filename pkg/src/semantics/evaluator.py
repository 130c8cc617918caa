"""Model checking for ELKy formulas, including conditional knowing-why.

Truth is computed per formula as the set of worlds where it holds. K, Ky and
conditional Ky are constant on each equivalence class, so their truth sets are
unions of blocks and each block is decided once.
"""

import logging
from dataclasses import dataclass
from typing import Literal

from ..errors import ModelValidationError, UniverseError
from ..logic.syntax import And, Formula, K, Ky, KyCond, Not, Prop, print_formula
from ..logic.terms import Term, covers_uniformly, print_term
from ..models.model import Frame, Model, WorldSet

logger = logging.getLogger(__name__)

TraceKind = Literal["witness", "no-witness", "failing-world", "holds-throughout", "vacuous"]


@dataclass(frozen=True)
class Trace:
    """
    Why a K, Ky or conditional Ky formula got its value at one world.

    Attributes:
        kind: "witness" (Ky true via witness), "no-witness" (body holds on
            worlds but no single term covers them), "failing-world" (body
            false at world), "holds-throughout" (K true), "vacuous"
            (conditional Ky over a cell with no condition-worlds).
        formula: The modal formula the trace is about.
        worlds: The equivalence class, or the cell for conditional Ky.
        witness: The explaining term for kind "witness".
        world: The failing world for kind "failing-world".
    """

    kind: TraceKind
    formula: Formula
    worlds: WorldSet
    witness: Term | None = None
    world: str | None = None

    def describe(self) -> str:
        cell = "{" + " ".join(sorted(self.worlds)) + "}"
        text = print_formula(self.formula)
        match self.kind:
            case "witness":
                return f"{text}: {print_term(self.witness)} explains the body on all of {cell}"
            case "no-witness":
                return f"{text}: the body holds on {cell} but no single term explains it there"
            case "failing-world":
                return f"{text}: the body is false at {self.world} in {cell}"
            case "holds-throughout":
                return f"{text}: the body holds on all of {cell}"
            case "vacuous":
                return f"{text}: no world of the class satisfies the condition"
        return text

    def replay(self, m: Model) -> bool:
        """
        Re-check the trace's claim in m and return the value it supports.

        Raises:
            ValueError: the claim does not hold in m.
        """
        body = self.formula.body
        truth = truth_set(m, body)
        match self.kind:
            case "witness":
                if not self.worlds <= truth:
                    raise ValueError("witness trace covers a world where the body fails")
                if not any(e.witness == self.witness and self.worlds <= e.worlds for e in m.coverage.entries(body)):
                    raise ValueError(f"{print_term(self.witness)} does not cover the recorded worlds")
                return True
            case "no-witness":
                if covers_uniformly(m.coverage, body, self.worlds) is not None:
                    raise ValueError("a uniform witness exists")
                return False
            case "failing-world":
                if self.world not in self.worlds or self.world in truth:
                    raise ValueError(f"the body holds at {self.world}")
                return False
            case "holds-throughout":
                if not self.worlds <= truth:
                    raise ValueError("the body fails somewhere in the class")
                return True
            case "vacuous":
                if self.worlds:
                    raise ValueError("vacuous trace over a nonempty cell")
                return True
        raise ValueError(f"unknown trace kind {self.kind!r}")


@dataclass(frozen=True)
class Verdict:
    """
    Truth value of formula at world, with an optional trace.

    A trace is attached when formula is modal or the negation of a modal
    formula; it never influences value.
    """

    value: bool
    formula: Formula
    world: str
    trace: Trace | None = None

    def __bool__(self) -> bool:
        return self.value

    def replay(self, m: Model) -> bool:
        """Recompute the value from the trace, or classically without one."""
        if self.trace is None:
            return self.world in truth_set(m, self.formula)
        value = self.trace.replay(m)
        return not value if isinstance(self.formula, Not) else value


def _require_universe(m: Model, f: Formula) -> None:
    if f not in m.coverage:
        raise UniverseError(
            f"{print_formula(f)} is outside the model's universe; extend it with Model.with_queries"
        )


def _blocks_where(frame: Frame, agent, decide) -> WorldSet:
    holds = set()
    for block in frame.partitions[agent]:
        if decide(block):
            holds |= block
    return frozenset(holds)


def _compute(m: Model, f: Formula) -> WorldSet:
    match f:
        case Prop(name=name):
            return m.valuation.get(name, frozenset())
        case Not(body=body):
            return m.world_set - truth_set(m, body)
        case And(left=left, right=right):
            return truth_set(m, left) & truth_set(m, right)
        case K(agent=agent, body=body):
            truth = truth_set(m, body)
            return _blocks_where(m, agent, lambda block: block <= truth)
        case Ky(agent=agent, body=body):
            truth = truth_set(m, body)
            return _blocks_where(
                m, agent, lambda block: block <= truth and covers_uniformly(m.coverage, body, block) is not None
            )
        case KyCond(agent=agent, condition=condition, body=body):
            truth = truth_set(m, body)
            condition_truth = truth_set(m, condition)

            def decide(block: WorldSet) -> bool:
                cell = block & condition_truth
                if not cell:
                    return True
                return cell <= truth and covers_uniformly(m.coverage, body, cell) is not None

            return _blocks_where(m, agent, decide)
    raise TypeError(f"not a formula: {f!r}")


def truth_set(m: Model, f: Formula) -> WorldSet:
    """
    Worlds of m where f holds.

    Raises:
        UniverseError: f outside m's universe.
    """
    memo = m.memo
    with memo.lock:
        cached = memo.truth.get(f)
    if cached is not None:
        return cached
    _require_universe(m, f)
    if isinstance(f, (K, Ky, KyCond)) and f.agent not in m.partitions:
        raise ModelValidationError(f"unknown agent {f.agent}")
    result = _compute(m, f)
    with memo.lock:
        memo.truth[f] = result
    return result


def _modal_trace(m: Model, f: Formula, world: str) -> Trace:
    cls = m.equivalence_class(f.agent, world)
    truth = truth_set(m, f.body)
    if isinstance(f, KyCond):
        cls = cls & truth_set(m, f.condition)
        if not cls:
            return Trace("vacuous", f, cls)
    failing = m.sorted_worlds(cls - truth)
    if failing:
        return Trace("failing-world", f, cls, world=failing[0])
    if isinstance(f, K):
        return Trace("holds-throughout", f, cls)
    witness = covers_uniformly(m.coverage, f.body, cls)
    if witness is None:
        return Trace("no-witness", f, cls)
    return Trace("witness", f, cls, witness=witness)


def eval(m: Model, world: str, f: Formula) -> Verdict:
    """
    Truth of f at world, with a trace for modal (or negated modal) formulas.

    Examples:
        In the three-world example model, at w2:
        (K[i] p & ~Ky[i] p & Ky[j] p & K[i] Ky[j] p) is true, and
        Ky[i] p is false with a "no-witness" trace over {w1 w2}.

    Raises:
        UniverseError: f outside m's universe.
        ModelValidationError: unknown world or agent.
    """
    if world not in m.world_order:
        raise ModelValidationError(f"unknown world {world!r}")
    value = world in truth_set(m, f)
    modal = f.body if isinstance(f, Not) else f
    trace = _modal_trace(m, modal, world) if isinstance(modal, (K, Ky, KyCond)) else None
    logger.debug(f"{print_formula(f)} at {world}: {value}")
    return Verdict(value, f, world, trace)


def eval_all(m: Model, f: Formula) -> dict[str, bool]:
    """Truth of f at every world, in declaration order."""
    truth = truth_set(m, f)
    return {w: w in truth for w in m.worlds}
