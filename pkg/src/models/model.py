"""Finite ELKy models: S5 frames as partitions, tautology ground, seeds and saturated coverage."""

import logging
import threading
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..errors import ModelValidationError
from ..logic.syntax import (
    RESERVED_PROP,
    Agent,
    Formula,
    agents_of,
    is_identifier,
    is_propositional_tautology,
    print_formula,
    subformula_closure,
)
from ..logic.terms import Base, CoverageTable, Seed, print_term, saturate, subterms

logger = logging.getLogger(__name__)

WorldSet = frozenset[str]
Partition = tuple[WorldSet, ...]


def normalize_partition(blocks: Iterable[Iterable[str]], order: Sequence[str]) -> Partition:
    """Blocks as frozensets, sorted by the declaration index of their first world."""
    position = {w: k for k, w in enumerate(order)}
    frozen = [frozenset(b) for b in blocks]
    return tuple(sorted(frozen, key=lambda b: min(position.get(w, len(position)) for w in b) if b else -1))


def partition_from_edges(worlds: Sequence[str], edges: Iterable[tuple[str, str]]) -> Partition:
    """Equivalence closure of an edge list, via union-find."""
    parent = {w: w for w in worlds}

    def find(w: str) -> str:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for a, b in edges:
        for w in (a, b):
            if w not in parent:
                raise ModelValidationError(f"edge names undeclared world {w!r}")
        root_a, root_b = find(a), find(b)
        if root_a != root_b:
            parent[root_b] = root_a

    blocks: dict[str, set[str]] = {}
    for w in worlds:
        blocks.setdefault(find(w), set()).add(w)
    return normalize_partition(blocks.values(), worlds)


@dataclass(frozen=True)
class Frame:
    """
    Worlds, agents, one partition per agent, and a valuation.

    The accessibility relation of agent i relates exactly the worlds of one
    block, so every R_i is an equivalence relation by construction.

    Attributes:
        worlds: World names in declaration order.
        agents: Agents in declaration order.
        partitions: Blocks of each agent, normalised by first world.
        valuation: Proposition name to the worlds where it holds; missing
            names hold nowhere.
    """

    worlds: tuple[str, ...]
    agents: tuple[Agent, ...]
    partitions: Mapping[Agent, Partition]
    valuation: Mapping[str, WorldSet]

    def __post_init__(self):
        if not self.worlds:
            raise ModelValidationError("a model needs at least one world")
        if not self.agents:
            raise ModelValidationError("a model needs at least one agent")
        for names, kind in ((self.worlds, "world"), ([a.name for a in self.agents], "agent")):
            seen = set()
            for name in names:
                if not is_identifier(name):
                    raise ModelValidationError(f"invalid {kind} name {name!r}")
                if name in seen:
                    raise ModelValidationError(f"{kind} {name!r} declared twice")
                seen.add(name)

        everything = frozenset(self.worlds)
        for agent in self.agents:
            if agent not in self.partitions:
                raise ModelValidationError(f"agent {agent} has no partition")
            covered: set[str] = set()
            for block in self.partitions[agent]:
                if not block:
                    raise ModelValidationError(f"partition of {agent} has an empty block")
                stray = block - everything
                if stray:
                    raise ModelValidationError(f"partition of {agent} names undeclared worlds {sorted(stray)}")
                overlap = block & covered
                if overlap:
                    raise ModelValidationError(f"partition of {agent} has overlapping blocks at {sorted(overlap)}")
                covered |= block
            missing = everything - covered
            if missing:
                raise ModelValidationError(f"partition of {agent} leaves out worlds {sorted(missing)}")
        for agent in self.partitions:
            if agent not in self.agents:
                raise ModelValidationError(f"partition given for undeclared agent {agent}")
        for prop, worlds in self.valuation.items():
            if prop == RESERVED_PROP or not is_identifier(prop):
                raise ModelValidationError(f"{prop!r} cannot be given a valuation")
            stray = worlds - everything
            if stray:
                raise ModelValidationError(f"valuation of {prop} names undeclared worlds {sorted(stray)}")

    @cached_property
    def world_set(self) -> WorldSet:
        return frozenset(self.worlds)

    @cached_property
    def world_order(self) -> dict[str, int]:
        return {w: k for k, w in enumerate(self.worlds)}

    @cached_property
    def _classes(self) -> dict[tuple[Agent, str], WorldSet]:
        return {
            (agent, w): block
            for agent, blocks in self.partitions.items()
            for block in blocks
            for w in block
        }

    def sorted_worlds(self, worlds: Iterable[str]) -> list[str]:
        """Worlds in declaration order."""
        return sorted(worlds, key=self.world_order.__getitem__)

    def equivalence_class(self, agent: Agent, world: str) -> WorldSet:
        """
        The block of agent's partition containing world.

        Raises:
            ModelValidationError: unknown agent or world.
        """
        if agent not in self.partitions:
            raise ModelValidationError(f"unknown agent {agent}")
        if world not in self.world_order:
            raise ModelValidationError(f"unknown world {world!r}")
        return self._classes[(agent, world)]

    def relates(self, agent: Agent, w: str, v: str) -> bool:
        return v in self.equivalence_class(agent, w)

    @cached_property
    def memo(self) -> "Memo":
        return Memo()


@dataclass(frozen=True)
class Model(Frame):
    """
    A finite ELKy model with its saturated coverage table.

    Build instances with Model.build; the constructor takes the computed
    universe and coverage as given.

    Attributes:
        ground: The tautology ground Λ.
        seeds: Explanation facts as listed in the model file.
        universe: Formulas the coverage table is defined over.
        coverage: The least admissible explanation function over universe,
            restricted to truth when factive is set.
        factive: Whether coverage is the factive restriction.
        queries: Extra formulas the universe was extended with.
    """

    ground: tuple[Formula, ...] = ()
    seeds: tuple[Seed, ...] = ()
    universe: tuple[Formula, ...] = ()
    coverage: CoverageTable = field(default_factory=lambda: CoverageTable(()))
    factive: bool = False
    queries: tuple[Formula, ...] = ()

    @classmethod
    def build(
        cls,
        worlds: Sequence[str],
        agents: Sequence[Agent],
        partitions: Mapping[Agent, Iterable[Iterable[str]]],
        valuation: Mapping[str, Iterable[str]],
        ground: Iterable[Formula] = (),
        seeds: Iterable[Seed] = (),
        *,
        queries: Iterable[Formula] = (),
        factive: bool = False,
        max_profiles: int | None = None,
    ) -> "Model":
        """
        Validate the parts, build the universe and saturate.

        Raises:
            ModelValidationError: malformed partitions, a non-tautology in
                the ground, or a seed naming undeclared worlds or agents.
            ResourceLimitError: saturation exceeded its profile cap.
        """
        worlds = tuple(worlds)
        agents = tuple(agents)
        ground = tuple(dict.fromkeys(ground))
        seeds = tuple(seeds)
        queries = tuple(dict.fromkeys(queries))

        frame = Frame(
            worlds=worlds,
            agents=agents,
            partitions={a: normalize_partition(blocks, worlds) for a, blocks in partitions.items()},
            valuation={p: ws for p, ws in ((p, frozenset(v)) for p, v in valuation.items()) if ws},
        )

        for formula in ground:
            if not is_propositional_tautology(formula):
                raise ModelValidationError(f"{print_formula(formula)} is not a propositional tautology")
        declared = set(agents)
        for seed in seeds:
            stray = seed.worlds - frame.world_set
            if stray:
                raise ModelValidationError(
                    f"seed {print_term(seed.term)} : {print_formula(seed.formula)} names undeclared worlds {sorted(stray)}"
                )
        for formula in [s.formula for s in seeds] + list(ground):
            unknown = [a for a in agents_of(formula) if a not in declared]
            if unknown:
                raise ModelValidationError(f"{print_formula(formula)} mentions undeclared agent {unknown[0]}")

        universe = tuple(universe_of(seeds, ground, queries))
        coverage = saturate(seeds, ground, worlds, universe, max_profiles=max_profiles)
        logger.debug(f"model over {len(worlds)} worlds saturated to {len(coverage)} entries on {len(universe)} formulas")

        model = cls(
            worlds=frame.worlds,
            agents=frame.agents,
            partitions=frame.partitions,
            valuation=frame.valuation,
            ground=ground,
            seeds=seeds,
            universe=universe,
            coverage=coverage,
            factive=False,
            queries=queries,
        )
        if factive:
            from ..semantics.evaluator import truth_set

            restricted = coverage.restricted(lambda f, ws: ws & truth_set(model, f))
            model = replace(model, coverage=restricted, factive=True)
        return model

    def with_queries(self, formulas: Iterable[Formula], *, max_profiles: int | None = None) -> "Model":
        """
        The same model over a universe extended by formulas and their subformulas.

        Entries on formulas already in the universe are unchanged; new
        members receive no entries, as seeds and ground lie in the old universe.
        """
        members = set(self.universe)
        extra = [f for f in subformula_closure(formulas) if f not in members]
        if not extra:
            return self
        unknown = [a for f in extra for a in agents_of(f) if a not in self.partitions]
        if unknown:
            raise ModelValidationError(f"query mentions undeclared agent {unknown[0]}")
        return Model.build(
            self.worlds,
            self.agents,
            self.partitions,
            self.valuation,
            self.ground,
            self.seeds,
            queries=self.queries + tuple(formulas),
            factive=self.factive,
            max_profiles=max_profiles,
        )

    def with_seeds(self, seeds: Iterable[Seed]) -> "Model":
        """A re-saturated copy with extra seeds appended."""
        return Model.build(
            self.worlds,
            self.agents,
            self.partitions,
            self.valuation,
            self.ground,
            self.seeds + tuple(seeds),
            queries=self.queries,
            factive=self.factive,
        )

    def term_names(self) -> set[str]:
        """Every base-term name occurring in a seed witness."""
        return {t.name for s in self.seeds for t in subterms(s.term) if isinstance(t, Base)}


def universe_of(seeds: Iterable[Seed], ground: Iterable[Formula], extra: Iterable[Formula] = ()) -> list[Formula]:
    """
    Subformula closure of seed formulas, ground and extra, in first-occurrence order.

    A desugared implication ~(φ & ~ψ) has φ and ψ among its subformulas, so
    the closure is already closed under implication parts.
    """
    return subformula_closure([s.formula for s in seeds] + list(ground) + list(extra))


def build_universe(model: Model, extra: Iterable[Formula] = ()) -> list[Formula]:
    """
    The universe a model would need to evaluate extra.

    Examples:
        seeds on p and ground {(p -> p)}: [p, ~p, (p & ~p), (p -> p)]
        empty model, extra {Ky[i](q, p)}: [q, p, Ky[i](q, p)]
    """
    return universe_of(model.seeds, model.ground, extra)


def equivalence_class(model: Frame, agent: Agent, world: str) -> WorldSet:
    """Module-level form of Frame.equivalence_class."""
    return model.equivalence_class(agent, world)


class Memo:
    """Per-model cache of truth sets, shared by threads evaluating one model."""

    def __init__(self):
        self.lock = threading.Lock()
        self.truth: dict[Formula, WorldSet] = {}
