"""Seeded random formulas and models for property suites and soundness fuzzing."""

import logging

import numpy as np
from pydantic import BaseModel, Field

from ..logic.grammar import parse_formula
from ..logic.syntax import Agent, Formula, K, Ky, KyCond, Not, Prop, And, implies
from ..logic.terms import Base, Seed
from .model import Model

logger = logging.getLogger(__name__)

PROP_NAMES = ("p", "q", "r", "s")
AGENT_NAMES = ("i", "j", "k")


def prop_names(count: int) -> list[str]:
    """p, q, r, s, then p4, p5, ..."""
    return [PROP_NAMES[n] if n < len(PROP_NAMES) else f"p{n}" for n in range(count)]


def agent_names(count: int) -> list[str]:
    """i, j, k, then a3, a4, ..."""
    return [AGENT_NAMES[n] if n < len(AGENT_NAMES) else f"a{n}" for n in range(count)]


class RandomModelSpec(BaseModel):
    """
    Shape of a random model.

    Attributes:
        worlds: Number of worlds (w1..wn).
        agents: Number of agents.
        props: Number of propositions.
        seeds: Number of seed lines.
        ground: Tautology ground, as formula text; every member is used.
        rng_seed: Fixes every random choice.
        seed_depth: Depth cap for seed formulas.
        factive: Build the factive restriction.

    Example:
        >>> spec = RandomModelSpec(worlds=3, agents=2, props=2, seeds=3, ground=["(p -> p)"], rng_seed=7)
    """

    worlds: int = Field(default=3, ge=1)
    agents: int = Field(default=1, ge=1)
    props: int = Field(default=2, ge=1)
    seeds: int = Field(default=3, ge=0)
    ground: list[str] = Field(default_factory=list)
    rng_seed: int | list[int] = 0
    seed_depth: int = Field(default=2, ge=1)
    factive: bool = False


def random_formula(
    rng: np.random.Generator,
    props: list[str],
    agents: list[Agent],
    depth: int,
    *,
    conditional: bool = False,
    modal: bool = True,
) -> Formula:
    """
    A random formula of depth at most depth.

    Propositions get likelier as depth runs out; K, Ky (and conditional Ky
    when asked) are drawn only if modal is set.
    """
    if depth <= 1 or rng.random() < 0.25:
        return Prop(props[rng.integers(len(props))])
    choices = ["not", "and", "implies"]
    if modal:
        choices += ["K", "Ky", "K", "Ky"]
        if conditional:
            choices.append("KyCond")
    kind = choices[rng.integers(len(choices))]

    def sub() -> Formula:
        return random_formula(rng, props, agents, depth - 1, conditional=conditional, modal=modal)

    agent = agents[rng.integers(len(agents))]
    match kind:
        case "not":
            return Not(sub())
        case "and":
            return And(sub(), sub())
        case "implies":
            return implies(sub(), sub())
        case "K":
            return K(agent, sub())
        case "Ky":
            return Ky(agent, sub())
    return KyCond(agent, sub(), sub())


def random_partition(rng: np.random.Generator, worlds: list[str]) -> list[list[str]]:
    """Group worlds by a random label; every nonempty group is a block."""
    labels = rng.integers(len(worlds), size=len(worlds))
    blocks: dict[int, list[str]] = {}
    for world, label in zip(worlds, labels):
        blocks.setdefault(int(label), []).append(world)
    return list(blocks.values())


def random_world_set(rng: np.random.Generator, worlds: list[str]) -> frozenset[str]:
    """A nonempty random subset of worlds."""
    mask = rng.random(len(worlds)) < 0.5
    if not mask.any():
        mask[rng.integers(len(worlds))] = True
    return frozenset(w for w, keep in zip(worlds, mask) if keep)


def random_model(spec: RandomModelSpec) -> Model:
    """
    A valid model drawn from spec.

    Seed terms come from a pool of about half as many names as seeds, so
    one term often explains several formulas. Seed formulas come from a pool
    of random formulas closed off with implications between pool members,
    which gives the application rule something to do.
    """
    rng = np.random.default_rng(spec.rng_seed)
    worlds = [f"w{n}" for n in range(1, spec.worlds + 1)]
    agents = [Agent(name) for name in agent_names(spec.agents)]
    props = prop_names(spec.props)

    partitions = {agent: random_partition(rng, worlds) for agent in agents}
    valuation = {p: random_world_set(rng, worlds) if rng.random() < 0.9 else frozenset() for p in props}

    pool = [random_formula(rng, props, agents, spec.seed_depth) for _ in range(max(2, spec.seeds))]
    pool += [implies(pool[rng.integers(len(pool))], pool[rng.integers(len(pool))]) for _ in range(max(1, spec.seeds // 2))]
    names = [f"t{n}" for n in range(1, max(1, (spec.seeds + 1) // 2) + 1)]

    seeds = [
        Seed(Base(names[rng.integers(len(names))]), pool[rng.integers(len(pool))], random_world_set(rng, worlds))
        for _ in range(spec.seeds)
    ]
    ground = [parse_formula(text) for text in spec.ground]
    logger.debug(f"random model: {spec.worlds} worlds, {len(seeds)} seeds, rng seed {spec.rng_seed}")
    return Model.build(worlds, agents, partitions, valuation, ground, seeds, factive=spec.factive)
