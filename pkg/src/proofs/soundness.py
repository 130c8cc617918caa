"""Soundness fuzzing: random axiom instances evaluated on random models.

Each trial draws a model and instantiates every axiom of the system with
random formulas. TAUT goes through a fixed list of tautology patterns and
NECKY through every member of the tautology ground. For SKYI the model is
first completed to satisfy introspection for the shaped formulas the
introspection axioms talk about. Any instance false at some world is a
counterexample, reproducible from (rng seed, trial index).
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..logic.grammar import parse_formula
from ..logic.syntax import Agent, Formula, K, Ky, Not, print_formula
from ..models.generator import RandomModelSpec, prop_names, random_formula, random_model
from ..models.model import Model
from ..models.modelfile import print_model
from ..semantics.evaluator import truth_set
from ..semantics.properties import introspective_completion
from .systems import SYSTEM_AXIOMS, TAUT, Substitution, schema

logger = logging.getLogger(__name__)

FUZZ_GROUND = ("(p -> p)", "((p & q) -> p)", "((p & q) -> q)")

TAUTOLOGY_PATTERNS = (
    "(phi -> phi)",
    "((phi & psi) -> phi)",
    "(phi -> (psi -> phi))",
    "(~~phi -> phi)",
    "((phi -> psi) -> (~psi -> ~phi))",
    "(phi | ~phi)",
)

# Axioms whose validity needs the introspection property.
INTROSPECTIVE_AXIOMS = ("4KY", "5KY", "4Y", "5Y")


@dataclass(frozen=True)
class Instance:
    """One formula to check, and the axiom or rule it instantiates."""

    source: str
    formula: Formula
    agent: Agent | None = None
    body: Formula | None = None


@dataclass(frozen=True)
class Counterexample:
    """
    An instance false somewhere.

    Attributes:
        seed: The run's rng seed.
        trial: Trial index; (seed, trial) regenerates the model.
        model_text: A standalone model file reproducing the failure.
    """

    seed: int
    trial: int
    source: str
    formula: Formula
    world: str
    model_text: str

    def describe(self) -> str:
        return (
            f"counterexample seed={self.seed} trial={self.trial} {self.source}: "
            f"{print_formula(self.formula)} fails at {self.world}"
        )


@dataclass(frozen=True)
class FuzzReport:
    system: str
    trials: int
    seed: int
    instances: int
    counterexamples: tuple[Counterexample, ...] = field(default_factory=tuple)

    def lines(self) -> list[str]:
        out = [c.describe() for c in self.counterexamples]
        out.append(
            f"fuzz {self.system}: {self.trials} trials, seed {self.seed}, "
            f"{self.instances} instances, {len(self.counterexamples)} counterexamples"
        )
        return out


def instantiate_axioms(
    system: str,
    rng: np.random.Generator,
    props: list[str],
    agents: list[Agent],
    depth: int,
    ground: list[Formula],
) -> list[Instance]:
    """One random instance of every axiom of system, plus NECKY instances."""

    def draw() -> Formula:
        return random_formula(rng, props, agents, depth)

    instances = []
    for name in SYSTEM_AXIOMS[system]:
        agent = agents[rng.integers(len(agents))]
        phi, psi = draw(), draw()
        substitution = Substitution({"phi": phi, "psi": psi}, {"i": agent})
        if name == TAUT:
            pattern = TAUTOLOGY_PATTERNS[rng.integers(len(TAUTOLOGY_PATTERNS))]
            instances.append(Instance(TAUT, substitution.apply(parse_formula(pattern))))
        else:
            instances.append(Instance(name, substitution.apply(schema(name)), agent, phi))
    for formula in ground:
        for agent in agents:
            instances.append(Instance("NECKY", Ky(agent, formula)))
    return instances


def _shapes(agent: Agent, f: Formula) -> list[Formula]:
    return [K(agent, f), Not(K(agent, f)), Ky(agent, f), Not(Ky(agent, f))]


def trial_model(system: str, seed: int, trial: int, max_worlds: int, depth: int) -> tuple[Model, list[Instance]]:
    """The model and instances of one trial, fully determined by (seed, trial)."""
    rng = np.random.default_rng([seed, trial])
    spec = RandomModelSpec(
        worlds=int(rng.integers(1, max_worlds + 1)),
        agents=int(rng.integers(1, 3)),
        props=int(rng.integers(2, 4)),
        seeds=int(rng.integers(0, 5)),
        ground=list(FUZZ_GROUND),
        rng_seed=[seed, trial, 1],
    )
    model = random_model(spec)
    props = prop_names(spec.props)
    instances = instantiate_axioms(system, rng, props, list(model.agents), depth, list(model.ground))
    if system == "SKYI":
        needed = [
            shape
            for inst in instances
            if inst.source in INTROSPECTIVE_AXIOMS
            for shape in _shapes(inst.agent, inst.body)
        ]
        model = introspective_completion(model, needed)
    model = model.with_queries([inst.formula for inst in instances])
    return model, instances


def run_soundness_fuzz(
    system: str,
    trials: int,
    seed: int,
    *,
    max_worlds: int = 4,
    depth: int = 2,
) -> FuzzReport:
    """
    Evaluate random axiom instances everywhere on random models.

    Args:
        system: "SKY" or "SKYI".
        trials: Number of models.
        seed: Base rng seed; trial k uses the seed sequence [seed, k].
        max_worlds: World-count cap per model.
        depth: Depth cap for the formulas substituted into schemas.
    """
    if system not in SYSTEM_AXIOMS:
        raise ValueError(f"unknown proof system {system!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    counterexamples = []
    checked = 0
    for trial in range(trials):
        model, instances = trial_model(system, seed, trial, max_worlds, depth)
        for inst in instances:
            checked += 1
            failing = model.world_set - truth_set(model, inst.formula)
            if failing:
                world = model.sorted_worlds(failing)[0]
                counterexamples.append(
                    Counterexample(seed, trial, inst.source, inst.formula, world, print_model(model))
                )
                logger.warning(f"{system} trial {trial}: {inst.source} instance fails at {world}")
    report = FuzzReport(system, trials, seed, checked, tuple(counterexamples))
    logger.info(report.lines()[-1])
    return report

