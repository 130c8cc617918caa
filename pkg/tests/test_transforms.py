import numpy as np
import pytest

from src.errors import ModelFormatError, UniverseError, UnsupportedFormulaError
from src.logic.grammar import parse_formula
from src.logic.syntax import Agent, Prop
from src.logic.terms import Base, CoverageEntry
from src.models.generator import RandomModelSpec, random_formula, random_model
from src.models.modelfile import load_model, print_model
from src.semantics.evaluator import eval
from src.semantics.jl import eval_jl, jl_transform, load_jl_model, print_jl_model, validate_jl
from src.semantics.properties import (
    check_factivity,
    check_introspection,
    introspection_universe,
    introspective_completion,
)
from src.semantics.transforms import factive_transform

from .support import fixture_text, golden_text

i, j = Agent("i"), Agent("j")
p = Prop("p")


def _random_case(seed: int, worlds: int = 5):
    rng = np.random.default_rng([seed, 1])
    spec = RandomModelSpec(
        worlds=int(rng.integers(1, worlds + 1)),
        agents=int(rng.integers(1, 3)),
        props=2,
        seeds=int(rng.integers(0, 6)),
        ground=["(p -> p)"],
        rng_seed=[seed, 2],
    )
    return random_model(spec), rng


class TestFactiveTransform:

    def test_entries_are_cut_to_truth(self, nonfactive_model):
        fm = factive_transform(nonfactive_model)
        assert fm.coverage.entries(p) == (CoverageEntry(Base("t"), frozenset({"w1"})),)
        assert check_factivity(fm) == []

    def test_printed_form(self, nonfactive_model):
        assert print_model(factive_transform(nonfactive_model)) == golden_text("transform_factive_nonfactive.txt")

    def test_idempotent(self, nonfactive_model):
        once = factive_transform(nonfactive_model)
        assert factive_transform(once) is once
        assert load_model(print_model(once)) == once

    def test_factive_model_keeps_its_entries(self, example2):
        fm = factive_transform(example2)
        assert fm.coverage == example2.coverage

    def test_truth_is_preserved(self):
        triples = 0
        for seed in range(200):
            m, rng = _random_case(seed)
            props = ["p", "q"]
            formulas = [random_formula(rng, props, list(m.agents), 4, conditional=True) for _ in range(5)]
            m = m.with_queries(formulas)
            fm = factive_transform(m)
            assert check_factivity(fm) == []
            assert fm.coverage.closure_violations() == []
            for f in formulas:
                for world in m.worlds:
                    assert eval(fm, world, f).value == eval(m, world, f).value, (seed, str(f), world)
                    triples += 1
        assert triples >= 1000

    def test_introspection_is_preserved(self):
        for seed in range(200):
            m, _ = _random_case(seed, worlds=4)
            universe = introspection_universe([p, parse_formula("(p -> q)")], m.agents)
            completed = introspective_completion(m, universe)
            assert check_introspection(factive_transform(completed), universe) == []


class TestJLTransform:

    def test_example_evidence(self, example2):
        jm = jl_transform(example2)
        assert jm.evidence[i].entries(p) == (CoverageEntry(Base("s"), frozenset({"w3"})),)
        assert [str(e.witness) for e in jm.evidence[j].entries(p)] == ["s", "t2"]

    def test_printed_form(self, example2):
        assert print_jl_model(jl_transform(example2)) == golden_text("transform_jl_example2.txt")

    def test_printed_form_loads_back(self, example2):
        jm = jl_transform(example2)
        loaded = load_jl_model(print_jl_model(jm))
        for agent in jm.agents:
            assert set(loaded.evidence[agent]) == set(jm.evidence[agent])
        assert validate_jl(loaded) == []

    def test_transform_output_is_valid(self):
        for seed in range(100):
            m, _ = _random_case(seed)
            assert validate_jl(jl_transform(m)) == []

    def test_truth_is_preserved(self):
        triples = 0
        for seed in range(200):
            m, rng = _random_case(seed)
            formulas = [random_formula(rng, ["p", "q"], list(m.agents), 4) for _ in range(5)]
            m = m.with_queries(formulas)
            jm = jl_transform(m)
            assert validate_jl(jm) == []
            for f in formulas:
                for world in m.worlds:
                    assert eval_jl(jm, world, f).value == eval(m, world, f).value, (seed, str(f), world)
                    triples += 1
        assert triples >= 1000

    def test_conditional_ky_is_rejected(self, example2):
        jm = jl_transform(example2).with_queries([parse_formula("Ky[i](p, p)")])
        with pytest.raises(UnsupportedFormulaError):
            eval_jl(jm, "w1", parse_formula("~Ky[i](p, p)"))

    def test_formula_outside_universe(self, example2):
        with pytest.raises(UniverseError):
            eval_jl(jl_transform(example2), "w1", parse_formula("K[i] p"))

    def test_ky_trace_is_local(self, example2):
        jm = jl_transform(example2).with_queries([parse_formula("Ky[j] p")])
        verdict = eval_jl(jm, "w1", parse_formula("Ky[j] p"))
        assert verdict.value
        assert verdict.trace.kind == "witness"
        assert verdict.trace.worlds == frozenset({"w1"})
        assert verdict.trace.witness == Base("t2")


class TestJLFiles:

    def test_validation_reports_conditions(self):
        violations = validate_jl(load_jl_model(fixture_text("broken_jl.mod")))
        assert [v.condition for v in violations] == ["II", "III"]

    def test_closure_violation(self):
        jm = load_jl_model(
            "model jl\n  worlds: w1\n  agents: i\n  partition i: {w1}\n"
            "  seed[i] s : (p -> q) @ w1\n  seed[i] t : p @ w1\nend\n"
        )
        [violation] = validate_jl(jm)
        assert violation.condition == "I"
        assert violation.describe().startswith("condition (I) for i:")

    def test_elky_file_is_refused(self):
        with pytest.raises(ModelFormatError):
            load_jl_model(fixture_text("example2.mod"))

    def test_factive_directive_is_not_jl(self):
        with pytest.raises(ModelFormatError):
            load_jl_model("model jl\n  worlds: w1\n  agents: i\n  partition i: {w1}\n  factive\nend\n")
