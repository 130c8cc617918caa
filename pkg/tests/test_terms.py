import numpy as np
import pytest

from src.errors import ResourceLimitError, UniverseError
from src.logic.grammar import parse_formula
from src.logic.syntax import Prop, implies
from src.logic.terms import (
    SELF_EVIDENT,
    App,
    Base,
    CoverageEntry,
    CoverageTable,
    Seed,
    brute_force_saturation_oracle,
    covers_uniformly,
    saturate,
    subterms,
)
from src.models.generator import random_world_set
from src.models.model import universe_of

p, q = Prop("p"), Prop("q")
s, t, u = Base("s"), Base("t"), Base("u")
W = ["w1", "w2", "w3"]


def ws(*names):
    return frozenset(names)


def saturated(seeds, ground=()):
    return saturate(seeds, ground, W, universe_of(seeds, ground))


class TestTermOrder:

    def test_size(self):
        assert App(s, App(t, SELF_EVIDENT)).size == 5

    def test_e_before_names_then_text(self):
        ordered = sorted([App(s, t), t, SELF_EVIDENT, s], key=lambda x: x.key)
        assert ordered == [SELF_EVIDENT, s, t, App(s, t)]

    def test_subterms_post_order(self):
        assert subterms(App(s, App(t, u))) == [s, t, u, App(t, u), App(s, App(t, u))]

    def test_base_names_are_validated(self):
        with pytest.raises(ValueError):
            Base("e")


class TestSaturation:

    def test_application_rule(self):
        table = saturated([Seed(s, implies(p, q), ws("w1", "w2")), Seed(t, p, ws("w2", "w3"))])
        assert table.entries(q) == (CoverageEntry(App(s, t), ws("w2")),)

    def test_same_witness_on_one_formula_merges(self):
        table = saturated([Seed(t, p, ws("w1")), Seed(t, p, ws("w3"))])
        assert table.entries(p) == (CoverageEntry(t, ws("w1", "w3")),)

    def test_ground_is_explained_by_e_everywhere(self):
        ground = [parse_formula("(p -> p)")]
        table = saturated([], ground)
        assert table.entries(ground[0]) == (CoverageEntry(SELF_EVIDENT, frozenset(W)),)

    def test_e_passes_explanations_through_ground_implications(self):
        ground = [parse_formula("(p -> p)")]
        table = saturated([Seed(t, p, ws("w2"))], ground)
        # (e . t) explains p wherever t does; t is the smaller witness
        assert table.entries(p) == (CoverageEntry(t, ws("w2")),)

    def test_smallest_witness_wins_per_world_set(self):
        table = saturated([Seed(t, p, ws("w1")), Seed(s, p, ws("w1"))])
        assert table.entries(p) == (CoverageEntry(s, ws("w1")),)

    def test_entries_sorted_by_witness(self):
        table = saturated([Seed(t, p, ws("w1")), Seed(s, p, ws("w2"))])
        assert [e.witness for e in table.entries(p)] == [s, t]

    def test_formula_without_entries(self):
        table = saturated([Seed(s, implies(p, q), ws("w1"))])
        assert table.entries(q) == ()
        assert q in table

    def test_outside_universe(self):
        table = saturated([Seed(t, p, ws("w1"))])
        with pytest.raises(UniverseError):
            table.entries(q)

    def test_seed_outside_universe(self):
        with pytest.raises(UniverseError):
            saturate([Seed(t, q, ws("w1"))], [], W, [p])

    def test_profile_cap(self):
        seeds = [Seed(s, implies(p, q), ws("w1", "w2")), Seed(t, p, ws("w2", "w3"))]
        with pytest.raises(ResourceLimitError):
            saturate(seeds, [], W, universe_of(seeds, []), max_profiles=1)

    def test_saturation_is_closed(self):
        seeds = [
            Seed(s, implies(p, q), ws("w1", "w2")),
            Seed(t, p, ws("w2", "w3")),
            Seed(u, implies(q, p), ws("w2")),
        ]
        assert saturated(seeds).closure_violations() == []


class TestCoverageTable:

    def test_duplicate_world_sets_keep_smallest_witness(self):
        table = CoverageTable([p], {p: [CoverageEntry(t, ws("w1")), CoverageEntry(s, ws("w1"))]})
        assert table.entries(p) == (CoverageEntry(s, ws("w1")),)
        assert len(table) == 1

    def test_entry_outside_universe(self):
        with pytest.raises(UniverseError):
            CoverageTable([p], {q: [CoverageEntry(t, ws("w1"))]})

    def test_closure_violation(self):
        imp = implies(p, q)
        table = CoverageTable(
            universe_of([Seed(s, imp, ws("w1"))], []),
            {imp: [CoverageEntry(s, ws("w1", "w2"))], p: [CoverageEntry(t, ws("w2", "w3"))]},
        )
        [violation] = table.closure_violations()
        assert violation.worlds == ws("w2")
        assert violation.describe().startswith("condition (I)")

    def test_restricted_drops_empty_entries(self):
        table = CoverageTable([p], {p: [CoverageEntry(t, ws("w1")), CoverageEntry(s, ws("w2", "w3"))]})
        cut = table.restricted(lambda _f, worlds: worlds & ws("w2"))
        assert list(cut) == [(p, CoverageEntry(s, ws("w2")))]

    def test_covers_uniformly(self):
        table = CoverageTable([p], {p: [CoverageEntry(t, ws("w1", "w2")), CoverageEntry(s, ws("w2"))]})
        assert covers_uniformly(table, p, ["w2"]) == s
        assert covers_uniformly(table, p, ["w1", "w2"]) == t
        assert covers_uniformly(table, p, ["w1", "w3"]) is None

    def test_empty_cell_is_covered_by_smallest_witness(self):
        table = CoverageTable([p, q], {p: [CoverageEntry(t, ws("w1"))]})
        assert covers_uniformly(table, p, []) == t
        assert covers_uniformly(table, q, []) is None


def _random_seed_set(rng: np.random.Generator):
    names = ["p", "q", "r"]
    order = rng.permutation(len(names))
    a, b = Prop(names[order[0]]), Prop(names[order[1]])
    worlds = [f"w{n}" for n in range(1, int(rng.integers(1, 5)) + 1)]
    if rng.random() < 0.5:
        pool, ground = [a, b, implies(a, b), implies(b, a)], []
    else:
        pool, ground = [a, b, implies(a, b)], [implies(a, a)]
    terms = [s, t, u]
    seeds = [
        Seed(terms[rng.integers(len(terms))], pool[rng.integers(len(pool))], random_world_set(rng, worlds))
        for _ in range(int(rng.integers(1, 6)))
    ]
    return seeds, ground, worlds


def _stable_oracle(seeds, ground, worlds, universe, max_terms=60_000):
    """The oracle once raising the depth by two adds no world-set; None when the term cap is hit."""
    previous = None
    depth = 1
    while True:
        try:
            oracle = brute_force_saturation_oracle(seeds, ground, worlds, universe, depth, max_terms=max_terms)
        except ResourceLimitError:
            return None
        if previous is not None and oracle.families() == previous.families():
            return oracle
        previous = oracle
        depth += 2


class TestOracle:

    def test_small_example(self):
        seeds = [Seed(s, implies(p, q), ws("w1", "w2")), Seed(t, p, ws("w2", "w3"))]
        universe = universe_of(seeds, [])
        oracle = brute_force_saturation_oracle(seeds, [], W, universe, 3)
        assert oracle.families() == saturate(seeds, [], W, universe).families()

    def test_shallow_oracle_misses_derived_entries(self):
        seeds = [Seed(s, implies(p, q), ws("w1", "w2")), Seed(t, p, ws("w2", "w3"))]
        oracle = brute_force_saturation_oracle(seeds, [], W, universe_of(seeds, []), 1)
        assert oracle.entries(q) == ()

    def test_term_cap(self):
        seeds = [Seed(s, p, ws("w1")), Seed(t, p, ws("w2"))]
        with pytest.raises(ResourceLimitError):
            brute_force_saturation_oracle(seeds, [], W, [p], 7, max_terms=10)

    def test_saturation_matches_oracle_on_random_seed_sets(self):
        rng = np.random.default_rng(20240611)
        checked = 0
        for _ in range(2000):
            seeds, ground, worlds = _random_seed_set(rng)
            universe = universe_of(seeds, ground)
            assert len(universe) <= 8
            table = saturate(seeds, ground, worlds, universe)
            assert len(table) <= len(universe) * 2 ** len(worlds)
            oracle = _stable_oracle(seeds, ground, worlds, universe)
            if oracle is None:
                continue
            assert oracle.families() == table.families(), [str(x) for x in seeds]
            checked += 1
            if checked == 500:
                break
        assert checked == 500

    def test_saturation_is_idempotent(self):
        rng = np.random.default_rng(77)
        for _ in range(300):
            seeds, ground, worlds = _random_seed_set(rng)
            universe = universe_of(seeds, ground)
            table = saturate(seeds, ground, worlds, universe)
            again = saturate([Seed(e.witness, f, e.worlds) for f, e in table], ground, worlds, universe)
            assert again.families() == table.families(), [str(x) for x in seeds]

    def test_saturation_is_monotone_in_seeds(self):
        rng = np.random.default_rng(78)
        for _ in range(300):
            seeds, ground, worlds = _random_seed_set(rng)
            universe = universe_of(seeds, ground)
            extra = Seed(
                [s, t, u][rng.integers(3)],
                universe[rng.integers(len(universe))],
                random_world_set(rng, worlds),
            )
            before = saturate(seeds, ground, worlds, universe)
            after = saturate([*seeds, extra], ground, worlds, universe)
            for formula, entry in before:
                assert any(entry.worlds <= later.worlds for later in after.entries(formula)), str(extra)
