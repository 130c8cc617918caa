"""Explanation terms, coverage tables and least-fixpoint saturation.

A coverage table is the finite face of the admissible explanation function E:
for every formula of a finite universe it lists the distinct world-sets E(t, φ)
takes, each with its smallest witness term t.

Saturation computes the least E that contains the seeds, gives e the whole
world-set on every tautology-ground member, and satisfies

    E(s, φ -> ψ) ∩ E(t, φ) ⊆ E(s·t, ψ).

It works on term profiles: the vector of world-sets one term has across the
universe. Terms with equal profiles compose identically, so closing the set
of profiles under application is enough, and there are finitely many.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from ..config import get_settings
from ..errors import ModelValidationError, ResourceLimitError, UniverseError
from .syntax import Formula, as_implication, is_identifier, print_formula

logger = logging.getLogger(__name__)

WorldSet = frozenset[str]


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """Base class of explanation terms."""

    def __str__(self) -> str:
        return print_term(self)

    @cached_property
    def size(self) -> int:
        """Node count; application strictly increases it."""
        if isinstance(self, App):
            return 1 + self.left.size + self.right.size
        return 1

    @cached_property
    def key(self) -> tuple[int, int, str]:
        """Witness order: smaller first, e before names, then by text."""
        return self.size, 0 if isinstance(self, SelfEvident) else 1, print_term(self)


@dataclass(frozen=True)
class SelfEvident(Term):
    """The constant e, explaining every member of the tautology ground."""
    pass


@dataclass(frozen=True)
class Base(Term):
    name: str

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ValueError(f"invalid term name: {self.name!r}")


@dataclass(frozen=True)
class App(Term):
    left: Term
    right: Term


SELF_EVIDENT = SelfEvident()


def print_term(t: Term) -> str:
    """`e`, the base name, or a fully parenthesised `(s . t)`."""
    match t:
        case SelfEvident():
            return "e"
        case Base(name=name):
            return name
        case App(left=left, right=right):
            return f"({print_term(left)} . {print_term(right)})"
    raise TypeError(f"not a term: {t!r}")


def subterms(t: Term) -> list[Term]:
    if isinstance(t, App):
        return subterms(t.left) + subterms(t.right) + [t]
    return [t]


# ---------------------------------------------------------------------------
# Coverage tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Seed:
    """A user-given explanation fact: term explains formula on worlds."""

    term: Term
    formula: Formula
    worlds: WorldSet


@dataclass(frozen=True)
class CoverageEntry:
    """One value E(witness, φ) of the explanation function; never empty."""

    witness: Term
    worlds: WorldSet

    def __post_init__(self):
        if not self.worlds:
            raise ValueError("coverage entries need a nonempty world-set")


@dataclass(frozen=True)
class ClosureViolation:
    """Entries on φ -> ψ and φ whose overlap no entry on ψ contains."""

    implication: Formula
    implication_witness: Term
    antecedent_witness: Term
    worlds: WorldSet

    def describe(self) -> str:
        return (
            f"condition (I): {print_term(self.implication_witness)} on {print_formula(self.implication)} "
            f"and {print_term(self.antecedent_witness)} on its antecedent overlap at "
            f"{{{' '.join(sorted(self.worlds))}}} with no entry on the consequent covering it"
        )


class CoverageTable:
    """
    Finite representation of an admissible explanation function.

    Per formula, at most one entry per world-set, keeping the smallest
    witness (see Term.key). Entries are stored sorted by witness.

    Attributes:
        universe: The formulas the table is defined over, in a fixed order.
    """

    def __init__(
        self,
        universe: Iterable[Formula],
        entries: Mapping[Formula, Iterable[CoverageEntry]] | None = None,
    ):
        self.universe: tuple[Formula, ...] = tuple(dict.fromkeys(universe))
        self._members = frozenset(self.universe)
        self._entries: dict[Formula, tuple[CoverageEntry, ...]] = {}
        for formula, formula_entries in (entries or {}).items():
            if formula not in self._members:
                raise UniverseError(f"{print_formula(formula)} is outside the table's universe")
            best: dict[WorldSet, CoverageEntry] = {}
            for entry in formula_entries:
                current = best.get(entry.worlds)
                if current is None or entry.witness.key < current.witness.key:
                    best[entry.worlds] = entry
            if best:
                self._entries[formula] = tuple(sorted(best.values(), key=lambda e: e.witness.key))

    def __contains__(self, formula: Formula) -> bool:
        return formula in self._members

    def entries(self, formula: Formula) -> tuple[CoverageEntry, ...]:
        """Entries on formula; empty tuple when nothing explains it."""
        if formula not in self._members:
            raise UniverseError(f"{print_formula(formula)} is outside the table's universe")
        return self._entries.get(formula, ())

    def formulas(self) -> list[Formula]:
        """Universe members with at least one entry, in universe order."""
        return [f for f in self.universe if f in self._entries]

    def __iter__(self) -> Iterator[tuple[Formula, CoverageEntry]]:
        for formula in self.formulas():
            for entry in self._entries[formula]:
                yield formula, entry

    def __len__(self) -> int:
        return sum(len(v) for v in self._entries.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoverageTable):
            return NotImplemented
        return self._members == other._members and self._entries == other._entries

    def __repr__(self) -> str:
        return f"CoverageTable(universe={len(self.universe)} formulas, entries={len(self)})"

    def family(self, formula: Formula) -> frozenset[WorldSet]:
        """The world-sets E(·, formula) takes, witnesses forgotten."""
        return frozenset(entry.worlds for entry in self.entries(formula))

    def families(self) -> dict[Formula, frozenset[WorldSet]]:
        return {f: self.family(f) for f in self.formulas()}

    def restricted(self, restrict) -> "CoverageTable":
        """New table with every entry's worlds replaced by restrict(formula, worlds); empties dropped."""
        entries: dict[Formula, list[CoverageEntry]] = {}
        for formula, entry in self:
            worlds = frozenset(restrict(formula, entry.worlds))
            if worlds:
                entries.setdefault(formula, []).append(CoverageEntry(entry.witness, worlds))
        return CoverageTable(self.universe, entries)

    def closure_violations(self) -> list[ClosureViolation]:
        """Failures of condition (I) at the level of world-set families."""
        violations = []
        for formula in self.universe:
            parts = as_implication(formula)
            if parts is None:
                continue
            antecedent, consequent = parts
            if antecedent not in self._members or consequent not in self._members:
                continue
            targets = self.family(consequent)
            for first in self.entries(formula):
                for second in self.entries(antecedent):
                    overlap = first.worlds & second.worlds
                    if overlap and not any(overlap <= target for target in targets):
                        violations.append(ClosureViolation(formula, first.witness, second.witness, overlap))
        return violations


def covers_uniformly(table: CoverageTable, formula: Formula, cell: Iterable[str]) -> Term | None:
    """
    The smallest witness whose entry on formula contains every world of cell.

    An empty cell is contained in every entry, so it yields the smallest
    witness of any entry, or None when formula has no entries.

    Raises:
        UniverseError: formula outside the table's universe.
    """
    cell = frozenset(cell)
    for entry in table.entries(formula):
        if cell <= entry.worlds:
            return entry.witness
    return None


# ---------------------------------------------------------------------------
# Saturation
# ---------------------------------------------------------------------------

Profile = tuple[WorldSet, ...]


class _ExplanationBase:
    """Seeds and tautology ground indexed over a universe."""

    def __init__(
        self,
        seeds: Sequence[Seed],
        ground: Iterable[Formula],
        worlds: Iterable[str],
        universe: Iterable[Formula],
    ):
        self.worlds = frozenset(worlds)
        self.universe = tuple(dict.fromkeys(universe))
        self.index = {f: k for k, f in enumerate(self.universe)}

        self.rules: list[tuple[int, int, int]] = []
        for k, formula in enumerate(self.universe):
            parts = as_implication(formula)
            if parts and parts[0] in self.index and parts[1] in self.index:
                self.rules.append((k, self.index[parts[0]], self.index[parts[1]]))

        self.base: dict[Term, list[WorldSet]] = {}
        for seed in seeds:
            if seed.formula not in self.index:
                raise UniverseError(f"seed formula {print_formula(seed.formula)} is outside the universe")
            stray = seed.worlds - self.worlds
            if stray:
                raise ModelValidationError(
                    f"seed {print_term(seed.term)} : {print_formula(seed.formula)} names undeclared worlds {sorted(stray)}"
                )
            self._add(seed.term, self.index[seed.formula], seed.worlds)
        for formula in ground:
            if formula not in self.index:
                raise UniverseError(f"tautology ground member {print_formula(formula)} is outside the universe")
            self._add(SELF_EVIDENT, self.index[formula], self.worlds)

        self.empty: Profile = (frozenset(),) * len(self.universe)

    def _add(self, term: Term, position: int, worlds: WorldSet) -> None:
        row = self.base.setdefault(term, [frozenset()] * len(self.universe))
        row[position] = row[position] | worlds

    def base_profile(self, term: Term) -> Profile:
        row = self.base.get(term)
        return tuple(row) if row is not None else self.empty

    def leaves(self) -> list[Term]:
        """e plus every seed witness and its subterms, smallest first."""
        found: dict[Term, None] = {SELF_EVIDENT: None}
        for term in self.base:
            for sub in subterms(term):
                found.setdefault(sub, None)
        return sorted(found, key=lambda t: t.key)


class _ProfileSaturator(_ExplanationBase):

    def __init__(self, *args):
        super().__init__(*args)
        self._profiles: dict[Term, Profile] = {}

    def combine(self, left: Profile, right: Profile) -> list[WorldSet]:
        result = [frozenset()] * len(self.universe)
        for implication, antecedent, consequent in self.rules:
            overlap = left[implication] & right[antecedent]
            if overlap:
                result[consequent] = result[consequent] | overlap
        return result

    def profile(self, term: Term) -> Profile:
        cached = self._profiles.get(term)
        if cached is not None:
            return cached
        own = self.base_profile(term)
        if isinstance(term, App):
            derived = self.combine(self.profile(term.left), self.profile(term.right))
            own = tuple(a | b for a, b in zip(own, derived))
        self._profiles[term] = own
        return own

    def run(self, max_profiles: int) -> dict[Profile, Term]:
        counter = itertools.count()
        heap: list[tuple[tuple, int, Term]] = []

        def push(term: Term) -> None:
            heapq.heappush(heap, (term.key, next(counter), term))

        for leaf in self.leaves():
            push(leaf)

        representative: dict[Profile, Term] = {}
        expanded: list[Profile] = []
        visited: set[Term] = set()
        while heap:
            _, _, term = heapq.heappop(heap)
            if term in visited:
                continue
            visited.add(term)
            profile = self.profile(term)
            if profile in representative:
                continue
            representative[profile] = term
            if profile == self.empty:
                continue
            if len(expanded) >= max_profiles:
                raise ResourceLimitError(f"saturation found more than {max_profiles} distinct term profiles")
            expanded.append(profile)
            for other_profile in expanded:
                other = representative[other_profile]
                push(App(term, other))
                if other is not term:
                    push(App(other, term))

        logger.debug(f"saturation settled with {len(expanded)} profiles over {len(self.universe)} formulas")
        return representative


def _table_from(universe: tuple[Formula, ...], witnesses: Iterable[tuple[Term, Profile]]) -> CoverageTable:
    entries: dict[Formula, list[CoverageEntry]] = {}
    for term, profile in witnesses:
        for formula, worlds in zip(universe, profile):
            if worlds:
                entries.setdefault(formula, []).append(CoverageEntry(term, worlds))
    return CoverageTable(universe, entries)


def saturate(
    seeds: Sequence[Seed],
    ground: Iterable[Formula],
    worlds: Iterable[str],
    universe: Iterable[Formula],
    *,
    max_profiles: int | None = None,
) -> CoverageTable:
    """
    Least coverage table containing the seeds and (e, W) on every ground member,
    closed under application.

    Args:
        seeds: Explanation facts; formulas must lie in universe.
        ground: The tautology ground; members must lie in universe.
        worlds: All worlds of the model.
        universe: Finite formula universe, closed under implication parts.
        max_profiles: Cap on distinct term profiles (settings default).

    Raises:
        UniverseError: a seed or ground formula outside universe.
        ModelValidationError: a seed world outside worlds.
        ResourceLimitError: the profile cap was hit.

    Example:
        seeds (s, p -> q, {w1, w2}) and (t, p, {w2, w3}) give q the entry
        ((s . t), {w2}).
    """
    cap = max_profiles if max_profiles is not None else get_settings().max_profiles
    saturator = _ProfileSaturator(seeds, ground, worlds, universe)
    representative = saturator.run(cap)
    table = _table_from(saturator.universe, ((t, p) for p, t in representative.items()))
    bound = len(saturator.universe) * 2 ** len(saturator.worlds)
    assert len(table) <= bound, f"{len(table)} entries exceed the {bound} world-set bound"
    return table


def brute_force_saturation_oracle(
    seeds: Sequence[Seed],
    ground: Iterable[Formula],
    worlds: Iterable[str],
    universe: Iterable[Formula],
    depth: int,
    *,
    max_terms: int | None = None,
) -> CoverageTable:
    """
    Test oracle: enumerate every term of size <= depth over the seed witnesses
    and e, and compute E(t, φ) by applying condition (I) recursively.

    For depth at or beyond the point where no new world-set appears, the
    world-set families equal those of saturate().

    Raises:
        ResourceLimitError: more than max_terms terms would be enumerated.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    cap = max_terms if max_terms is not None else get_settings().max_oracle_terms
    known = _ExplanationBase(seeds, ground, worlds, universe)

    by_size: dict[int, list[Term]] = {}
    for leaf in known.leaves():
        if leaf.size <= depth:
            by_size.setdefault(leaf.size, []).append(leaf)
    terms: dict[Term, None] = {t: None for group in by_size.values() for t in group}
    for size in range(3, depth + 1):
        for left_size in range(1, size - 1):
            for left in by_size.get(left_size, []):
                for right in by_size.get(size - 1 - left_size, []):
                    term = App(left, right)
                    if term not in terms:
                        terms[term] = None
                        by_size.setdefault(size, []).append(term)
                        if len(terms) > cap:
                            raise ResourceLimitError(f"oracle would enumerate more than {cap} terms")

    implications_into: dict[int, list[tuple[int, int]]] = {}
    for implication, antecedent, consequent in known.rules:
        implications_into.setdefault(consequent, []).append((implication, antecedent))

    memo: dict[tuple[Term, int], WorldSet] = {}

    def explained(term: Term, position: int) -> WorldSet:
        cached = memo.get((term, position))
        if cached is not None:
            return cached
        worlds_here = known.base_profile(term)[position]
        if isinstance(term, App):
            for implication, antecedent in implications_into.get(position, []):
                worlds_here = worlds_here | (
                    explained(term.left, implication) & explained(term.right, antecedent)
                )
        memo[(term, position)] = worlds_here
        return worlds_here

    witnesses = (
        (term, tuple(explained(term, k) for k in range(len(known.universe))))
        for term in terms
    )
    return _table_from(known.universe, witnesses)
