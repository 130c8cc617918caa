"""ELKy formulas: AST, canonical printer, subformulas, modal atomisation, tautology test.

The core language has exactly the five productions p, ~φ, (φ & ψ), K[i] φ and
Ky[i] φ, plus the conditional Ky[i](ψ, φ). Everything else the parser accepts
(top, bot, ->, |) is sugar over these nodes.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ..config import get_settings
from ..errors import ResourceLimitError

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
RESERVED_WORDS = frozenset({"K", "Ky", "top", "bot", "e"})

# Proposition behind top := ~(p0 & ~p0); never given a valuation.
RESERVED_PROP = "p0"


def is_identifier(name: str) -> bool:
    """True for names usable as propositions, agents, worlds and base terms."""
    return bool(IDENTIFIER.match(name)) and name not in RESERVED_WORDS


@dataclass(frozen=True, order=True)
class Agent:
    """An agent index i; equality is by name."""

    name: str

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ValueError(f"invalid agent name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Formula:
    """Base class of the ELKy AST. Instances are immutable and hashable."""

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Prop(Formula):
    name: str

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ValueError(f"invalid proposition name: {self.name!r}")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class K(Formula):
    agent: Agent
    body: Formula


@dataclass(frozen=True)
class Ky(Formula):
    agent: Agent
    body: Formula


@dataclass(frozen=True)
class KyCond(Formula):
    """Ky[i](condition, body): i knows why body on the condition-worlds of her class."""

    agent: Agent
    condition: Formula
    body: Formula


MODAL_TYPES = (K, Ky, KyCond)

TOP: Formula = Not(And(Prop(RESERVED_PROP), Not(Prop(RESERVED_PROP))))
BOT: Formula = Not(TOP)


def implies(antecedent: Formula, consequent: Formula) -> Formula:
    """φ -> ψ in core form: ~(φ & ~ψ)."""
    return Not(And(antecedent, Not(consequent)))


def disjunction(left: Formula, right: Formula) -> Formula:
    """φ | ψ in core form: ~(~φ & ~ψ)."""
    return Not(And(Not(left), Not(right)))


def possible(agent: Agent, body: Formula) -> Formula:
    """The dual of K: ~K[i] ~φ."""
    return Not(K(agent, Not(body)))


def conjunction_of(formulas: list[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is top."""
    if not formulas:
        return TOP
    result = formulas[0]
    for f in formulas[1:]:
        result = And(result, f)
    return result


def as_implication(f: Formula) -> tuple[Formula, Formula] | None:
    """Split ~(φ & ~ψ) into (φ, ψ); None for every other shape."""
    if isinstance(f, Not) and isinstance(f.body, And) and isinstance(f.body.right, Not):
        return f.body.left, f.body.right.body
    return None


def children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case Prop():
            return ()
        case Not(body=body) | K(body=body) | Ky(body=body):
            return (body,)
        case And(left=left, right=right):
            return (left, right)
        case KyCond(condition=condition, body=body):
            return (condition, body)
    raise TypeError(f"not a formula: {f!r}")


def agents_of(f: Formula) -> list[Agent]:
    """Agents mentioned in f, in first-occurrence order."""
    seen: dict[Agent, None] = {}
    for g in _preorder(f):
        if isinstance(g, MODAL_TYPES):
            seen.setdefault(g.agent, None)
    return list(seen)


def props_of(f: Formula) -> list[str]:
    """Proposition names in f, in first-occurrence order."""
    seen: dict[str, None] = {}
    for g in _preorder(f):
        if isinstance(g, Prop):
            seen.setdefault(g.name, None)
    return list(seen)


def _preorder(f: Formula) -> Iterator[Formula]:
    yield f
    for child in children(f):
        yield from _preorder(child)


def depth(f: Formula) -> int:
    return 1 + max((depth(c) for c in children(f)), default=0)


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

def print_formula(f: Formula) -> str:
    """
    Canonical text of f.

    Binary nodes are always parenthesised and prefix operators never are, so
    parse_formula(print_formula(f)) == f. Implication shapes print as ->,
    and the exact core forms of top and bot print as the keywords.

    Examples:
        >>> print_formula(implies(Prop("p"), Prop("q")))
        '(p -> q)'
        >>> print_formula(K(Agent("i"), Ky(Agent("j"), Prop("p"))))
        'K[i] Ky[j] p'
    """
    if f == TOP:
        return "top"
    if f == BOT:
        return "bot"
    implication = as_implication(f)
    if implication is not None:
        antecedent, consequent = implication
        return f"({print_formula(antecedent)} -> {print_formula(consequent)})"
    match f:
        case Prop(name=name):
            return name
        case Not(body=body):
            return f"~{print_formula(body)}"
        case And(left=left, right=right):
            return f"({print_formula(left)} & {print_formula(right)})"
        case K(agent=agent, body=body):
            return f"K[{agent}] {print_formula(body)}"
        case Ky(agent=agent, body=body):
            return f"Ky[{agent}] {print_formula(body)}"
        case KyCond(agent=agent, condition=condition, body=body):
            return f"Ky[{agent}]({print_formula(condition)}, {print_formula(body)})"
    raise TypeError(f"not a formula: {f!r}")


def formula_key(f: Formula) -> tuple[int, str]:
    """Deterministic sort key: smaller formulas first, then by text."""
    return depth(f), print_formula(f)


# ---------------------------------------------------------------------------
# Subformulas and modal atomisation
# ---------------------------------------------------------------------------

def subformulas(f: Formula) -> list[Formula]:
    """All subformulas of f including f, post-order, first occurrence kept."""
    seen: dict[Formula, None] = {}

    def visit(g: Formula) -> None:
        for child in children(g):
            visit(child)
        seen.setdefault(g, None)

    visit(f)
    return list(seen)


def subformula_closure(formulas) -> list[Formula]:
    """Union of subformulas of every formula given, in first-occurrence order."""
    seen: dict[Formula, None] = {}
    for f in formulas:
        for g in subformulas(f):
            seen.setdefault(g, None)
    return list(seen)


@dataclass(frozen=True)
class ModalAtomization:
    """
    A formula split into maximal modal atoms and a propositional skeleton.

    The skeleton is built from Not/And over placeholder propositions a1..an,
    where ak stands for atoms[k-1].

    Attributes:
        atoms: Maximal subformulas whose top connective is K, Ky, KyCond or a
            proposition, in first-occurrence order.
        skeleton: Formula over the placeholders only.
    """

    atoms: tuple[Formula, ...]
    skeleton: Formula
    placeholders: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "placeholders", tuple(f"a{k}" for k in range(1, len(self.atoms) + 1)))

    def reconstruct(self) -> Formula:
        """Substitute every placeholder by its atom."""
        mapping = dict(zip(self.placeholders, self.atoms))

        def fill(g: Formula) -> Formula:
            match g:
                case Prop(name=name):
                    return mapping[name]
                case Not(body=body):
                    return Not(fill(body))
                case And(left=left, right=right):
                    return And(fill(left), fill(right))
            raise TypeError(f"skeleton contains a non-propositional node: {g!r}")

        return fill(self.skeleton)


def modal_atomize(f: Formula) -> ModalAtomization:
    """
    Replace maximal modal subformulas and propositions by placeholders.

    Examples:
        (K[i] p -> p)   gives atoms (K[i] p, p) and skeleton (a1 -> a2)
        K[i] (p -> q)   gives atoms (K[i] (p -> q),) and skeleton a1
    """
    index: dict[Formula, int] = {}

    def walk(g: Formula) -> Formula:
        match g:
            case Not(body=body):
                return Not(walk(body))
            case And(left=left, right=right):
                return And(walk(left), walk(right))
        if g not in index:
            index[g] = len(index) + 1
        return Prop(f"a{index[g]}")

    skeleton = walk(f)
    return ModalAtomization(atoms=tuple(index), skeleton=skeleton)


def _truth_columns(skeleton: Formula, columns: dict[str, np.ndarray]) -> np.ndarray:
    match skeleton:
        case Prop(name=name):
            return columns[name]
        case Not(body=body):
            return ~_truth_columns(body, columns)
        case And(left=left, right=right):
            return _truth_columns(left, columns) & _truth_columns(right, columns)
    raise TypeError(f"skeleton contains a non-propositional node: {skeleton!r}")


def is_propositional_tautology(f: Formula, max_atoms: int | None = None) -> bool:
    """
    True iff the skeleton of modal_atomize(f) holds under every assignment.

    All 2^n rows are evaluated at once as numpy boolean columns.

    Raises:
        ResourceLimitError: more atoms than max_atoms (settings default 20).
    """
    limit = max_atoms if max_atoms is not None else get_settings().max_tautology_atoms
    atomization = modal_atomize(f)
    n = len(atomization.atoms)
    if n > limit:
        raise ResourceLimitError(f"tautology test needs {n} atoms, cap is {limit}")

    rows = np.arange(2 ** n, dtype=np.int64)
    columns = {
        name: ((rows >> k) & 1).astype(bool)
        for k, name in enumerate(atomization.placeholders)
    }
    result = bool(np.all(_truth_columns(atomization.skeleton, columns)))
    logger.debug(f"tautology check over {n} atoms: {result}")
    return result
