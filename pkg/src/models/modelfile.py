"""Reader and canonical printer for the line-oriented model file format.

    model
      worlds: w1 w2 w3
      agents: i j
      partition i: {w1 w2} {w3}
      edges j: w2-w3
      val p: w1 w2 w3
      lambda: (p -> p)
      seed t : p @ w1
      factive
    end

`#` starts a comment. A `model jl` header switches seed lines to the
per-agent form `seed[i] t : p @ w1`; those files are read by
semantics.jl.load_jl_model.
"""

import logging
import re
from dataclasses import dataclass, field

from ..errors import FormulaSyntaxError, ModelFormatError
from ..logic.grammar import parse_formula, parse_term
from ..logic.syntax import RESERVED_PROP, Agent, Formula, is_identifier, print_formula
from ..logic.terms import SELF_EVIDENT, Seed, Term, print_term
from .model import Model, partition_from_edges

logger = logging.getLogger(__name__)

_DIRECTIVE = re.compile(r"^(worlds|agents|partition|edges|val|lambda|seed\[[^\]]*\]|seed)(?![A-Za-z0-9_])\s*(.*)$")
_BLOCK = re.compile(r"\{([^{}]*)\}")
_BLOCKS_LINE = re.compile(r"^(\s*\{[^{}]*\})*\s*$")


@dataclass
class ModelSource:
    """
    The directives of one model file, names resolved but nothing saturated.

    Attributes:
        jl: True for a `model jl` file.
        seeds: (agent or None, term, formula, worlds) per seed line.
    """

    jl: bool = False
    worlds: list[str] = field(default_factory=list)
    agents: list[Agent] = field(default_factory=list)
    partitions: dict[Agent, list[frozenset[str]]] = field(default_factory=dict)
    valuation: dict[str, set[str]] = field(default_factory=dict)
    ground: list[Formula] = field(default_factory=list)
    seeds: list[tuple[Agent | None, Term, Formula, frozenset[str]]] = field(default_factory=list)
    factive: bool = False


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _formula(text: str, number: int) -> Formula:
    try:
        return parse_formula(text)
    except FormulaSyntaxError as exc:
        raise ModelFormatError(f"bad formula {text.strip()!r}: {exc}", number) from None


class _Reader:

    def __init__(self, text: str):
        self.source = ModelSource()
        self.lines = text.splitlines()

    def world_list(self, text: str, number: int) -> list[str]:
        names = text.split()
        for name in names:
            if name not in self.source.worlds:
                raise ModelFormatError(f"world {name!r} used before declaration", number)
        return names

    def agent(self, text: str, number: int) -> Agent:
        name = text.strip()
        agent = next((a for a in self.source.agents if a.name == name), None)
        if agent is None:
            raise ModelFormatError(f"agent {name!r} used before declaration", number)
        return agent

    def declare(self, names: list[str], kind: str, number: int) -> None:
        for name in names:
            if not is_identifier(name):
                raise ModelFormatError(f"invalid {kind} name {name!r}", number)

    def read(self) -> ModelSource:
        body: list[tuple[int, str]] = []
        header = end = None
        for number, raw in enumerate(self.lines, start=1):
            line = _strip(raw)
            if not line:
                continue
            if header is None:
                if line not in ("model", "model jl"):
                    raise ModelFormatError(f"expected 'model' header, got {line!r}", number)
                header = line
                continue
            if end is not None:
                raise ModelFormatError(f"text after 'end': {line!r}", number)
            if line == "end":
                end = number
                continue
            body.append((number, line))
        if header is None:
            raise ModelFormatError("empty model file")
        if end is None:
            raise ModelFormatError("missing 'end'", len(self.lines))

        self.source.jl = header == "model jl"
        for number, line in body:
            self.directive(line, number)
        return self.source

    def directive(self, line: str, number: int) -> None:
        src = self.source
        if line == "factive":
            if src.jl:
                raise ModelFormatError("'factive' is not a JL model directive", number)
            src.factive = True
            return
        match = _DIRECTIVE.match(line)
        if match is None:
            raise ModelFormatError(f"unknown directive {line!r}", number)
        keyword, rest = match.groups()

        if keyword in ("worlds", "agents"):
            if not rest.startswith(":"):
                raise ModelFormatError(f"expected ':' after {keyword}", number)
            names = rest[1:].split()
            self.declare(names, keyword[:-1], number)
            if keyword == "worlds":
                src.worlds += names
            else:
                src.agents += [Agent(n) for n in names]
            return

        if keyword in ("partition", "edges", "val"):
            head, sep, tail = rest.partition(":")
            if not sep:
                raise ModelFormatError(f"expected ':' in {keyword} line", number)
            if keyword == "val":
                prop = head.strip()
                if not is_identifier(prop):
                    raise ModelFormatError(f"invalid proposition name {prop!r}", number)
                if prop == RESERVED_PROP:
                    raise ModelFormatError("'p0' is reserved and cannot be given a valuation", number)
                src.valuation.setdefault(prop, set()).update(self.world_list(tail, number))
                return
            agent = self.agent(head, number)
            if agent in src.partitions:
                raise ModelFormatError(f"agent {agent} already has a partition", number)
            if keyword == "partition":
                if not _BLOCKS_LINE.match(tail):
                    raise ModelFormatError(f"partition blocks must be written {{w1 w2}} {{w3}}", number)
                src.partitions[agent] = [frozenset(self.world_list(b, number)) for b in _BLOCK.findall(tail)]
            else:
                pairs = []
                for edge in tail.split():
                    a, dash, b = edge.partition("-")
                    if not dash:
                        raise ModelFormatError(f"edge {edge!r} must be written w1-w2", number)
                    self.world_list(f"{a} {b}", number)
                    pairs.append((a, b))
                src.partitions[agent] = list(partition_from_edges(src.worlds, pairs))
                logger.warning(
                    f"line {number}: edges for {agent} closed into an equivalence relation "
                    f"with blocks {[sorted(b) for b in src.partitions[agent]]}"
                )
            return

        if keyword == "lambda":
            if not rest.startswith(":"):
                raise ModelFormatError("expected ':' after lambda", number)
            src.ground.append(_formula(rest[1:], number))
            return

        # seed lines: "seed t : φ @ ws" or "seed[i] t : φ @ ws"
        agent = None
        if keyword != "seed":
            agent = self.agent(keyword[5:-1], number)
        if src.jl and agent is None:
            raise ModelFormatError("JL model seeds need an agent: seed[i] t : φ @ ws", number)
        if not src.jl and agent is not None:
            raise ModelFormatError("per-agent seeds belong in a 'model jl' file", number)
        term_text, colon, remainder = rest.partition(":")
        formula_text, at, worlds_text = remainder.rpartition("@")
        if not colon or not at:
            raise ModelFormatError("seed lines must read 'seed t : φ @ w1 w2'", number)
        try:
            term = parse_term(term_text)
        except FormulaSyntaxError as exc:
            raise ModelFormatError(f"bad term {term_text.strip()!r}: {exc}", number) from None
        worlds = frozenset(self.world_list(worlds_text, number))
        if not worlds:
            raise ModelFormatError("a seed needs at least one world", number)
        src.seeds.append((agent, term, _formula(formula_text, number), worlds))


def read_model_source(text: str) -> ModelSource:
    """
    Parse model file text into its directives.

    Raises:
        ModelFormatError: malformed text, with the offending line number.
    """
    return _Reader(text).read()


def load_model(text: str) -> Model:
    """
    Parse, validate and saturate an ELKy model file.

    Raises:
        ModelFormatError: malformed text or a `model jl` file.
        ModelValidationError: bad partitions, a non-tautology in lambda, or
            an undeclared name inside a formula.
    """
    source = read_model_source(text)
    if source.jl:
        raise ModelFormatError("this is a JL model file; load it with load_jl_model", 1)
    return Model.build(
        source.worlds,
        source.agents,
        source.partitions,
        source.valuation,
        source.ground,
        [Seed(term, formula, worlds) for _, term, formula, worlds in source.seeds],
        factive=source.factive,
    )


def frame_lines(m, header: str) -> list[str]:
    """Header and frame directives shared by ELKy and JL files."""
    lines = [header, f"  worlds: {' '.join(m.worlds)}", f"  agents: {' '.join(a.name for a in m.agents)}"]
    for agent in m.agents:
        blocks = " ".join("{" + " ".join(m.sorted_worlds(b)) + "}" for b in m.partitions[agent])
        lines.append(f"  partition {agent}: {blocks}")
    for prop in sorted(m.valuation):
        lines.append(f"  val {prop}: {' '.join(m.sorted_worlds(m.valuation[prop]))}")
    for formula in m.ground:
        lines.append(f"  lambda: {print_formula(formula)}")
    return lines


def seed_line(m, term: Term, formula: Formula, worlds, agent: Agent | None = None) -> str:
    keyword = "seed" if agent is None else f"seed[{agent}]"
    return f"{keyword} {print_term(term)} : {print_formula(formula)} @ {' '.join(m.sorted_worlds(worlds))}"


def print_model(m: Model) -> str:
    """
    Canonical model file text; load_model(print_model(m)) == m for models
    without extra queries.
    """
    lines = frame_lines(m, "model")
    lines += [f"  {seed_line(m, s.term, s.formula, s.worlds)}" for s in m.seeds]
    if m.factive:
        lines.append("  factive")
    lines.append("end")
    return "\n".join(lines) + "\n"


def print_coverage(m: Model) -> str:
    """
    The saturated coverage table as seed lines; entries that are neither a
    seed nor an (e, λ, W) ground entry are flagged `# derived`.
    """
    given = {(s.term, s.formula, s.worlds) for s in m.seeds}
    given |= {(SELF_EVIDENT, f, m.world_set) for f in m.ground}
    lines = []
    for formula, entry in m.coverage:
        line = seed_line(m, entry.witness, formula, entry.worlds)
        if (entry.witness, formula, entry.worlds) not in given:
            line += "  # derived"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")
