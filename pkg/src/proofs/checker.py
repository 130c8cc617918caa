"""Line-by-line checking of Hilbert-style proofs."""

import logging
from dataclasses import dataclass, field

from ..errors import ResourceLimitError, UnknownSchemaError
from ..logic.syntax import (
    Agent,
    Formula,
    K,
    Ky,
    as_implication,
    conjunction_of,
    implies,
    is_propositional_tautology,
    print_formula,
)
from .systems import SystemId, match_axiom

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Axiom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class MP:
    """Modus ponens citing the two premises, in either order."""

    first: int
    second: int

    def __str__(self) -> str:
        return f"MP {self.first} {self.second}"


@dataclass(frozen=True)
class NECK:
    """From a proved line φ, K[agent] φ; the agent is read off the line when omitted."""

    line: int
    agent: Agent | None = None

    def __str__(self) -> str:
        return f"NECK {self.line}" + (f" {self.agent}" if self.agent else "")


@dataclass(frozen=True)
class NECKY:
    """Ky[agent] λ for a member λ of the tautology ground."""

    agent: Agent | None = None

    def __str__(self) -> str:
        return "NECKY" + (f" {self.agent}" if self.agent else "")


@dataclass(frozen=True)
class PL:
    """A propositional consequence of the cited lines."""

    lines: tuple[int, ...]

    def __str__(self) -> str:
        return "PL " + " ".join(str(n) for n in self.lines)


Justification = Axiom | MP | NECK | NECKY | PL


def cited(justification: Justification) -> tuple[int, ...]:
    match justification:
        case MP(first=first, second=second):
            return first, second
        case NECK(line=line):
            return (line,)
        case PL(lines=lines):
            return lines
    return ()


@dataclass(frozen=True)
class ProofLine:
    index: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    """
    A numbered derivation in one system.

    Attributes:
        system: The system and its tautology ground.
        lines: Lines in order; indices should run 1..n.
    """

    system: SystemId
    lines: tuple[ProofLine, ...]

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None


@dataclass(frozen=True)
class LineResult:
    index: int
    ok: bool
    reason: str = ""


@dataclass(frozen=True)
class ProofReport:
    """
    Outcome of check_proof.

    Attributes:
        accepted: True iff every line is justified.
        results: One entry per line, in order.
    """

    accepted: bool
    results: tuple[LineResult, ...] = field(default_factory=tuple)

    @property
    def failures(self) -> list[LineResult]:
        return [r for r in self.results if not r.ok]

    def lines(self) -> list[str]:
        """Human-readable report, one line per failure plus a verdict."""
        out = [f"line {r.index}: {r.reason}" for r in self.failures]
        count = len(self.failures)
        out.append("accepted" if self.accepted else f"rejected ({count} failing line{'' if count == 1 else 's'})")
        return out


def _check_line(proof: Proof, line: ProofLine, position: int, proved: dict[int, Formula]) -> str | None:
    """None when line is justified, else the reason it is not."""
    if line.index != position:
        return f"index gap: expected line {position}, found {line.index}"
    for n in cited(line.justification):
        if n < 1 or n >= line.index:
            return f"cites line {n}, which does not precede line {line.index}"
        if n not in proved:
            return f"cites line {n}, which does not exist"

    f = line.formula
    match line.justification:
        case Axiom(name=name):
            try:
                substitution = match_axiom(proof.system, name, f)
            except UnknownSchemaError as exc:
                return str(exc)
            except ResourceLimitError as exc:
                return f"tautology test gave up: {exc}"
            return None if substitution is not None else f"not an instance of {name}"
        case MP(first=first, second=second):
            a, b = proved[first], proved[second]
            if b == implies(a, f) or a == implies(b, f):
                return None
            return f"lines {first} and {second} do not yield {print_formula(f)} by modus ponens"
        case NECK(line=n, agent=agent):
            if isinstance(f, K) and f.body == proved[n] and (agent is None or f.agent == agent):
                return None
            return f"not K[{agent or 'i'}] of line {n}"
        case NECKY(agent=agent):
            if not isinstance(f, Ky) or (agent is not None and f.agent != agent):
                return f"NECKY needs a formula Ky[{agent or 'i'}] λ"
            if f.body not in proof.system.ground:
                return f"{print_formula(f.body)} is not in the tautology ground"
            return None
        case PL(lines=lines):
            premises = conjunction_of([proved[n] for n in lines])
            try:
                ok = is_propositional_tautology(implies(premises, f))
            except ResourceLimitError as exc:
                return f"tautology test gave up: {exc}"
            return None if ok else f"does not follow propositionally from lines {', '.join(map(str, lines))}"
    return f"unknown justification {line.justification!r}"


def check_proof(proof: Proof) -> ProofReport:
    """
    Check every line of proof; the report lists why each bad line fails.

    Lines are checked independently: a line citing a failed line is judged
    on the cited formula as written.
    """
    proved: dict[int, Formula] = {}
    results = []
    for position, line in enumerate(proof.lines, start=1):
        reason = _check_line(proof, line, position, proved)
        results.append(LineResult(line.index, reason is None, reason or ""))
        proved.setdefault(line.index, line.formula)
    report = ProofReport(all(r.ok for r in results) and bool(results), tuple(results))
    logger.debug(f"{proof.system.name} proof of {len(proof.lines)} lines: accepted={report.accepted}")
    return report


def expand_propositional_steps(proof: Proof) -> Proof:
    """
    The same derivation with every PL step replaced by a TAUT line and a
    chain of modus ponens steps.

    A step concluding f from a1 .. an becomes the axiom line
    (a1 -> (a2 -> ... (an -> f))) followed by n MP lines discharging the
    premises in order.
    """
    renumber: dict[int, int] = {}
    formulas = {line.index: line.formula for line in proof.lines}
    out: list[ProofLine] = []

    def emit(formula: Formula, justification: Justification) -> int:
        out.append(ProofLine(len(out) + 1, formula, justification))
        return len(out)

    for line in proof.lines:
        match line.justification:
            case PL(lines=premises):
                chain = line.formula
                for n in reversed(premises):
                    chain = implies(formulas[n], chain)
                current = emit(chain, Axiom("TAUT"))
                for n in premises:
                    chain = as_implication(chain)[1]
                    current = emit(chain, MP(renumber[n], current))
                renumber[line.index] = current
            case MP(first=first, second=second):
                renumber[line.index] = emit(line.formula, MP(renumber[first], renumber[second]))
            case NECK(line=n, agent=agent):
                renumber[line.index] = emit(line.formula, NECK(renumber[n], agent))
            case justification:
                renumber[line.index] = emit(line.formula, justification)
    return Proof(proof.system, tuple(out))
