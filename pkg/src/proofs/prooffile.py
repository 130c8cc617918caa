"""Reader and printer for proof files.

    proof SKY
      lambda: (p -> p)
      1. (K[i] Ky[i] p -> Ky[i] p)      T
      2. (~Ky[i] p -> ~K[i] Ky[i] p)    PL 1
    end

Justifications: an axiom name, `MP i j`, `NECK i [agent]`, `NECKY [agent]`
or `PL i [j ...]`.
"""

import re

from ..errors import FormulaSyntaxError, ProofFormatError
from ..logic.grammar import parse_formula
from ..logic.syntax import Agent, Formula, is_identifier, print_formula
from .checker import MP, NECK, NECKY, PL, Axiom, Justification, Proof, ProofLine
from .systems import SYSTEM_AXIOMS, SystemId

_NUMBERED = re.compile(r"^(\d+)\.\s+(.*)$")
_AXIOM_NAME = re.compile(r"^[A-Za-z0-9]+$")


def parse_justification(tokens: list[str]) -> Justification | None:
    """The justification spelled by tokens, or None if they spell none."""
    if not tokens:
        return None
    head, args = tokens[0], tokens[1:]
    numbers = all(a.isdigit() for a in args)
    match head:
        case "MP":
            return MP(int(args[0]), int(args[1])) if len(args) == 2 and numbers else None
        case "PL":
            return PL(tuple(int(a) for a in args)) if args and numbers else None
        case "NECK":
            if len(args) == 1 and numbers:
                return NECK(int(args[0]))
            if len(args) == 2 and args[0].isdigit() and is_identifier(args[1]):
                return NECK(int(args[0]), Agent(args[1]))
            return None
        case "NECKY":
            if not args:
                return NECKY()
            return NECKY(Agent(args[0])) if len(args) == 1 and is_identifier(args[0]) else None
    if not args and _AXIOM_NAME.match(head):
        return Axiom(head)
    return None


def parse_proof_line(text: str, number: int | None = None) -> ProofLine:
    """
    Split `n. formula justification` at the shortest trailing run of tokens
    that reads as a justification while the rest reads as a formula.

    Raises:
        ProofFormatError: no such split exists.
    """
    match = _NUMBERED.match(text.strip())
    if match is None:
        raise ProofFormatError(f"expected a numbered proof line, got {text.strip()!r}", number)
    index, rest = int(match.group(1)), match.group(2)
    tokens = list(re.finditer(r"\S+", rest))
    last_error = None
    for k in range(1, len(tokens)):
        justification = parse_justification([t.group() for t in tokens[-k:]])
        if justification is None:
            continue
        try:
            formula = parse_formula(rest[: tokens[-k].start()])
        except FormulaSyntaxError as exc:
            last_error = exc
            continue
        return ProofLine(index, formula, justification)
    detail = f": {last_error}" if last_error else ""
    raise ProofFormatError(f"cannot split line {index} into formula and justification{detail}", number)


def load_proof(text: str) -> Proof:
    """
    Parse proof file text.

    Raises:
        ProofFormatError: malformed text, with the line number.
        ModelValidationError: a lambda member that is not a tautology.
    """
    system_name = None
    ground: list[Formula] = []
    lines: list[ProofLine] = []
    ended = False
    last = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        last = number
        if not line:
            continue
        if ended:
            raise ProofFormatError(f"text after 'end': {line!r}", number)
        if system_name is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "proof" or parts[1] not in SYSTEM_AXIOMS:
                raise ProofFormatError(f"expected 'proof SKY' or 'proof SKYI', got {line!r}", number)
            system_name = parts[1]
        elif line == "end":
            ended = True
        elif line.startswith("lambda:"):
            if lines:
                raise ProofFormatError("lambda lines must precede the numbered lines", number)
            try:
                ground.append(parse_formula(line[len("lambda:"):]))
            except FormulaSyntaxError as exc:
                raise ProofFormatError(f"bad lambda formula: {exc}", number) from None
        else:
            lines.append(parse_proof_line(line, number))
    if system_name is None:
        raise ProofFormatError("empty proof file")
    if not ended:
        raise ProofFormatError("missing 'end'", last)
    return Proof(SystemId(system_name, tuple(dict.fromkeys(ground))), tuple(lines))


def print_proof(proof: Proof) -> str:
    """Proof file text with the justification column aligned."""
    out = [f"proof {proof.system.name}"]
    out += [f"  lambda: {print_formula(f)}" for f in proof.system.ground]
    heads = [f"{line.index}. {print_formula(line.formula)}" for line in proof.lines]
    width = max((len(h) for h in heads), default=0)
    for head, line in zip(heads, proof.lines):
        out.append(f"  {head.ljust(width)}  {line.justification}")
    out.append("end")
    return "\n".join(out) + "\n"
