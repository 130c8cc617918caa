"""Derivations shipped with whylog: 5YK in SKY and the introspection theorems of SKYI."""

from ..logic.grammar import parse_formula
from ..logic.syntax import Formula
from .checker import MP, NECK, PL, Axiom, Justification, Proof, ProofLine, check_proof
from .systems import SystemId

DEFAULT_GROUND = ("(p -> p)",)


def _proof(system: str, steps: list[tuple[str, Justification]], ground: tuple[str, ...]) -> Proof:
    lines = tuple(
        ProofLine(n, parse_formula(text), justification)
        for n, (text, justification) in enumerate(steps, start=1)
    )
    return Proof(SystemId(system, tuple(parse_formula(g) for g in ground)), lines)


def five_yk_proof(ground: tuple[str, ...] = DEFAULT_GROUND) -> Proof:
    """
    ~Ky[i] p -> K[i] ~Ky[i] p in SKY.

    Contrapositions and chained implications are PL steps; the DISTK
    instance used by modus ponens has a line of its own.
    """
    steps = [
        ("(K[i] Ky[i] p -> Ky[i] p)", Axiom("T")),
        ("(~Ky[i] p -> ~K[i] Ky[i] p)", PL((1,))),
        ("(~K[i] Ky[i] p -> K[i] ~K[i] Ky[i] p)", Axiom("5")),
        ("(Ky[i] p -> K[i] Ky[i] p)", Axiom("4YK")),
        ("(~K[i] Ky[i] p -> ~Ky[i] p)", PL((4,))),
        ("K[i] (~K[i] Ky[i] p -> ~Ky[i] p)", NECK(5)),
        (
            "(K[i] (~K[i] Ky[i] p -> ~Ky[i] p) -> (K[i] ~K[i] Ky[i] p -> K[i] ~Ky[i] p))",
            Axiom("DISTK"),
        ),
        ("(K[i] ~K[i] Ky[i] p -> K[i] ~Ky[i] p)", MP(6, 7)),
        ("(~Ky[i] p -> K[i] ~K[i] Ky[i] p)", PL((2, 3))),
        ("(~Ky[i] p -> K[i] ~Ky[i] p)", PL((8, 9))),
    ]
    return _proof("SKY", steps, ground)


# theorem -> (introspection axiom, its instance, the PRES instance, the goal), phi = p
_SKYI_ROUTES = {
    "4": ("4KY", "(K[i] p -> Ky[i] K[i] p)", "(Ky[i] K[i] p -> K[i] K[i] p)", "(K[i] p -> K[i] K[i] p)"),
    "5": ("5KY", "(~K[i] p -> Ky[i] ~K[i] p)", "(Ky[i] ~K[i] p -> K[i] ~K[i] p)", "(~K[i] p -> K[i] ~K[i] p)"),
    "4YK": ("4Y", "(Ky[i] p -> Ky[i] Ky[i] p)", "(Ky[i] Ky[i] p -> K[i] Ky[i] p)", "(Ky[i] p -> K[i] Ky[i] p)"),
    "5YK": ("5Y", "(~Ky[i] p -> Ky[i] ~Ky[i] p)", "(Ky[i] ~Ky[i] p -> K[i] ~Ky[i] p)", "(~Ky[i] p -> K[i] ~Ky[i] p)"),
}

SKYI_THEOREMS = tuple(_SKYI_ROUTES)


def derive_skyi_theorems(ground: tuple[str, ...] = DEFAULT_GROUND) -> list[Proof]:
    """
    SKYI proofs of 4, 5, 4YK and 5YK, in that order, each checked before it is returned.

    Every proof takes the matching Ky-introspection axiom, weakens its Ky to
    K with PRES, and chains the two implications.
    """
    proofs = []
    for name, (axiom, first, second, goal) in _SKYI_ROUTES.items():
        proof = _proof(
            "SKYI",
            [(first, Axiom(axiom)), (second, Axiom("PRES")), (goal, PL((1, 2)))],
            ground,
        )
        report = check_proof(proof)
        assert report.accepted, f"derivation of {name} rejected: {report.lines()}"
        proofs.append(proof)
    return proofs


def theorem_statement(name: str) -> Formula:
    """The conclusion of the shipped SKYI derivation of name."""
    return parse_formula(_SKYI_ROUTES[name][3])
