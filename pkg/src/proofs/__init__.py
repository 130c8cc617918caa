"""Hilbert-style proofs in SKY and SKYI: schemas, checking, shipped theorems, soundness fuzzing."""

from .checker import (
    MP,
    NECK,
    NECKY,
    PL,
    Axiom,
    LineResult,
    Proof,
    ProofLine,
    ProofReport,
    check_proof,
    expand_propositional_steps,
)
from .prooffile import load_proof, parse_proof_line, print_proof
from .soundness import Counterexample, FuzzReport, run_soundness_fuzz
from .systems import SCHEMAS, SYSTEM_AXIOMS, Substitution, SystemId, match_axiom
from .theorems import SKYI_THEOREMS, derive_skyi_theorems, five_yk_proof

__all__ = [
    "Axiom",
    "Counterexample",
    "FuzzReport",
    "LineResult",
    "MP",
    "NECK",
    "NECKY",
    "PL",
    "Proof",
    "ProofLine",
    "ProofReport",
    "SCHEMAS",
    "SKYI_THEOREMS",
    "SYSTEM_AXIOMS",
    "Substitution",
    "SystemId",
    "check_proof",
    "derive_skyi_theorems",
    "expand_propositional_steps",
    "five_yk_proof",
    "load_proof",
    "match_axiom",
    "parse_proof_line",
    "print_proof",
    "run_soundness_fuzz",
]
