from dataclasses import replace

import pytest

from src.errors import ModelValidationError, ProofFormatError, UnknownSchemaError
from src.logic.grammar import parse_formula
from src.logic.syntax import Agent, Prop
from src.proofs.checker import MP, NECK, NECKY, PL, Axiom, Proof, ProofLine, check_proof, expand_propositional_steps
from src.proofs.prooffile import load_proof, parse_proof_line, print_proof
from src.proofs.soundness import run_soundness_fuzz
from src.proofs.systems import SYSTEM_AXIOMS, SystemId, match_axiom, match_schema
from src.proofs.theorems import SKYI_THEOREMS, derive_skyi_theorems, five_yk_proof, theorem_statement

from .support import fixture_text

i, j = Agent("i"), Agent("j")
p = Prop("p")
SKY = SystemId("SKY", (parse_formula("(p -> p)"),))
SKYI = SystemId("SKYI", (parse_formula("(p -> p)"),))


def proof(system, *steps):
    return Proof(system, tuple(ProofLine(n, parse_formula(text), just) for n, (text, just) in enumerate(steps, start=1)))


def reasons(report):
    return {r.index: r.reason for r in report.failures}


class TestSchemas:

    def test_match_binds_metavariables(self):
        substitution = match_axiom(SKY, "PRES", parse_formula("(Ky[i] p -> K[i] p)"))
        assert substitution.formulas == {"phi": p}
        assert substitution.agents == {"i": i}

    def test_one_agent_per_metavariable(self):
        assert match_axiom(SKY, "4YK", parse_formula("(Ky[i] p -> K[j] Ky[i] p)")) is None

    def test_match_is_on_core_form(self):
        assert match_axiom(SKY, "T", parse_formula("~(K[j] (q | r) & ~(q | r))")) is not None

    def test_axiom_outside_system(self):
        with pytest.raises(UnknownSchemaError):
            match_axiom(SKYI, "4", parse_formula("(K[i] p -> K[i] K[i] p)"))
        with pytest.raises(UnknownSchemaError):
            match_schema("S4", p)

    @pytest.mark.parametrize("text", ["(Ky[i] p | ~Ky[i] p)", "((K[i] p & q) -> q)"])
    def test_taut(self, text):
        assert match_axiom(SKY, "TAUT", parse_formula(text)) is not None

    def test_systems(self):
        assert "4YK" in SYSTEM_AXIOMS["SKY"] and "4YK" not in SYSTEM_AXIOMS["SKYI"]
        assert {"4KY", "5KY", "4Y", "5Y"} <= set(SYSTEM_AXIOMS["SKYI"])

    def test_ground_must_be_tautologies(self):
        with pytest.raises(ModelValidationError):
            SystemId("SKY", (p,))


class TestChecker:

    def test_five_yk(self):
        report = check_proof(five_yk_proof())
        assert report.accepted
        assert report.lines() == ["accepted"]

    def test_modus_ponens_in_either_order(self):
        for cite in (MP(1, 2), MP(2, 1)):
            report = check_proof(proof(
                SKY,
                ("(K[i] p -> p)", Axiom("T")),
                ("((K[i] p -> p) -> (K[i] p -> p))", Axiom("TAUT")),
                ("(K[i] p -> p)", cite),
            ))
            assert report.accepted

    def test_neck_agent(self):
        steps = [("(K[i] p -> p)", Axiom("T")), ("K[j] (K[i] p -> p)", NECK(1, j))]
        assert check_proof(proof(SKY, *steps)).accepted
        steps[1] = ("K[j] (K[i] p -> p)", NECK(1, i))
        assert reasons(check_proof(proof(SKY, *steps))) == {2: "not K[i] of line 1"}

    def test_necky_only_for_ground(self):
        assert check_proof(proof(SKY, ("Ky[j] (p -> p)", NECKY()))).accepted
        report = check_proof(proof(SKY, ("Ky[i] (q -> q)", NECKY())))
        assert reasons(report) == {1: "(q -> q) is not in the tautology ground"}

    def test_bad_propositional_step(self):
        report = check_proof(proof(SKY, ("(K[i] p -> p)", Axiom("T")), ("p", PL((1,)))))
        assert reasons(report) == {2: "does not follow propositionally from lines 1"}

    def test_citations_must_point_back(self):
        report = check_proof(proof(SKY, ("p", MP(1, 2)), ("p", MP(1, 1))))
        assert reasons(report)[1] == "cites line 1, which does not precede line 1"

    def test_index_gap(self):
        lines = (
            ProofLine(1, parse_formula("(K[i] p -> p)"), Axiom("T")),
            ProofLine(3, parse_formula("(K[i] p -> p)"), Axiom("T")),
        )
        report = check_proof(Proof(SKY, lines))
        assert reasons(report) == {3: "index gap: expected line 2, found 3"}

    def test_axiom_of_other_system(self):
        report = check_proof(proof(SKYI, ("(K[i] p -> K[i] K[i] p)", Axiom("4"))))
        assert reasons(report) == {1: "4 is not an axiom of SKYI"}

    def test_every_single_line_tampering_is_rejected(self):
        original = five_yk_proof()
        for k, line in enumerate(original.lines):
            lines = list(original.lines)
            lines[k] = replace(line, formula=p)
            report = check_proof(replace(original, lines=tuple(lines)))
            assert not report.accepted
            assert line.index in reasons(report)

    def test_tampered_fixture(self):
        report = check_proof(load_proof(fixture_text("5yk_tampered.proof")))
        assert report.lines() == ["line 1: not an instance of 4", "rejected (1 failing line)"]

    def test_expanded_proof_has_no_propositional_steps(self):
        expanded = expand_propositional_steps(five_yk_proof())
        assert check_proof(expanded).accepted
        assert not any(isinstance(line.justification, PL) for line in expanded.lines)
        assert expanded.conclusion == five_yk_proof().conclusion


class TestSkyiTheorems:

    def test_derivations(self):
        proofs = derive_skyi_theorems()
        assert len(proofs) == len(SKYI_THEOREMS) == 4
        for name, derived in zip(SKYI_THEOREMS, proofs):
            assert check_proof(derived).accepted
            assert derived.conclusion == theorem_statement(name)

    def test_theorems_are_sky_axioms(self):
        for name in SKYI_THEOREMS:
            if name in SYSTEM_AXIOMS["SKY"]:
                assert match_axiom(SKY, name, theorem_statement(name)) is not None

    @pytest.mark.parametrize(
        "name, fixture",
        [("4", "skyi_4.proof"), ("5", "skyi_5.proof"), ("4YK", "skyi_4yk.proof"), ("5YK", "skyi_5yk.proof")],
    )
    def test_fixtures(self, name, fixture):
        derived = derive_skyi_theorems()[SKYI_THEOREMS.index(name)]
        text = fixture_text(fixture)
        assert load_proof(text) == derived
        assert print_proof(derived) == text
        assert check_proof(load_proof(text)).accepted


class TestProofFiles:

    def test_five_yk_fixture(self):
        text = fixture_text("5yk.proof")
        assert load_proof(text) == five_yk_proof()
        assert print_proof(five_yk_proof()) == text

    @pytest.mark.parametrize(
        "text, justification",
        [
            ("3. (p -> p)  PL 1 2", PL((1, 2))),
            ("2. K[i] (p -> p)  NECK 1 i", NECK(1, i)),
            ("2. K[i] (p -> p)  NECK 1", NECK(1)),
            ("1. Ky[j] (p -> p)  NECKY j", NECKY(j)),
            ("4. (K[i] p -> p)  MP 2 3", MP(2, 3)),
            ("1. (K[i] p -> p) T", Axiom("T")),
        ],
    )
    def test_justifications(self, text, justification):
        assert parse_proof_line(text).justification == justification

    def test_line_without_justification(self):
        with pytest.raises(ProofFormatError):
            parse_proof_line("1. (p -> p)", 4)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("proof S4\nend\n", 1),
            ("proof SKY\n  1. (K[i] p -> p)  T\n", 2),
            ("proof SKY\n  1. (K[i] p -> p)  T\n  lambda: (p -> p)\nend\n", 3),
            ("proof SKY\n  lambda: (p ->\nend\n", 2),
            ("proof SKY\nend\n  1. p T\n", 3),
        ],
    )
    def test_format_errors(self, text, line):
        with pytest.raises(ProofFormatError) as info:
            load_proof(text)
        assert info.value.line == line

    def test_lambda_must_be_a_tautology(self):
        with pytest.raises(ModelValidationError):
            load_proof("proof SKY\n  lambda: p\nend\n")


class TestSoundnessFuzz:

    @pytest.mark.parametrize("system", ["SKY", "SKYI"])
    def test_no_counterexamples(self, system):
        report = run_soundness_fuzz(system, 500, 1)
        assert report.counterexamples == ()
        assert report.lines()[-1].startswith(f"fuzz {system}: 500 trials, seed 1, ")

    def test_deterministic(self):
        assert run_soundness_fuzz("SKY", 3, 7) == run_soundness_fuzz("SKY", 3, 7)

    def test_every_axiom_is_instantiated(self):
        report = run_soundness_fuzz("SKYI", 1, 1)
        # one instance per axiom, plus NECKY per ground member and agent
        assert report.instances >= len(SYSTEM_AXIOMS["SKYI"]) + 3

    def test_arguments_are_checked(self):
        with pytest.raises(ValueError):
            run_soundness_fuzz("S5", 1, 1)
        with pytest.raises(ValueError):
            run_soundness_fuzz("SKY", 0, 1)
