import pytest
from hypothesis import given

from src.config import configure
from src.errors import FormulaSyntaxError, ReservedNameError, ResourceLimitError
from src.logic.grammar import parse_formula, parse_term
from src.logic.syntax import (
    BOT,
    TOP,
    Agent,
    And,
    K,
    Ky,
    Not,
    Prop,
    agents_of,
    as_implication,
    conjunction_of,
    depth,
    implies,
    is_propositional_tautology,
    modal_atomize,
    possible,
    print_formula,
    subformula_closure,
    subformulas,
)
from src.logic.terms import SELF_EVIDENT, App, Base, print_term

from .strategies import formulas

p, q, r = Prop("p"), Prop("q"), Prop("r")
i, j = Agent("i"), Agent("j")


class TestParsePrint:

    @pytest.mark.parametrize(
        "text, printed",
        [
            ("K[i]p", "K[i] p"),
            ("p & q & r", "((p & q) & r)"),
            ("p -> q -> r", "(p -> (q -> r))"),
            ("p & q -> r", "((p & q) -> r)"),
            ("p | q", "(~p -> q)"),
            ("top", "top"),
            ("bot", "bot"),
            ("Ky[i](q, p)", "Ky[i](q, p)"),
            ("Ky[i] (q & p)", "Ky[i] (q & p)"),
            ("~K[j] Ky[i] p", "~K[j] Ky[i] p"),
            ("K[i] p & q", "(K[i] p & q)"),
            ("(p0 -> p0)", "top"),
        ],
    )
    def test_canonical_text(self, text, printed):
        assert print_formula(parse_formula(text)) == printed

    def test_sugar_is_desugared(self):
        assert parse_formula("(p -> q)") == Not(And(p, Not(q)))
        assert parse_formula("top") == TOP
        assert parse_formula("(p0 -> p0)") == TOP
        assert parse_formula("bot") == Not(TOP)

    @given(formulas())
    def test_print_then_parse_is_identity(self, f):
        assert parse_formula(print_formula(f)) == f

    def test_top_and_bot_print_as_keywords(self):
        assert print_formula(TOP) == "top"
        assert print_formula(BOT) == "bot"


class TestSyntaxErrors:

    def test_dangling_operator_reports_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("(p & )")
        assert info.value.line == 1
        assert info.value.column == 6

    def test_missing_parenthesis_lists_expected_tokens(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("(p & q")
        assert "')'" in info.value.expected

    def test_unknown_character(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("p $ q")

    @pytest.mark.parametrize("text", ["e", "(e & p)", "K[e] p", "Ky[e](p, q)"])
    def test_reserved_e(self, text):
        with pytest.raises(ReservedNameError):
            parse_formula(text)

    def test_reserved_name_error_is_a_syntax_error(self):
        assert issubclass(ReservedNameError, FormulaSyntaxError)


class TestTerms:

    @pytest.mark.parametrize("text", ["e", "t", "(s . t)", "((s . t) . e)"])
    def test_round_trip(self, text):
        assert print_term(parse_term(text)) == text

    def test_structure(self):
        assert parse_term("(s . (t . e))") == App(Base("s"), App(Base("t"), SELF_EVIDENT))

    def test_application_needs_parentheses(self):
        with pytest.raises(FormulaSyntaxError):
            parse_term("s . t")


class TestHelpers:

    def test_as_implication(self):
        assert as_implication(implies(p, q)) == (p, q)
        assert as_implication(And(p, q)) is None

    def test_conjunction_of(self):
        assert conjunction_of([]) == TOP
        assert conjunction_of([p, q, r]) == And(And(p, q), r)

    def test_possible_is_dual_of_k(self):
        assert possible(i, p) == Not(K(i, Not(p)))

    def test_agents_of_in_first_occurrence_order(self):
        assert agents_of(parse_formula("(K[j] p & Ky[i] K[j] q)")) == [j, i]

    def test_subformulas_post_order(self):
        assert subformulas(parse_formula("K[i] (p & q)")) == [p, q, And(p, q), K(i, And(p, q))]

    def test_closure_shares_common_parts(self):
        closure = subformula_closure([parse_formula("(p & q)"), parse_formula("K[i] p")])
        assert closure == [p, q, And(p, q), K(i, p)]

    def test_depth(self):
        assert depth(p) == 1
        assert depth(parse_formula("K[i] ~p")) == 3


class TestTautologies:

    @pytest.mark.parametrize(
        "text",
        ["(p -> p)", "(p | ~p)", "((p & q) -> q)", "(K[i] p -> K[i] p)", "(Ky[i] p | ~Ky[i] p)", "top"],
    )
    def test_tautologies(self, text):
        assert is_propositional_tautology(parse_formula(text))

    @pytest.mark.parametrize("text", ["p", "(p -> q)", "(K[i] p -> p)", "(Ky[i] p -> K[i] p)", "bot"])
    def test_non_tautologies(self, text):
        assert not is_propositional_tautology(parse_formula(text))

    def test_modal_atoms_are_opaque(self):
        atomization = modal_atomize(parse_formula("(K[i] (p & q) -> p)"))
        assert atomization.atoms == (K(i, And(p, q)), p)
        assert atomization.reconstruct() == parse_formula("(K[i] (p & q) -> p)")

    def test_atom_cap(self):
        configure(max_tautology_atoms=2)
        with pytest.raises(ResourceLimitError):
            is_propositional_tautology(parse_formula("((p & q) -> r)"))

    def test_explicit_cap_overrides_settings(self):
        assert is_propositional_tautology(parse_formula("((p & q) -> p)"), max_atoms=2)

    @given(formulas(max_leaves=6))
    def test_excluded_middle_over_any_formula(self, f):
        assert is_propositional_tautology(implies(f, f))

    def test_ky_of_tautology_is_not_a_tautology(self):
        assert not is_propositional_tautology(Ky(i, parse_formula("(p -> p)")))
