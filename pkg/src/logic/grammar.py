"""Lark grammars and parsers for formula text and explanation-term text.

Formula precedence, loosest first: -> (right associative), |, &, then the
prefix operators ~, K[i], Ky[i]. The parsers are LALR(1) so syntax errors
carry a line, a column and the set of acceptable tokens.
"""

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError
from lark.lexer import PatternStr

from ..errors import FormulaSyntaxError, ReservedNameError
from .syntax import (
    BOT,
    RESERVED_WORDS,
    TOP,
    Agent,
    And,
    Formula,
    K,
    Ky,
    KyCond,
    Not,
    Prop,
    disjunction,
    implies,
)
from .terms import App, Base, SELF_EVIDENT, Term

FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: implication

    ?implication: disjunction
                | disjunction "->" implication         -> implies

    ?disjunction: conjunction
                | disjunction "|" conjunction          -> or_

    ?conjunction: unary
                | conjunction "&" unary                -> and_

    ?unary: "~" unary                                  -> not_
          | "K" "[" NAME "]" unary                     -> know
          | "Ky" "[" NAME "]" unary                    -> know_why
          | "Ky" "[" NAME "]" "(" formula "," formula ")"  -> know_why_given
          | atom

    ?atom: "top"                                       -> top
         | "bot"                                       -> bot
         | NAME                                        -> prop
         | "(" formula ")"

    NAME: /[A-Za-z][A-Za-z0-9_]*/

    %import common.WS
    %ignore WS
"""

TERM_GRAMMAR = r"""
    ?start: term

    ?term: "e"                                         -> self_evident
         | NAME                                        -> base
         | "(" term "." term ")"                       -> app

    NAME: /[A-Za-z][A-Za-z0-9_]*/

    %import common.WS
    %ignore WS
"""


def _identifier(token: Token, role: str) -> str:
    name = str(token)
    if name in RESERVED_WORDS:
        raise ReservedNameError(
            f"{name!r} is a reserved word and cannot name {role}",
            line=token.line,
            column=token.column,
        )
    return name


@v_args(inline=True)
class _FormulaBuilder(Transformer):
    """Turn the lark tree into core Formula nodes, desugaring as it goes."""

    def implies(self, antecedent, consequent):
        return implies(antecedent, consequent)

    def or_(self, left, right):
        return disjunction(left, right)

    def and_(self, left, right):
        return And(left, right)

    def not_(self, body):
        return Not(body)

    def know(self, agent, body):
        return K(Agent(_identifier(agent, "an agent")), body)

    def know_why(self, agent, body):
        return Ky(Agent(_identifier(agent, "an agent")), body)

    def know_why_given(self, agent, condition, body):
        return KyCond(Agent(_identifier(agent, "an agent")), condition, body)

    def top(self):
        return TOP

    def bot(self):
        return BOT

    def prop(self, name):
        return Prop(_identifier(name, "a proposition"))


@v_args(inline=True)
class _TermBuilder(Transformer):

    def self_evident(self):
        return SELF_EVIDENT

    def base(self, name):
        return Base(_identifier(name, "a base term"))

    def app(self, left, right):
        return App(left, right)


class _Parser:
    """Shared error translation around one LALR grammar."""

    def __init__(self, grammar: str, builder: Transformer, what: str):
        self._lark = Lark(grammar, parser="lalr")
        self._builder = builder
        self._what = what

    def _describe(self, terminal: str) -> str:
        if terminal == "$END":
            return "end of input"
        try:
            pattern = self._lark.get_terminal(terminal).pattern
        except KeyError:
            return terminal.lower()
        if isinstance(pattern, PatternStr):
            return f"'{pattern.value}'"
        return "identifier" if terminal == "NAME" else terminal.lower()

    def parse(self, text: str):
        try:
            tree = self._lark.parse(text)
            return self._builder.transform(tree)
        except VisitError as exc:
            # Errors raised inside the transformer arrive wrapped.
            if isinstance(exc.orig_exc, FormulaSyntaxError):
                raise exc.orig_exc from None
            raise
        except UnexpectedInput as exc:
            raise self._translate(exc, text) from None

    def _translate(self, exc: UnexpectedInput, text: str) -> FormulaSyntaxError:
        if isinstance(exc, UnexpectedToken):
            expected = [self._describe(name) for name in exc.expected]
            if exc.token.type == "$END":
                line = text.count("\n") + 1
                column = len(text) - (text.rfind("\n") + 1) + 1
                return FormulaSyntaxError(
                    f"unexpected end of input in {self._what}", line, column, expected
                )
            return FormulaSyntaxError(
                f"unexpected {exc.token.value!r} in {self._what}",
                exc.line,
                exc.column,
                expected,
            )
        if isinstance(exc, UnexpectedCharacters):
            expected = [self._describe(name) for name in (exc.allowed or ())]
            return FormulaSyntaxError(
                f"unexpected character {text[exc.pos_in_stream]!r} in {self._what}",
                exc.line,
                exc.column,
                expected,
            )
        return FormulaSyntaxError(f"cannot parse {self._what}", getattr(exc, "line", None), getattr(exc, "column", None))


_formula_parser: _Parser | None = None
_term_parser: _Parser | None = None


def parse_formula(text: str) -> Formula:
    """
    Parse formula text into a core AST, desugaring top, bot, -> and |.

    Examples:
        >>> parse_formula("K[i] p")
        K(agent=Agent(name='i'), body=Prop(name='p'))
        >>> str(parse_formula("Ky[i](q, p)"))
        'Ky[i](q, p)'

    Raises:
        FormulaSyntaxError: text outside the grammar; the message names the
            line, column and acceptable tokens.
        ReservedNameError: 'e' used as a proposition or agent.
    """
    global _formula_parser
    if _formula_parser is None:
        _formula_parser = _Parser(FORMULA_GRAMMAR, _FormulaBuilder(), "formula")
    return _formula_parser.parse(text)


def parse_term(text: str) -> Term:
    """Parse `e`, a base name, or a fully parenthesised `(s . t)`."""
    global _term_parser
    if _term_parser is None:
        _term_parser = _Parser(TERM_GRAMMAR, _TermBuilder(), "term")
    return _term_parser.parse(text)
