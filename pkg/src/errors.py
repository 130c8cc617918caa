"""Exception hierarchy for whylog.

Library code raises these; the CLI turns them into messages and exit status 2.
Violations found by checkers (factivity, introspection, JL conditions, proof
lines) are returned as data and never raised.
"""

from typing import Iterable, Optional


class WhylogError(Exception):
    """Base class for every error raised by whylog."""
    pass


class FormulaSyntaxError(WhylogError):
    """Formula or term text outside the grammar.

    Attributes:
        line: 1-based line of the offending token, None if unknown.
        column: 1-based column of the offending token, None if unknown.
        expected: Human-readable descriptions of the tokens that would have
            been accepted at that point.
    """

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        expected: Iterable[str] = (),
    ):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        location = f" at line {line}, column {column}" if line is not None else ""
        hint = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{location}{hint}")


class ReservedNameError(FormulaSyntaxError):
    """A reserved word used where an identifier is required."""
    pass


class ModelFormatError(WhylogError):
    """Model, JL model or proof header text that cannot be read."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class ModelValidationError(WhylogError):
    """A well-formed model file describing an invalid model."""
    pass


class UniverseError(WhylogError):
    """A formula outside the finite universe a table or model is defined over."""
    pass


class ResourceLimitError(WhylogError):
    """A configured cap (atoms, profiles, oracle terms, rounds) was exceeded."""
    pass


class UnsupportedFormulaError(WhylogError):
    """A formula the chosen semantics cannot evaluate."""
    pass


class UnknownSchemaError(WhylogError):
    """An axiom name that is not a schema of the proof system."""
    pass


class ProofFormatError(ModelFormatError):
    """Proof file text that cannot be read."""
    pass


class IntrospectionShapeError(WhylogError):
    """An introspection universe member not of shape K, ~K, Ky or ~Ky."""
    pass
