"""Exception types and the small verdict record shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class AffsysError(Exception):
    """Base class for all errors raised by affsys."""


class ValidationError(AffsysError):
    """Input does not satisfy the axioms it claims to satisfy.

    ``witness`` holds the offending instance (element names, pairs, triples).
    """

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotAPartialOrder(ValidationError):
    pass


class MissingJoin(ValidationError):
    pass


class DistributivityFailure(ValidationError):
    pass


class ComplementFailure(ValidationError):
    pass


class TensorAxiomFailure(ValidationError):
    pass


class NotASubalgebra(ValidationError):
    pass


class KappaNotHomomorphism(ValidationError):
    pass


class NotContinuous(ValidationError):
    pass


class VarietyMismatch(AffsysError):
    pass


class UnsupportedVariety(AffsysError):
    pass


class BudgetExceeded(AffsysError):
    pass


class CoconeShapeMismatch(AffsysError):
    pass


class GenerationExhausted(AffsysError):
    pass


class IntegralShortcutMismatch(AffsysError):
    """General power-join formula and the integral shortcut disagree (a bug)."""


class ParseError(AffsysError):
    """A document is not valid UTF-8 JSON."""


class SchemaError(AffsysError):
    """A document parses but has the wrong kind, version or shape."""


class EllNotPoint(AffsysError):
    """Some l(x) failed to be a homomorphism; kappa was not a homomorphism."""


@dataclass(frozen=True)
class Verdict:
    """Boolean answer plus the witness that refutes it.

    ``partial`` marks answers produced by a sound-but-incomplete test.
    """

    ok: bool
    witness: Any = None
    reason: str = ""
    partial: bool = False
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok
