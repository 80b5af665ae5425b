"""Exception hierarchy for algext.

Two families matter to callers. ``ValidationFailure`` means the input was
rejected (bad document, violated axiom, wrong precondition). ``InconsistencyError``
means a certificate failed its own recheck, which is a bug and never a legal state.
"""

from __future__ import annotations

from dataclasses import dataclass


class AlgextError(Exception):
    """Base class for all algext errors."""


class ValidationFailure(AlgextError):
    """Input rejected before or during a computation."""


class InconsistencyError(AlgextError):
    """A computed certificate did not survive its exact recheck."""


@dataclass(frozen=True)
class Violation:
    """One failed axiom with the basis or group indices that witness it."""

    axiom: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.axiom}{self.indices}"


class AxiomViolation(ValidationFailure):
    """Structure constants or a group table failed one or more axioms."""

    def __init__(self, violations: list[Violation]) -> None:
        self.violations = violations
        shown = ", ".join(str(v) for v in violations[:8])
        more = f" (+{len(violations) - 8} more)" if len(violations) > 8 else ""
        super().__init__(f"axiom violations: {shown}{more}")

    @property
    def axioms(self) -> set[str]:
        """Names of the violated axioms."""
        return {v.axiom for v in self.violations}


class ActionViolation(ValidationFailure):
    """A proposed group action is not an action by graded automorphisms."""

    def __init__(self, law: str, detail: str) -> None:
        self.law = law
        self.detail = detail
        super().__init__(f"{law}: {detail}")


class ParseError(ValidationFailure):
    """Malformed instance or module document."""


class NotCommutative(ValidationFailure):
    """Operation defined for commutative algebras only."""


class ParentMismatch(ValidationFailure):
    """Elements from different algebras were combined."""


class BaseMismatch(ValidationFailure):
    """Objects over different base rings were combined."""


class DimensionMismatch(ValidationFailure):
    """Matrix or vector shapes do not fit."""


class PresentationError(ValidationFailure):
    """A relation column touches generators of more than one degree."""


class CapExceeded(ValidationFailure):
    """Requested homological degree is above the resolution cap."""

    def __init__(self, requested: int, cap: int) -> None:
        self.requested = requested
        self.cap = cap
        super().__init__(f"degree {requested} exceeds resolution cap {cap}")


class NotGalois(ValidationFailure):
    """Dual basis requested for an extension that is not Galois."""


class UnknownName(ValidationFailure):
    """Unknown gallery fixture or harness name."""

    def __init__(self, kind: str, name: str, suggestion: str | None = None) -> None:
        self.kind = kind
        self.name = name
        self.suggestion = suggestion
        hint = f" (did you mean '{suggestion}'?)" if suggestion else ""
        super().__init__(f"unknown {kind} '{name}'{hint}")


class GenerationExhausted(ValidationFailure):
    """Random generation hit its attempt bound without a valid instance."""


class NoPreimage(InconsistencyError):
    """The h-map of a certified Galois extension missed (1, 0, ..., 0)."""


class ProjectionBroken(InconsistencyError):
    """The total-degree-zero component of an idempotent failed its recheck."""


class InconsistentCertificate(InconsistencyError):
    """A certificate or witness did not recheck exactly."""


class NoIrreducibleFound(InconsistencyError):
    """Exhaustive search found no monic irreducible polynomial."""
