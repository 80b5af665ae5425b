"""Separability idempotents and the degree-lowering procedure.

A separability idempotent is an element ``e`` of ``B⊗B^op`` with
``mu(e) = 1`` and ``(b⊗1) e = (1⊗b) e`` for every basis element ``b``. In
the twisted product ``(1⊗b)(x⊗y) = x⊗yb``, so the second condition reads
``sum b x_i ⊗ y_i = sum x_i ⊗ y_i b``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

from lib.errors import InconsistentCertificate, ProjectionBroken, ValidationFailure
from lib.graded import AlgebraElement, GradedAlgebra, TensorSquare, tensor_square
from lib.linalg import ExactMatrix, Vector, kernel_basis, solve
from lib.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeparabilityCertificate:
    """``idempotent`` is sigma(1) for a bimodule section of ``mu``."""

    idempotent: AlgebraElement
    mu_check: bool
    centrality_check: bool
    idempotence_check: bool

    @property
    def valid(self) -> bool:
        return self.mu_check and self.centrality_check


def _centrality_matrix(square: TensorSquare) -> ExactMatrix:
    factor = square.factor
    blocks = [
        square.left_factor_matrix(b.coords) - square.right_factor_matrix(b.coords)
        for b in factor.basis()
    ]
    return ExactMatrix.zeros(factor.base, 0, square.rank).vstack(*blocks)


def _system(square: TensorSquare) -> tuple[ExactMatrix, Vector]:
    factor = square.factor
    matrix = square.mu.vstack(_centrality_matrix(square))
    rhs = tuple(factor.unit) + (0,) * (factor.rank * square.rank)
    return matrix, rhs


def _certify(square: TensorSquare, coords: Vector) -> SeparabilityCertificate:
    e = square.element(coords)
    return SeparabilityCertificate(
        idempotent=e,
        mu_check=square.mu.apply(coords) == square.factor.unit,
        centrality_check=_centrality_matrix(square).apply(coords) == (0,) * (
            square.factor.rank * square.rank
        ),
        idempotence_check=square.product_coords(coords, coords) == coords,
    )


def separability_idempotent(algebra: GradedAlgebra) -> SeparabilityCertificate | None:
    """Solve for a separability idempotent; None when the algebra is not separable."""
    square = tensor_square(algebra, op_twisted=True)
    matrix, rhs = _system(square)
    logger.debug("separability system %dx%d", matrix.rows, matrix.cols)
    coords = solve(matrix, rhs)
    if coords is None:
        logger.info("no separability idempotent")
        return None
    certificate = _certify(square, coords)
    if not certificate.valid:
        raise InconsistentCertificate("separability idempotent failed its recheck")
    return certificate


def project_total_degree_zero(algebra: GradedAlgebra, e: AlgebraElement) -> AlgebraElement:
    """Component of ``e`` on the bidegrees ``(d, -d)``.

    Raises:
        ProjectionBroken: the component no longer solves the system
    """
    square = tensor_square(algebra, op_twisted=True)
    coords = tuple(c if square.degrees[a] == 0 else 0 for a, c in enumerate(e.coords))
    if not _certify(square, coords).valid:
        raise ProjectionBroken("total-degree-zero component is not a separability idempotent")
    return square.element(coords)


@dataclass(frozen=True)
class ZeroDivisorWitness:
    """Nonzero ``left`` and ``right`` with ``left * right == 0``."""

    left: AlgebraElement
    right: AlgebraElement

    def holds(self) -> bool:
        return (
            not self.left.is_zero()
            and not self.right.is_zero()
            and (self.left * self.right).is_zero()
        )


class ConcentrationOutcome(str, Enum):
    CONCENTRATED = "concentrated"
    STUCK = "stuck"
    UNCHANGED = "unchanged"


@dataclass(frozen=True)
class ConcentrationResult:
    """Where the degree-lowering loop ended.

    ``idempotent`` is the last valid separability idempotent reached; for a
    concentrated outcome it is supported in bidegree (0, 0). ``removed`` lists
    the first-factor degree dropped at each step.
    """

    outcome: ConcentrationOutcome
    idempotent: AlgebraElement
    witness: ZeroDivisorWitness | None = None
    removed: tuple[int, ...] = ()

    @property
    def steps(self) -> int:
        return len(self.removed)


def _first_degrees(square: TensorSquare, coords: Vector) -> set[int]:
    return {square.bidegrees[a][0] for a, c in enumerate(coords) if c}


def _resolve_within(square: TensorSquare, allowed: set[int]) -> Vector | None:
    """Solve the separability system using only first-factor degrees in ``allowed``."""
    keep = [
        a
        for a in range(square.rank)
        if square.bidegrees[a][0] in allowed and square.degrees[a] == 0
    ]
    matrix, rhs = _system(square)
    found = solve(matrix.select_columns(keep), rhs)
    if found is None:
        return None
    coords = [0] * square.rank
    for position, a in enumerate(keep):
        coords[a] = found[position]
    return tuple(coords)


def concentrate_idempotent(algebra: GradedAlgebra, e: AlgebraElement) -> ConcentrationResult:
    """Strip the extremal-degree group from ``e`` until it sits in bidegree (0, 0).

    At each step the group ``sum b_j⊗c_j`` with first degree ``s`` (the top
    degree when positive, otherwise the bottom one) is examined. Its product
    ``x = sum b_j c_j`` lies in ``B_0`` and is killed by every basis element
    whose degree has the sign of ``s``; a nonzero ``x`` is therefore a zero
    divisor witness. When ``x`` vanishes the group is dropped, or, if that
    breaks centrality, the system is re-solved without degree ``s``.
    """
    square = tensor_square(algebra, op_twisted=True)
    current = project_total_degree_zero(algebra, e).coords
    if not algebra.is_graded:
        return ConcentrationResult(ConcentrationOutcome.CONCENTRATED, square.element(current))

    removed: list[int] = []
    for _ in range(len(algebra.distinct_degrees())):
        support = _first_degrees(square, current)
        if support <= {0}:
            return ConcentrationResult(
                ConcentrationOutcome.CONCENTRATED, square.element(current), removed=tuple(removed)
            )
        side = max(support) if max(support) > 0 else min(support)
        group = tuple(
            c if square.bidegrees[a][0] == side else 0 for a, c in enumerate(current)
        )
        x = algebra.element(square.mu.apply(group))
        if not x.is_zero():
            b = next(
                algebra.basis_element(i) for i, d in enumerate(algebra.degrees) if d * side > 0
            )
            witness = ZeroDivisorWitness(b, x)
            if not witness.holds():
                raise InconsistentCertificate(f"{b} * ({x}) is nonzero")
            logger.info("concentration stuck at degree %d", side)
            return ConcentrationResult(
                ConcentrationOutcome.STUCK, square.element(current), witness, tuple(removed)
            )

        reduce = algebra.base.reduce
        candidate = tuple(reduce(c - g) for c, g in zip(current, group, strict=True))
        if not _certify(square, candidate).valid:
            narrowed = _resolve_within(square, support - {side})
            if narrowed is None:
                report = degree_zero_regularity(algebra)
                outcome = (
                    ConcentrationOutcome.STUCK if report.witness else ConcentrationOutcome.UNCHANGED
                )
                return ConcentrationResult(
                    outcome, square.element(current), report.witness, tuple(removed)
                )
            candidate = narrowed
        current = candidate
        removed.append(side)

    if _first_degrees(square, current) <= {0}:
        return ConcentrationResult(
            ConcentrationOutcome.CONCENTRATED, square.element(current), removed=tuple(removed)
        )
    return ConcentrationResult(
        ConcentrationOutcome.UNCHANGED, square.element(current), removed=tuple(removed)
    )


def degree_zero_separability(
    algebra: GradedAlgebra, e: AlgebraElement
) -> SeparabilityCertificate:
    """Restrict a concentrated idempotent to ``B_0⊗B_0^op`` and recheck it there.

    Raises:
        ValidationFailure: ``e`` has support outside bidegree (0, 0)
        InconsistentCertificate: the restriction is not a separability idempotent of B_0
    """
    square = tensor_square(algebra, op_twisted=True)
    if any(c and square.bidegrees[a] != (0, 0) for a, c in enumerate(e.coords)):
        raise ValidationFailure("idempotent is not concentrated in bidegree (0, 0)")
    keep = algebra.indices_in_degree(0)
    restricted = tuple(e.coords[square.index(i, j)] for i in keep for j in keep)
    certificate = _certify(tensor_square(algebra.degree_zero_part(), op_twisted=True), restricted)
    if not certificate.valid:
        raise InconsistentCertificate("degree-zero restriction failed its recheck")
    return certificate


@dataclass(frozen=True)
class RegularityReport:
    """Both readings of "no zero divisors in B_0".

    ``domain``: B_0 itself has no zero divisors. ``regular``: every nonzero
    element of B_0 acts injectively on all of B from both sides. The
    witness, when present, refutes ``regular``. ``exhaustive`` tells whether
    every element of B_0 was tried.
    """

    domain: bool
    regular: bool
    witness: ZeroDivisorWitness | None
    exhaustive: bool


def _degree_zero_candidates(algebra: GradedAlgebra, limit: int) -> tuple[Iterator[Vector], bool]:
    keep = algebra.indices_in_degree(0)
    if algebra.base.is_finite and algebra.base.modulus ** len(keep) <= limit:
        values: range | tuple[int, ...] = algebra.base.elements()
        exhaustive = True
    else:
        values = (0, 1, -1)
        exhaustive = False

    def generate() -> Iterator[Vector]:
        basis = [algebra.basis_element(i).coords for i in keep]
        yield from basis
        for combination in itertools.islice(itertools.product(values, repeat=len(keep)), limit):
            coords = [0] * algebra.rank
            for c, i in zip(combination, keep, strict=True):
                coords[i] = algebra.base.reduce(c)
            if any(coords):
                yield tuple(coords)

    return generate(), exhaustive


def _annihilated(matrix: ExactMatrix) -> Vector | None:
    for column in kernel_basis(matrix).columns():
        if any(column):
            return column
    return None


def _zero_divisor(algebra: GradedAlgebra, x: Vector) -> ZeroDivisorWitness | None:
    element = algebra.element(x)
    y = _annihilated(algebra.left_matrix(x))
    if y is not None:
        return ZeroDivisorWitness(element, algebra.element(y))
    y = _annihilated(algebra.right_matrix(x))
    if y is not None:
        return ZeroDivisorWitness(algebra.element(y), element)
    return None


def degree_zero_regularity(algebra: GradedAlgebra) -> RegularityReport:
    """Search B_0 for zero divisors, inside B_0 and acting on B.

    Over a finite base with at most ``regularity_enumeration_limit`` elements
    in B_0 every element is tried. Otherwise the basis and its ``{-1, 0, 1}``
    combinations are tried, which can miss zero divisors over Z.
    """
    limit = get_settings().regularity_enumeration_limit
    zero_part = algebra.degree_zero_part()
    candidates, exhaustive = _degree_zero_candidates(algebra, limit)
    keep = algebra.indices_in_degree(0)
    witness = None
    domain = True
    for x in candidates:
        if domain and _zero_divisor(zero_part, tuple(x[i] for i in keep)) is not None:
            domain = False
        if witness is None:
            witness = _zero_divisor(algebra, x)
        if witness is not None and not domain:
            break
    if witness is not None and not witness.holds():
        raise InconsistentCertificate("regularity witness does not multiply to zero")
    return RegularityReport(
        domain=domain, regular=witness is None, witness=witness, exhaustive=exhaustive
    )


def degree_zero_regular(algebra: GradedAlgebra) -> bool:
    """Every nonzero element of B_0 is a non-zero-divisor on B."""
    return degree_zero_regularity(algebra).regular
