"""Finite groups by multiplication table and their actions on graded algebras."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

from lib.errors import ActionViolation, AxiomViolation, Violation
from lib.graded import AlgebraElement, GradedAlgebra, algebra_map_failures
from lib.linalg import ExactMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``0..order-1`` with ``table[g][h] = g*h``."""

    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.inverses[g]

    def power(self, g: int, k: int) -> int:
        result = self.identity
        for _ in range(k):
            result = self.table[result][g]
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[g][h] == self.table[h][g]
            for g, h in itertools.combinations(self.elements(), 2)
        )


def validate_group(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Check closure, identity, inverses and associativity exhaustively.

    Raises:
        AxiomViolation: naming each failed law
    """
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise AxiomViolation([Violation("shape", (n,))])
    closure = [
        Violation("closure", (g, h))
        for g in range(n)
        for h in range(n)
        if not 0 <= table[g][h] < n
    ]
    if closure:
        raise AxiomViolation(closure)

    elements = list(range(n))
    identity = next(
        (
            e
            for e in elements
            if list(table[e]) == elements and [table[g][e] for g in elements] == elements
        ),
        None,
    )
    if identity is None:
        raise AxiomViolation([Violation("identity", ())])

    violations = []
    inverses = []
    for g in elements:
        inverse = next(
            (h for h in elements if table[g][h] == identity and table[h][g] == identity), None
        )
        if inverse is None:
            violations.append(Violation("inverse", (g,)))
        inverses.append(inverse if inverse is not None else identity)
    for a, b, c in itertools.product(elements, repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            violations.append(Violation("associativity", (a, b, c)))
    if violations:
        raise AxiomViolation(violations)
    return FiniteGroup(
        table=tuple(tuple(row) for row in table),
        identity=identity,
        inverses=tuple(inverses),
    )


def cyclic_group(n: int) -> FiniteGroup:
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)])


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


@dataclass(frozen=True)
class GroupAction:
    """Action of ``group`` on ``target`` by graded unital automorphisms."""

    group: FiniteGroup
    target: GradedAlgebra
    matrices: tuple[ExactMatrix, ...]
    faithful: bool = True

    def matrix(self, g: int) -> ExactMatrix:
        return self.matrices[g]

    def act(self, g: int, x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.target, self.matrices[g].apply(x.coords))


def _preserves_degrees(algebra: GradedAlgebra, m: ExactMatrix) -> bool:
    return all(
        algebra.degrees[k] == algebra.degrees[j]
        for k, row in enumerate(m.entries)
        for j, x in enumerate(row)
        if x
    )


def validate_action(
    group: FiniteGroup,
    algebra: GradedAlgebra,
    matrices: Sequence[ExactMatrix],
    allow_unfaithful: bool = False,
) -> GroupAction:
    """Check that ``g -> matrices[g]`` is an action by graded automorphisms.

    Args:
        group: Validated group
        algebra: Validated algebra acted on
        matrices: One matrix per group element, in table order
        allow_unfaithful: Accept a non-injective representation and record it

    Raises:
        ActionViolation: law is one of shape, degree, automorphism,
            composition, identity or injectivity
    """
    n = algebra.rank
    if len(matrices) != group.order:
        raise ActionViolation(
            "shape", f"{len(matrices)} matrices for a group of order {group.order}"
        )
    for g, m in enumerate(matrices):
        if (m.rows, m.cols) != (n, n) or m.base != algebra.base:
            raise ActionViolation(
                "shape", f"matrix for element {g} is not {n}x{n} over {algebra.base}"
            )
        if not _preserves_degrees(algebra, m):
            raise ActionViolation("degree", f"element {g} does not preserve the grading")
        failures = algebra_map_failures(algebra, algebra, m)
        if failures:
            raise ActionViolation("automorphism", f"element {g}: {failures[0]}")
    if not matrices[group.identity].is_identity():
        raise ActionViolation("identity", "identity element does not act trivially")
    for g, h in itertools.product(group.elements(), repeat=2):
        if matrices[g] @ matrices[h] != matrices[group.mul(g, h)]:
            raise ActionViolation(
                "composition", f"matrix({g}) * matrix({h}) != matrix({group.mul(g, h)})"
            )

    faithful = len(set(matrices)) == group.order
    if not faithful:
        if not allow_unfaithful:
            raise ActionViolation("injectivity", "distinct group elements act identically")
        logger.warning("accepting a non-faithful action of a group of order %d", group.order)
    return GroupAction(group, algebra, tuple(matrices), faithful)


def trivial_action(group: FiniteGroup, algebra: GradedAlgebra) -> GroupAction:
    """Every element acts as the identity; faithful only for the trivial group."""
    identity = ExactMatrix.identity(algebra.base, algebra.rank)
    return validate_action(
        group, algebra, [identity] * group.order, allow_unfaithful=group.order > 1
    )
