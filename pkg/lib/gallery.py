"""Named example algebras and the fixture registry.

Each constructor returns a validated algebra (and, for the Galois fixtures,
a validated action). The registry in ``lib/config/gallery.json`` names the
fixtures the CLI and the tests refer to.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Any

from rapidfuzz import fuzz, process
from sympy import Poly, symbols

from lib.config import GALLERY_MAP
from lib.errors import NoIrreducibleFound, UnknownName, ValidationFailure
from lib.graded import GradedAlgebra, StructureConstant, is_algebra_map, validate_algebra
from lib.groups import FiniteGroup, GroupAction, cyclic_group, trivial_group, validate_action
from lib.linalg import BaseRing, ExactMatrix

logger = logging.getLogger(__name__)

_X = symbols("x")


@dataclass(frozen=True)
class Fixture:
    """A gallery entry: an algebra and, optionally, a group action on it."""

    name: str
    description: str
    algebra: GradedAlgebra
    action: GroupAction | None = None


def suggest_name(name: str, choices: Sequence[str]) -> str | None:
    """Closest known name, if any is reasonably close."""
    match = process.extractOne(name, list(choices), scorer=fuzz.ratio, score_cutoff=60)
    return match[0] if match else None


def make_trivial_galois(base: BaseRing, group: FiniteGroup) -> tuple[GradedAlgebra, GroupAction]:
    """Product of ``|G|`` copies of the base, with G translating the factors.

    Factor ``e_{h+1}`` is the idempotent at group element ``h``; ``g`` sends it
    to the idempotent at ``g*h``.
    """
    n = group.order
    constants: list[StructureConstant] = [(i, i, i, 1) for i in range(n)]
    algebra = validate_algebra(
        base,
        [f"e{i + 1}" for i in range(n)],
        [0] * n,
        [1] * n,
        constants,
        commutative=True,
    )
    matrices = [
        ExactMatrix.from_columns(
            base,
            [[1 if row == group.mul(g, h) else 0 for row in range(n)] for h in range(n)],
            n,
        )
        for g in group.elements()
    ]
    return algebra, validate_action(group, algebra, matrices)


def _power_name(i: int, variable: str) -> str:
    if i == 0:
        return "1"
    return variable if i == 1 else f"{variable}^{i}"


def _reduced_power(exponent: int, modulus: Poly, base: BaseRing, n: int) -> tuple[int, ...]:
    remainder = Poly(_X**exponent, _X, modulus=base.modulus).rem(modulus)
    coefficients = [int(c) for c in reversed(remainder.all_coeffs())]
    coefficients += [0] * (n - len(coefficients))
    return tuple(base.reduce(c) for c in coefficients[:n])


def find_irreducible(p: int, n: int) -> Poly:
    """First monic irreducible of degree ``n`` over F_p in lexicographic search.

    Raises:
        NoIrreducibleFound: no candidate passed the irreducibility test
    """
    for lower in itertools.product(range(p), repeat=n):
        candidate = Poly([1, *reversed(lower)], _X, modulus=p)
        if candidate.is_irreducible:
            return candidate
    raise NoIrreducibleFound(f"no monic irreducible of degree {n} over F_{p}")


def make_finite_field_ext(p: int, n: int) -> tuple[GradedAlgebra, GroupAction]:
    """``F_{p^n}`` over ``F_p`` on the power basis of a root ``w``, with Frobenius.

    Group element ``k`` of ``C_n`` acts as the k-th power of ``z -> z^p``.
    """
    base = BaseRing.prime_field(p)
    if n < 1:
        raise ValidationFailure(f"extension degree must be positive, got {n}")
    if n == 1:
        algebra = validate_algebra(base, ["1"], [0], [1], [(0, 0, 0, 1)], commutative=True)
        return algebra, validate_action(
            trivial_group(), algebra, [ExactMatrix.identity(base, 1)]
        )
    modulus = find_irreducible(p, n)
    logger.debug("using modulus %s for F_%d^%d", modulus.as_expr(), p, n)
    constants: list[StructureConstant] = []
    for i, j in itertools.product(range(n), repeat=2):
        for k, c in enumerate(_reduced_power(i + j, modulus, base, n)):
            if c:
                constants.append((i, j, k, c))
    unit = [1] + [0] * (n - 1)
    algebra = validate_algebra(
        base, [_power_name(i, "w") for i in range(n)], [0] * n, unit, constants, commutative=True
    )
    frobenius = ExactMatrix.from_columns(
        base, [_reduced_power(p * j, modulus, base, n) for j in range(n)], n
    )
    matrices = [ExactMatrix.identity(base, n)]
    for _ in range(n - 1):
        matrices.append(frobenius @ matrices[-1])
    return algebra, validate_action(cyclic_group(n), algebra, matrices)


_MATRIX_UNITS = ("E11", "E22", "E12", "E21")


def _matrix_constants() -> list[StructureConstant]:
    position = {name: i for i, name in enumerate(_MATRIX_UNITS)}
    constants: list[StructureConstant] = []
    for left, right in itertools.product(_MATRIX_UNITS, repeat=2):
        if left[2] == right[1]:
            product = position[f"E{left[1]}{right[2]}"]
            constants.append((position[left], position[right], product, 1))
    return sorted(constants)


def make_matrix_example(base: BaseRing) -> GradedAlgebra:
    """2x2 matrix units with ``E12`` in degree 2 and ``E21`` in degree -2."""
    return validate_algebra(
        base, _MATRIX_UNITS, [0, 0, 2, -2], [1, 1, 0, 0], _matrix_constants(), commutative=False
    )


def make_matrix_algebra(base: BaseRing) -> GradedAlgebra:
    """Ungraded 2x2 matrices on the row-major basis E11, E12, E21, E22."""
    names = ("E11", "E12", "E21", "E22")
    constants: list[StructureConstant] = [
        (2 * a + b, 2 * b + c, 2 * a + c, 1) for a, b, c in itertools.product(range(2), repeat=3)
    ]
    return validate_algebra(base, names, [0] * 4, [1, 0, 0, 1], sorted(constants))


def matrix_example_isomorphism(base: BaseRing) -> ExactMatrix:
    """Stored isomorphism from the graded example, grading forgotten, to 2x2 matrices."""
    # example basis E11, E22, E12, E21 -> row-major positions 0, 3, 1, 2
    return ExactMatrix.from_columns(
        base, [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]], 4
    )


def matrix_example_is_matrix_ring(base: BaseRing) -> bool:
    example = make_matrix_example(base)
    ungraded = replace(example, degrees=(0,) * example.rank)
    iso = matrix_example_isomorphism(base)
    return is_algebra_map(ungraded, make_matrix_algebra(base), iso) and iso.determinant() != 0


def make_truncated_poly(base: BaseRing, m: int, k: int) -> GradedAlgebra:
    """``A[x]/(x^m)`` with ``x`` in degree ``k``."""
    if m < 2:
        raise ValidationFailure(f"truncation order must be at least 2, got {m}")
    constants: list[StructureConstant] = [
        (i, j, i + j, 1) for i in range(m) for j in range(m) if i + j < m
    ]
    return validate_algebra(
        base,
        [_power_name(i, "x") for i in range(m)],
        [i * k for i in range(m)],
        [1] + [0] * (m - 1),
        constants,
        commutative=True,
    )


def _build(constructor: str, params: dict[str, Any]) -> tuple[GradedAlgebra, GroupAction | None]:
    if constructor == "finite_field":
        return make_finite_field_ext(params["p"], params["n"])
    base = BaseRing.parse(params["base"])
    if constructor == "trivial_galois":
        return make_trivial_galois(base, cyclic_group(params["order"]))
    if constructor == "matrix_example":
        return make_matrix_example(base), None
    if constructor == "matrix_algebra":
        return make_matrix_algebra(base), None
    if constructor == "truncated_poly":
        return make_truncated_poly(base, params["m"], params["k"]), None
    raise ValidationFailure(f"unknown gallery constructor '{constructor}'")


def fixture_names() -> list[str]:
    return sorted(GALLERY_MAP)


def build_fixture(name: str) -> Fixture:
    """Build a named fixture from the registry.

    Raises:
        UnknownName: ``name`` is not registered; carries the closest match
    """
    entry = GALLERY_MAP.get(name)
    if entry is None:
        raise UnknownName("gallery fixture", name, suggest_name(name, fixture_names()))
    algebra, action = _build(entry["constructor"], entry["params"])
    return Fixture(name, entry["description"], algebra, action)
