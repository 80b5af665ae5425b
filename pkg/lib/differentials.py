"""Kähler differentials I/I² and the universal derivation.

For a commutative algebra B the first Hochschild homology is the module of
Kähler differentials, computed here as ``I/I²`` with ``I = ker(mu)`` inside
``B⊗B``. Everything is graded by total degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from lib.errors import InconsistentCertificate, NotCommutative, ValidationFailure
from lib.graded import AlgebraElement, GradedAlgebra, TensorSquare, tensor_square
from lib.linalg import (
    ExactMatrix,
    PresentedModule,
    Vector,
    graded_kernel,
    image_basis,
    kernel_basis,
    module_is_zero,
    solve,
    subquotient,
)

logger = logging.getLogger(__name__)


def _require_commutative(algebra: GradedAlgebra) -> None:
    if not algebra.commutative:
        raise NotCommutative("Kähler differentials are computed for commutative algebras only")


@dataclass(frozen=True)
class AugmentationIdeal:
    """Homogeneous generators of ``ker(mu)``, as columns in tensor coordinates."""

    square: TensorSquare
    generators: ExactMatrix
    degrees: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.generators.cols

    def elements(self) -> list[AlgebraElement]:
        return [self.square.element(c) for c in self.generators.columns()]


def augmentation_ideal(algebra: GradedAlgebra) -> AugmentationIdeal:
    _require_commutative(algebra)
    square = tensor_square(algebra)
    generators, degrees = graded_kernel(square.mu, algebra.degrees, square.degrees)
    return AugmentationIdeal(square, generators, degrees)


@dataclass(frozen=True)
class DifferentialClass:
    """Class of an element of I in I/I².

    ``coefficients`` express ``tensor`` in the generators of I; the class is
    zero exactly when ``tensor`` lies in I².
    """

    tensor: AlgebraElement
    coefficients: Vector
    is_zero: bool
    label: str = ""

    @property
    def degrees(self) -> set[int]:
        return self.tensor.degrees()


@dataclass(frozen=True)
class KaehlerModule:
    """``I/I²`` with I² spanned degree by degree by products of generators of I.

    I is already an ideal of B⊗B, so the base-ring span of the products of its
    generators is all of I².
    """

    algebra: GradedAlgebra
    ideal: AugmentationIdeal
    squares: ExactMatrix
    square_degrees: tuple[int, ...]

    @cached_property
    def module(self) -> PresentedModule:
        return subquotient(
            self.ideal.generators, self.squares, self.ideal.degrees, self.square_degrees
        )

    @property
    def square(self) -> TensorSquare:
        return self.ideal.square

    def is_zero(self) -> bool:
        return module_is_zero(self.module)

    def contains_square(self, coords: Vector) -> bool:
        """Membership of a tensor-square vector in I²."""
        if not any(coords):
            return True
        return solve(self.squares, coords) is not None

    def class_of(self, t: AlgebraElement, label: str = "") -> DifferentialClass:
        """Class of ``t`` in I/I².

        Raises:
            ValidationFailure: ``t`` is not in the augmentation ideal
        """
        coefficients = solve(self.ideal.generators, t.coords)
        if coefficients is None:
            raise ValidationFailure(f"{t} is not in the kernel of the multiplication map")
        return DifferentialClass(t, coefficients, self.contains_square(t.coords), label)

    def is_free_cyclic(self, generator: AlgebraElement) -> bool:
        """Whether ``b -> b * generator`` identifies B with I/I²."""
        square, n = self.square, self.algebra.rank
        images = [
            square.left_factor_matrix(b.coords).apply(generator.coords)
            for b in self.algebra.basis()
        ]
        ambient = ExactMatrix.from_columns(self.algebra.base, images, square.rank).hstack(
            self.squares
        )
        surjective = all(solve(ambient, g) is not None for g in self.ideal.generators.columns())
        injective = all(not any(c[:n]) for c in kernel_basis(ambient).columns())
        return surjective and injective


def _products(ideal: AugmentationIdeal) -> tuple[ExactMatrix, tuple[int, ...]]:
    square = ideal.square
    by_degree: dict[int, list[Vector]] = {}
    columns = list(ideal.generators.columns())
    for a, x in enumerate(columns):
        for b in range(a, len(columns)):
            product = square.product_coords(x, columns[b])
            if any(product):
                by_degree.setdefault(ideal.degrees[a] + ideal.degrees[b], []).append(product)
    spans: list[Vector] = []
    degrees: list[int] = []
    base = square.factor.base
    for degree, vectors in sorted(by_degree.items()):
        reduced = image_basis(ExactMatrix.from_columns(base, vectors, square.rank))
        spans.extend(reduced.columns())
        degrees.extend([degree] * reduced.cols)
    return ExactMatrix.from_columns(base, spans, square.rank), tuple(degrees)


def kaehler_module(algebra: GradedAlgebra) -> KaehlerModule:
    """Presentation of the module of Kähler differentials, graded by total degree."""
    ideal = augmentation_ideal(algebra)
    squares, square_degrees = _products(ideal)
    logger.debug("I has %d generators, I² span %d", ideal.rank, squares.cols)
    return KaehlerModule(algebra, ideal, squares, square_degrees)


def _d(square: TensorSquare, b: AlgebraElement) -> AlgebraElement:
    one = square.factor.one()
    return square.pure(b, one) - square.pure(one, b)


def universal_derivation(
    algebra: GradedAlgebra, b: AlgebraElement, module: KaehlerModule | None = None
) -> DifferentialClass:
    """``d(b)``: the class of ``b⊗1 - 1⊗b``."""
    module = module or kaehler_module(algebra)
    return module.class_of(_d(module.square, b), f"d({b})")


def leibniz_defect(module: KaehlerModule, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """``d(uv) - u d(v) - v d(u)`` as a tensor; it lies in I²."""
    square = module.square
    left = square.left_factor_matrix
    return (
        _d(square, u * v)
        - square.element(left(u.coords).apply(_d(square, v).coords))
        - square.element(left(v.coords).apply(_d(square, u).coords))
    )


@dataclass(frozen=True)
class NontrivialityWitness:
    """A class of I/I² shown nonzero, sitting in one total degree."""

    element: DifferentialClass
    degree: int


def _preferred_degree(degrees: list[int]) -> int:
    positive = [d for d in degrees if d > 0]
    if positive:
        return min(positive)
    negative = [d for d in degrees if d < 0]
    if negative:
        return min(negative)
    return 0


def hh1_nontrivial(
    algebra: GradedAlgebra, module: KaehlerModule | None = None
) -> NontrivialityWitness | None:
    """A nonzero class of I/I², or None when the module vanishes.

    The witness degree is the lowest positive degree of a nonzero piece,
    else the lowest negative one, else zero. Inside that degree ``d(e_i)``
    for a basis element is preferred over a bare generator of I.
    """
    module = module or kaehler_module(algebra)
    pieces = module.module.graded_fingerprint()
    if not pieces:
        return None
    degree = _preferred_degree(list(pieces))
    for i in algebra.indices_in_degree(degree):
        b = algebra.basis_element(i)
        candidate = universal_derivation(algebra, b, module)
        if not candidate.is_zero:
            return NontrivialityWitness(candidate, degree)
    for generator, d in zip(module.ideal.generators.columns(), module.ideal.degrees, strict=True):
        if d == degree and not module.contains_square(generator):
            return NontrivialityWitness(module.class_of(module.square.element(generator)), degree)
    raise InconsistentCertificate("nonzero piece without a generator outside I²")


def degree_zero_differentials_embed(algebra: GradedAlgebra) -> bool | None:
    """Whether the differentials of B_0 inject into those of B.

    Decided when B is connective or coconnective, where ``B -> B_0`` is a
    ring retraction; None for mixed gradings.
    """
    if not (algebra.is_connective or algebra.is_coconnective):
        return None
    outer = kaehler_module(algebra)
    inner = kaehler_module(algebra.degree_zero_part())
    keep = algebra.indices_in_degree(0)
    inner_square, outer_square = inner.square, outer.square
    embedded = []
    for column in inner.ideal.generators.columns():
        coords = [0] * outer_square.rank
        for a, c in enumerate(column):
            if c:
                i, j = inner_square.pair(a)
                coords[outer_square.index(keep[i], keep[j])] = c
        embedded.append(coords)
    base = algebra.base
    zero_squares = [
        c for c, d in zip(outer.squares.columns(), outer.square_degrees, strict=True) if d == 0
    ]
    ambient = ExactMatrix.from_columns(base, embedded, outer_square.rank).hstack(
        ExactMatrix.from_columns(base, zero_squares, outer_square.rank)
    )
    k = len(embedded)
    for relation in kernel_basis(ambient).columns():
        combination = inner.ideal.generators.apply(relation[:k])
        if not inner.contains_square(combination):
            return False
    return True
