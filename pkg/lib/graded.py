"""Finite free graded algebras over a base ring.

An algebra is a named basis with integer degrees, a unit coordinate vector
and a dense table ``table[i][j]`` holding the coordinates of ``e_i * e_j``.
The checked way in is :func:`validate_algebra`; the dataclass constructor
itself trusts its input and is used for algebras derived from valid ones.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

from lib.errors import AxiomViolation, BaseMismatch, DimensionMismatch, ParentMismatch, Violation
from lib.linalg import BaseRing, ExactMatrix, PresentedModule, RingScalar, Vector

logger = logging.getLogger(__name__)

StructureConstant = tuple[int, int, int, RingScalar]
"""``(i, j, k, c)``: the product ``e_i * e_j`` has coefficient ``c`` at ``e_k``."""


def _outer(base: BaseRing, x: Sequence[int], y: Sequence[int]) -> Vector:
    return tuple(base.reduce(a * b) for a in x for b in y)


def _accumulate(base: BaseRing, out: list[int]) -> Vector:
    return tuple(base.reduce(x) for x in out)


@dataclass(frozen=True)
class GradedAlgebra:
    """Finite free graded algebra given by structure constants."""

    base: BaseRing
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    unit: Vector
    table: tuple[tuple[Vector, ...], ...]
    commutative: bool = False

    @property
    def rank(self) -> int:
        return len(self.names)

    def structure_constants(self) -> Iterator[StructureConstant]:
        """Nonzero constants in (i, j, k) order."""
        for i, row in enumerate(self.table):
            for j, product in enumerate(row):
                for k, c in enumerate(product):
                    if c:
                        yield i, j, k, c

    def product_coords(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        out = [0] * self.rank
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.table[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for k, t in enumerate(row[j]):
                    if t:
                        out[k] += c * t
        return _accumulate(self.base, out)

    def left_matrix(self, u: Sequence[int]) -> ExactMatrix:
        """Matrix of ``x -> u * x``."""
        columns = [self.product_coords(u, self._basis_coords(j)) for j in range(self.rank)]
        return ExactMatrix.from_columns(self.base, columns, self.rank)

    def right_matrix(self, u: Sequence[int]) -> ExactMatrix:
        """Matrix of ``x -> x * u``."""
        columns = [self.product_coords(self._basis_coords(j), u) for j in range(self.rank)]
        return ExactMatrix.from_columns(self.base, columns, self.rank)

    def _basis_coords(self, i: int) -> Vector:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def element(self, coords: Sequence[int]) -> AlgebraElement:
        return AlgebraElement(self, tuple(self.base.reduce(c) for c in coords))

    def basis_element(self, i: int) -> AlgebraElement:
        return AlgebraElement(self, self._basis_coords(i))

    def basis(self) -> list[AlgebraElement]:
        return [self.basis_element(i) for i in range(self.rank)]

    def named(self, name: str) -> AlgebraElement:
        return self.basis_element(self.names.index(name))

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, self.unit)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, (0,) * self.rank)

    def elements(self) -> Iterator[AlgebraElement]:
        """Every element; finite bases only."""
        for coords in itertools.product(self.base.elements(), repeat=self.rank):
            yield AlgebraElement(self, coords)

    @property
    def is_graded(self) -> bool:
        return any(self.degrees)

    @property
    def is_connective(self) -> bool:
        return all(d >= 0 for d in self.degrees)

    @property
    def is_coconnective(self) -> bool:
        return all(d <= 0 for d in self.degrees)

    def distinct_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.degrees)))

    def graded_ranks(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))

    def indices_in_degree(self, degree: int) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d == degree)

    def degree_zero_part(self) -> GradedAlgebra:
        """B_0 as an ungraded algebra on the degree-0 basis elements."""
        keep = self.indices_in_degree(0)
        return GradedAlgebra(
            base=self.base,
            names=tuple(self.names[i] for i in keep),
            degrees=(0,) * len(keep),
            unit=tuple(self.unit[i] for i in keep),
            table=tuple(
                tuple(tuple(self.table[i][j][k] for k in keep) for j in keep) for i in keep
            ),
            commutative=self.commutative,
        )

    def opposite(self) -> GradedAlgebra:
        return GradedAlgebra(
            base=self.base,
            names=self.names,
            degrees=self.degrees,
            unit=self.unit,
            table=tuple(
                tuple(self.table[j][i] for j in range(self.rank)) for i in range(self.rank)
            ),
            commutative=self.commutative,
        )


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Coordinates of an element with respect to its parent's basis."""

    parent: GradedAlgebra
    coords: Vector

    def __post_init__(self) -> None:
        if len(self.coords) != self.parent.rank:
            raise DimensionMismatch(
                f"{len(self.coords)} coordinates for an algebra of rank {self.parent.rank}"
            )

    def _same_parent(self, other: AlgebraElement) -> None:
        if other.parent is not self.parent and other.parent != self.parent:
            raise ParentMismatch("elements of different algebras")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coords == other.coords and (
            self.parent is other.parent or self.parent == other.parent
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._same_parent(other)
        return self.parent.element([x + y for x, y in zip(self.coords, other.coords, strict=True)])

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __neg__(self) -> AlgebraElement:
        return self.scale(-1)

    def scale(self, factor: int) -> AlgebraElement:
        return self.parent.element([factor * x for x in self.coords])

    def __mul__(self, other: AlgebraElement | int) -> AlgebraElement:
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self.parent, self, other)

    def __rmul__(self, other: int) -> AlgebraElement:
        return self.scale(other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c)

    def degrees(self) -> set[int]:
        return {self.parent.degrees[i] for i in self.support()}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, degree: int) -> AlgebraElement:
        degrees = self.parent.degrees
        return AlgebraElement(
            self.parent,
            tuple(c if degrees[i] == degree else 0 for i, c in enumerate(self.coords)),
        )

    def __str__(self) -> str:
        terms = []
        for i in self.support():
            c = self.coords[i]
            name = self.parent.names[i]
            terms.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


def multiply(algebra: GradedAlgebra, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the structure constants."""
    for x in (u, v):
        if x.parent is not algebra and x.parent != algebra:
            raise ParentMismatch("factor does not belong to the algebra")
    return AlgebraElement(algebra, algebra.product_coords(u.coords, v.coords))


def _check_shape(
    names: Sequence[str], degrees: Sequence[int], unit: Sequence[int]
) -> list[Violation]:
    rank = len(names)
    problems = []
    if len(degrees) != rank:
        problems.append(Violation("shape", (rank, len(degrees))))
    if len(unit) != rank:
        problems.append(Violation("shape", (rank, len(unit))))
    if len(set(names)) != rank:
        problems.append(Violation("names", (rank, len(set(names)))))
    return problems


def _axiom_violations(algebra: GradedAlgebra) -> list[Violation]:
    n, table, degrees = algebra.rank, algebra.table, algebra.degrees
    violations = [
        Violation("unit", (k,)) for k in range(n) if algebra.unit[k] and degrees[k] != 0
    ]
    for i, j, k, _ in algebra.structure_constants():
        if degrees[k] != degrees[i] + degrees[j]:
            violations.append(Violation("grading", (i, j, k)))
    for j in range(n):
        e_j = algebra._basis_coords(j)
        if algebra.product_coords(algebra.unit, e_j) != e_j:
            violations.append(Violation("unit", (j,)))
        if algebra.product_coords(e_j, algebra.unit) != e_j:
            violations.append(Violation("unit", (j,)))
    for i, j, k in itertools.product(range(n), repeat=3):
        left = algebra.product_coords(table[i][j], algebra._basis_coords(k))
        right = algebra.product_coords(algebra._basis_coords(i), table[j][k])
        if left != right:
            violations.append(Violation("associativity", (i, j, k)))
    if algebra.commutative:
        violations.extend(
            Violation("commutativity", (i, j))
            for i in range(n)
            for j in range(i + 1, n)
            if table[i][j] != table[j][i]
        )
    return violations


def validate_algebra(
    base: BaseRing,
    names: Sequence[str],
    degrees: Sequence[int],
    unit: Sequence[int],
    constants: Iterable[StructureConstant],
    commutative: bool = False,
) -> GradedAlgebra:
    """Build an algebra from raw structure constants, checking every axiom.

    Raises:
        AxiomViolation: listing each failed axiom with the offending indices
    """
    problems = _check_shape(names, degrees, unit)
    if problems:
        raise AxiomViolation(problems)
    n = len(names)
    grid = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, c in constants:
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            problems.append(Violation("index", (i, j, k)))
            continue
        grid[i][j][k] = base.reduce(grid[i][j][k] + c)
    if problems:
        raise AxiomViolation(problems)
    algebra = GradedAlgebra(
        base=base,
        names=tuple(names),
        degrees=tuple(degrees),
        unit=tuple(base.reduce(c) for c in unit),
        table=tuple(tuple(tuple(p) for p in row) for row in grid),
        commutative=commutative,
    )
    violations = _axiom_violations(algebra)
    if violations:
        raise AxiomViolation(violations)
    logger.debug("validated algebra of rank %d over %s", n, base)
    return algebra


def revalidate(algebra: GradedAlgebra) -> GradedAlgebra:
    """Run the full axiom check on an already built algebra."""
    return validate_algebra(
        algebra.base,
        algebra.names,
        algebra.degrees,
        algebra.unit,
        algebra.structure_constants(),
        algebra.commutative,
    )


def algebra_map_failures(
    source: GradedAlgebra, target: GradedAlgebra, matrix: ExactMatrix
) -> list[str]:
    """Why ``matrix`` is not a graded unital algebra map (empty when it is)."""
    if (matrix.rows, matrix.cols) != (target.rank, source.rank):
        return [f"shape {matrix.rows}x{matrix.cols}, expected {target.rank}x{source.rank}"]
    failures = []
    if matrix.apply(source.unit) != target.unit:
        failures.append("unit not preserved")
    for k, j in itertools.product(range(target.rank), range(source.rank)):
        if matrix.entries[k][j] and target.degrees[k] != source.degrees[j]:
            failures.append(f"basis element {j} leaves degree {source.degrees[j]}")
            break
    images = list(matrix.columns())
    for i, j in itertools.product(range(source.rank), repeat=2):
        if matrix.apply(source.table[i][j]) != target.product_coords(images[i], images[j]):
            failures.append(f"product of basis elements {i}, {j} not preserved")
            break
    return failures


def is_algebra_map(source: GradedAlgebra, target: GradedAlgebra, matrix: ExactMatrix) -> bool:
    return not algebra_map_failures(source, target, matrix)


def change_basis(algebra: GradedAlgebra, p: ExactMatrix, p_inverse: ExactMatrix) -> GradedAlgebra:
    """Same algebra in the basis ``f_j = sum_i p[i][j] e_i``.

    ``p`` must be homogeneous (it only mixes basis elements of equal degree).
    """
    columns = list(p.columns())
    table = tuple(
        tuple(
            p_inverse.apply(algebra.product_coords(columns[a], columns[b]))
            for b in range(algebra.rank)
        )
        for a in range(algebra.rank)
    )
    return GradedAlgebra(
        base=algebra.base,
        names=algebra.names,
        degrees=algebra.degrees,
        unit=p_inverse.apply(algebra.unit),
        table=table,
        commutative=algebra.commutative,
    )


def _unique_names(first: Sequence[str], second: Sequence[str]) -> tuple[str, ...]:
    taken = set(first)
    renamed = []
    for name in second:
        while name in taken:
            name += "'"
        taken.add(name)
        renamed.append(name)
    return tuple(first) + tuple(renamed)


def product_algebras(left: GradedAlgebra, right: GradedAlgebra) -> GradedAlgebra:
    """Direct product ``left x right``."""
    if left.base != right.base:
        raise BaseMismatch(f"{left.base} vs {right.base}")
    n, m = left.rank, right.rank
    zeros = (0,) * (n + m)
    rows = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(left.table[i][j] + (0,) * m)
            elif i >= n and j >= n:
                row.append((0,) * n + right.table[i - n][j - n])
            else:
                row.append(zeros)
        rows.append(tuple(row))
    return GradedAlgebra(
        base=left.base,
        names=_unique_names(left.names, right.names),
        degrees=left.degrees + right.degrees,
        unit=left.unit + right.unit,
        table=tuple(rows),
        commutative=left.commutative and right.commutative,
    )


def tensor_algebras(left: GradedAlgebra, right: GradedAlgebra) -> GradedAlgebra:
    """``left (x)_A right`` with basis ``a⊗b`` in degree ``deg a + deg b``."""
    if left.base != right.base:
        raise BaseMismatch(f"{left.base} vs {right.base}")
    base, m = left.base, right.rank
    pairs = list(itertools.product(range(left.rank), range(m)))
    table = tuple(
        tuple(_outer(base, left.table[a][c], right.table[b][d]) for c, d in pairs)
        for a, b in pairs
    )
    return GradedAlgebra(
        base=base,
        names=tuple(f"{left.names[a]}⊗{right.names[b]}" for a, b in pairs),
        degrees=tuple(left.degrees[a] + right.degrees[b] for a, b in pairs),
        unit=_outer(base, left.unit, right.unit),
        table=table,
        commutative=left.commutative and right.commutative,
    )


@dataclass(frozen=True)
class TensorSquare:
    """``B (x)_A B`` or, with ``op_twisted``, ``B (x)_A B^op``.

    Basis element ``e_i⊗e_j`` has index ``i * n + j`` and bidegree
    ``(d_i, d_j)``. Products follow ``(x⊗y)(x'⊗y') = xx'⊗yy'``, or
    ``xx'⊗y'y`` when twisted.
    """

    factor: GradedAlgebra
    op_twisted: bool = False

    @property
    def rank(self) -> int:
        return self.factor.rank**2

    def index(self, i: int, j: int) -> int:
        return i * self.factor.rank + j

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(index, self.factor.rank)

    @cached_property
    def bidegrees(self) -> tuple[tuple[int, int], ...]:
        d = self.factor.degrees
        return tuple((d[i], d[j]) for i in range(len(d)) for j in range(len(d)))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in self.bidegrees)

    @cached_property
    def mu(self) -> ExactMatrix:
        """Multiplication map to B."""
        b = self.factor
        columns = [b.table[i][j] for i in range(b.rank) for j in range(b.rank)]
        return ExactMatrix.from_columns(b.base, columns, b.rank)

    def product_coords(self, s: Sequence[int], t: Sequence[int]) -> Vector:
        b = self.factor
        n = b.rank
        out = [0] * self.rank
        for a, sa in enumerate(s):
            if not sa:
                continue
            i, j = divmod(a, n)
            for c, tc in enumerate(t):
                if not tc:
                    continue
                k, l = divmod(c, n)
                first = b.table[i][k]
                second = b.table[l][j] if self.op_twisted else b.table[j][l]
                coefficient = sa * tc
                for p, x in enumerate(first):
                    if x:
                        for q, y in enumerate(second):
                            if y:
                                out[p * n + q] += coefficient * x * y
        return _accumulate(b.base, out)

    @cached_property
    def algebra(self) -> GradedAlgebra:
        """The tensor square as an algebra in its own right (total grading)."""
        b = self.factor
        basis = [tuple(1 if k == a else 0 for k in range(self.rank)) for a in range(self.rank)]
        return GradedAlgebra(
            base=b.base,
            names=tuple(f"{x}⊗{y}" for x in b.names for y in b.names),
            degrees=self.degrees,
            unit=_outer(b.base, b.unit, b.unit),
            table=tuple(tuple(self.product_coords(s, t) for t in basis) for s in basis),
            commutative=b.commutative,
        )

    def element(self, coords: Sequence[int]) -> AlgebraElement:
        return self.algebra.element(coords)

    def pure(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """``x⊗y``."""
        for z in (x, y):
            if z.parent is not self.factor and z.parent != self.factor:
                raise ParentMismatch("tensor factor from another algebra")
        return AlgebraElement(self.algebra, _outer(self.factor.base, x.coords, y.coords))

    def left_factor_matrix(self, b: Sequence[int]) -> ExactMatrix:
        """Matrix of ``t -> (b⊗1) * t``."""
        factor = self.factor
        return factor.left_matrix(b).kron(ExactMatrix.identity(factor.base, factor.rank))

    def right_factor_matrix(self, b: Sequence[int]) -> ExactMatrix:
        """Matrix of ``t -> (1⊗b) * t``."""
        factor = self.factor
        inner = factor.right_matrix(b) if self.op_twisted else factor.left_matrix(b)
        return ExactMatrix.identity(factor.base, factor.rank).kron(inner)

    def apply_mu(self, t: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.factor, self.mu.apply(t.coords))

    def factor_pairs(self, t: AlgebraElement) -> list[tuple[AlgebraElement, AlgebraElement]]:
        """Write ``t = sum e_i⊗y_i`` grouped by the left basis element."""
        n = self.factor.rank
        pairs = []
        for i in range(n):
            y = self.factor.element(t.coords[i * n : (i + 1) * n])
            if not y.is_zero():
                pairs.append((self.factor.basis_element(i), y))
        return pairs

    def restrict(self, t: AlgebraElement, indices: Iterable[int]) -> AlgebraElement:
        """Keep only the coordinates in ``indices``."""
        keep = set(indices)
        return AlgebraElement(
            t.parent, tuple(c if a in keep else 0 for a, c in enumerate(t.coords))
        )


def tensor_square(algebra: GradedAlgebra, op_twisted: bool = False) -> TensorSquare:
    return TensorSquare(algebra, op_twisted)


def tensor_modules(m: PresentedModule, n: PresentedModule) -> PresentedModule:
    """``M (x) N``: generators ``g_i⊗h_j``, relations ``rel(M)⊗id`` and ``id⊗rel(N)``."""
    if m.base != n.base:
        raise BaseMismatch(f"{m.base} vs {n.base}")
    base = m.base
    left = m.relations.kron(ExactMatrix.identity(base, n.generator_count))
    right = ExactMatrix.identity(base, m.generator_count).kron(n.relations)
    return PresentedModule(
        base,
        tuple(a + b for a in m.degrees for b in n.degrees),
        left.hstack(right),
    )
