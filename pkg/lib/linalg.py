"""Exact linear algebra over Z, Z/n and F_p.

Everything here works on canonical integer representatives: arbitrary
precision integers over Z, residues in ``[0, n)`` over Z/n and F_p. The one
primitive is a Smith normal form routine with tracked transforms; solving,
kernels, images and module invariants are all read off from it.

Over Z/n the routine runs the integer algorithm on representatives and
reduces every row and column operation modulo n. Reducing an entry by n is
the same as adding a multiple of an adjoined ``n * I`` relation column, so
this is the lifted-to-Z computation with the relation columns applied
implicitly.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import gcd

from sympy import isprime
from sympy.core.intfunc import igcdex

from lib.errors import (
    BaseMismatch,
    DimensionMismatch,
    ParseError,
    PresentationError,
    ValidationFailure,
)

logger = logging.getLogger(__name__)

RingScalar = int
"""Canonical representative of a base-ring element."""

Vector = tuple[int, ...]


class RingKind(str, Enum):
    """The three computable coefficient rings."""

    INTEGERS = "integers"
    INTEGERS_MOD = "integers_mod"
    PRIME_FIELD = "prime_field"


@dataclass(frozen=True)
class BaseRing:
    """Coefficient ring Z, Z/n (n >= 2) or F_p (p prime)."""

    kind: RingKind
    modulus: int = 0

    def __post_init__(self) -> None:
        if self.kind is RingKind.INTEGERS and self.modulus != 0:
            raise ValidationFailure("Z carries no modulus")
        if self.kind is RingKind.INTEGERS_MOD and self.modulus < 2:
            raise ValidationFailure(f"Z/n needs n >= 2, got {self.modulus}")
        if self.kind is RingKind.PRIME_FIELD and not isprime(self.modulus):
            raise ValidationFailure(f"F_p needs a prime p, got {self.modulus}")

    @classmethod
    def integers(cls) -> BaseRing:
        return cls(RingKind.INTEGERS)

    @classmethod
    def integers_mod(cls, n: int) -> BaseRing:
        return cls(RingKind.INTEGERS_MOD, n)

    @classmethod
    def prime_field(cls, p: int) -> BaseRing:
        return cls(RingKind.PRIME_FIELD, p)

    @classmethod
    def parse(cls, descriptor: str) -> BaseRing:
        """Parse ``Z``, ``Z/<n>`` or ``F<p>``."""
        text = descriptor.strip()
        try:
            if text == "Z":
                return cls.integers()
            if text.startswith("Z/"):
                return cls.integers_mod(int(text[2:]))
            if text.startswith("F"):
                return cls.prime_field(int(text[1:]))
        except (ValueError, ValidationFailure) as e:
            raise ParseError(f"bad base ring descriptor '{descriptor}': {e}") from e
        raise ParseError(f"bad base ring descriptor '{descriptor}'")

    def __str__(self) -> str:
        if self.kind is RingKind.INTEGERS:
            return "Z"
        if self.kind is RingKind.INTEGERS_MOD:
            return f"Z/{self.modulus}"
        return f"F{self.modulus}"

    @property
    def is_finite(self) -> bool:
        return self.modulus != 0

    @property
    def is_field(self) -> bool:
        return self.kind is RingKind.PRIME_FIELD

    def reduce(self, value: int) -> RingScalar:
        """Canonical representative of ``value``."""
        return value % self.modulus if self.modulus else value

    def is_unit(self, value: int) -> bool:
        if self.modulus:
            return gcd(value % self.modulus, self.modulus) == 1
        return value in (1, -1)

    def inverse(self, value: int) -> RingScalar:
        if not self.is_unit(value):
            raise ValueError(f"{value} is not a unit in {self}")
        if self.modulus:
            return pow(value, -1, self.modulus)
        return value

    def elements(self) -> range:
        """All elements of a finite base ring."""
        if not self.modulus:
            raise ValueError("Z has infinitely many elements")
        return range(self.modulus)


# --- elementary operations -------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _add_rows(
    m: list[list[int]], i: int, j: int, coeffs: tuple[int, int, int, int], mod: int
) -> None:
    # replace m[i] by a*m[i] + b*m[j] and m[j] by c*m[i] + d*m[j]
    a, b, c, d = coeffs
    top, low = m[i], m[j]
    if mod:
        m[i] = [(a * x + b * y) % mod for x, y in zip(top, low, strict=True)]
        m[j] = [(c * x + d * y) % mod for x, y in zip(top, low, strict=True)]
    else:
        m[i] = [a * x + b * y for x, y in zip(top, low, strict=True)]
        m[j] = [c * x + d * y for x, y in zip(top, low, strict=True)]


def _add_columns(
    m: list[list[int]], i: int, j: int, coeffs: tuple[int, int, int, int], mod: int
) -> None:
    # replace column i by a*col_i + b*col_j and column j by c*col_i + d*col_j
    a, b, c, d = coeffs
    for row in m:
        x, y = row[i], row[j]
        if mod:
            row[i], row[j] = (a * x + b * y) % mod, (c * x + d * y) % mod
        else:
            row[i], row[j] = a * x + b * y, c * x + d * y


def _elimination(pivot: int, entry: int) -> tuple[int, int, int, int]:
    """Unimodular 2x2 step sending ``(pivot, entry)`` to ``(g, 0)``."""
    if entry % pivot == 0:
        return 1, 0, -(entry // pivot), 1
    x, y, g = (int(t) for t in igcdex(pivot, entry))
    return x, y, -(entry // g), pivot // g


def _unit_normalizer(value: int, mod: int) -> int:
    """A unit ``w`` mod ``mod`` with ``value * w = gcd(value, mod)``."""
    g = gcd(value, mod)
    n1 = mod // g
    w0 = pow((value // g) % n1, -1, n1) if n1 > 1 else 0
    for k in range(g):
        w = w0 + k * n1
        if gcd(w, mod) == 1:
            return w
    raise AssertionError("unit lift always exists")


def _smallest_entry(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_size = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            size = abs(row[j])
            if size and (best is None or size < best_size):
                best, best_size = (i, j), size
                if size == 1:
                    return best
    return best


def _non_divisible_row(a: list[list[int]], t: int) -> int | None:
    pivot = a[t][t]
    for i in range(t + 1, len(a)):
        if any(x % pivot for x in a[i][t + 1 :]):
            return i
    return None


def _isolate_pivot(
    a: list[list[int]],
    u: list[list[int]] | None,
    v: list[list[int]] | None,
    t: int,
    mod: int,
) -> None:
    """Clear row and column ``t`` and make a[t][t] divide the rest."""
    rows, cols = len(a), len(a[0])
    while True:
        for i in range(t + 1, rows):
            if a[i][t]:
                step = _elimination(a[t][t], a[i][t])
                _add_rows(a, t, i, step, mod)
                if u is not None:
                    _add_rows(u, t, i, step, mod)
        for j in range(t + 1, cols):
            if a[t][j]:
                step = _elimination(a[t][t], a[t][j])
                _add_columns(a, t, j, step, mod)
                if v is not None:
                    _add_columns(v, t, j, step, mod)
        if any(a[i][t] for i in range(t + 1, rows)):
            continue
        stray = _non_divisible_row(a, t)
        if stray is None:
            return
        _add_rows(a, t, stray, (1, 1, 0, 1), mod)
        if u is not None:
            _add_rows(u, t, stray, (1, 1, 0, 1), mod)


def _smith(
    a: list[list[int]],
    cols: int,
    mod: int,
    track_left: bool = True,
    track_right: bool = True,
) -> tuple[list[int], list[list[int]] | None, list[list[int]] | None]:
    """Diagonalize ``a`` in place.

    Returns the nonzero diagonal (normalized: positive over Z, divisors of n
    over Z/n, ones over F_p) and the transforms u, v with u*a*v = diag.
    """
    rows = len(a)
    u = _identity(rows) if track_left else None
    v = _identity(cols) if track_right else None
    diagonal: list[int] = []
    for t in range(min(rows, cols)):
        found = _smallest_entry(a, t)
        if found is None:
            break
        i, j = found
        a[t], a[i] = a[i], a[t]
        if u is not None:
            u[t], u[i] = u[i], u[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        if v is not None:
            for row in v:
                row[t], row[j] = row[j], row[t]
        _isolate_pivot(a, u, v, t, mod)
        diagonal.append(a[t][t])

    for t, value in enumerate(diagonal):
        scale = _unit_normalizer(value, mod) if mod else (-1 if value < 0 else 1)
        if scale != 1:
            diagonal[t] = value * scale % mod if mod else -value
            if u is not None:
                u[t] = [x * scale % mod if mod else -x for x in u[t]]
    return diagonal, u, v


def _row_echelon(a: list[list[int]], pivot_cols: int, mod: int) -> int:
    """Row-reduce ``a`` in place on its first ``pivot_cols`` columns.

    Returns the number of leading rows that are nonzero on those columns.
    """
    r = 0
    for c in range(pivot_cols):
        if r == len(a):
            break
        lead = next((i for i in range(r, len(a)) if a[i][c]), None)
        if lead is None:
            continue
        a[r], a[lead] = a[lead], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                _add_rows(a, r, i, _elimination(a[r][c], a[i][c]), mod)
        r += 1
    return r


# --- matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of canonical representatives over one base ring."""

    base: BaseRing
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(
        cls, base: BaseRing, rows: Sequence[Sequence[int]], cols: int | None = None
    ) -> ExactMatrix:
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = tuple(tuple(base.reduce(x) for x in row) for row in rows)
        return cls(base, len(entries), width, entries)

    @classmethod
    def from_columns(
        cls, base: BaseRing, columns: Sequence[Sequence[int]], rows: int
    ) -> ExactMatrix:
        if any(len(c) != rows for c in columns):
            raise DimensionMismatch(f"columns must have length {rows}")
        entries = tuple(tuple(base.reduce(c[i]) for c in columns) for i in range(rows))
        return cls(base, rows, len(columns), entries)

    @classmethod
    def zeros(cls, base: BaseRing, rows: int, cols: int) -> ExactMatrix:
        return cls(base, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, base: BaseRing, n: int) -> ExactMatrix:
        return cls(base, n, n, tuple(tuple(map(base.reduce, r)) for r in _identity(n)))

    @classmethod
    def diagonal(cls, base: BaseRing, values: Sequence[int], rows: int, cols: int) -> ExactMatrix:
        grid = [[0] * cols for _ in range(rows)]
        for i, value in enumerate(values):
            grid[i][i] = value
        return cls.from_rows(base, grid, cols)

    @classmethod
    def block_diagonal(cls, base: BaseRing, blocks: Sequence[ExactMatrix]) -> ExactMatrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        grid = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for block in blocks:
            for i, row in enumerate(block.entries):
                grid[r0 + i][c0 : c0 + block.cols] = row
            r0 += block.rows
            c0 += block.cols
        return cls(base, rows, cols, tuple(map(tuple, grid)))

    def _check_base(self, other: ExactMatrix) -> None:
        if other.base != self.base:
            raise BaseMismatch(f"{self.base} vs {other.base}")

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> Iterator[Vector]:
        for j in range(self.cols):
            yield self.column(j)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def transpose(self) -> ExactMatrix:
        if not self.rows:
            return ExactMatrix(self.base, self.cols, 0, tuple(() for _ in range(self.cols)))
        return ExactMatrix(self.base, self.cols, self.rows, tuple(zip(*self.entries, strict=True)))

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_base(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        reduce = self.base.reduce
        columns = [other.column(j) for j in range(other.cols)]
        entries = tuple(
            tuple(reduce(sum(x * y for x, y in zip(row, col, strict=True))) for col in columns)
            for row in self.entries
        )
        return ExactMatrix(self.base, self.rows, other.cols, entries)

    def apply(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        reduce = self.base.reduce
        return tuple(
            reduce(sum(x * y for x, y in zip(row, vector, strict=True) if x))
            for row in self.entries
        )

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_base(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shapes differ")
        return ExactMatrix.from_rows(
            self.base,
            [
                [x + y for x, y in zip(r, s, strict=True)]
                for r, s in zip(self.entries, other.entries, strict=True)
            ],
            self.cols,
        )

    def __neg__(self) -> ExactMatrix:
        return self.scale(-1)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, factor: int) -> ExactMatrix:
        return ExactMatrix.from_rows(
            self.base, [[factor * x for x in row] for row in self.entries], self.cols
        )

    def hstack(self, *others: ExactMatrix) -> ExactMatrix:
        for other in others:
            self._check_base(other)
            if other.rows != self.rows:
                raise DimensionMismatch("hstack needs equal row counts")
        entries = tuple(
            sum((m.entries[i] for m in others), self.entries[i]) for i in range(self.rows)
        )
        return ExactMatrix(self.base, self.rows, self.cols + sum(m.cols for m in others), entries)

    def vstack(self, *others: ExactMatrix) -> ExactMatrix:
        for other in others:
            self._check_base(other)
            if other.cols != self.cols:
                raise DimensionMismatch("vstack needs equal column counts")
        entries = self.entries + tuple(row for m in others for row in m.entries)
        return ExactMatrix(self.base, len(entries), self.cols, entries)

    def kron(self, other: ExactMatrix) -> ExactMatrix:
        """Kronecker product; index (i, k) maps to i * other.rows + k."""
        self._check_base(other)
        grid = [
            [x * y for x in row_a for y in row_b]
            for row_a in self.entries
            for row_b in other.entries
        ]
        return ExactMatrix.from_rows(self.base, grid, self.cols * other.cols)

    def select_columns(self, indices: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(
            self.base,
            self.rows,
            len(indices),
            tuple(tuple(row[j] for j in indices) for row in self.entries),
        )

    def select_rows(self, indices: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(
            self.base, len(indices), self.cols, tuple(self.entries[i] for i in indices)
        )

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            x == (1 if i == j else 0)
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )

    def determinant(self) -> RingScalar:
        """Fraction-free (Bareiss) determinant of the lifted matrix, reduced."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.base.reduce(1)
        a = [list(row) for row in self.entries]
        sign, previous = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
            previous = a[k][k]
        return self.base.reduce(sign * a[n - 1][n - 1])

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class SmithForm:
    """Transforms with ``u @ m @ v == d``."""

    u: ExactMatrix
    d: ExactMatrix
    v: ExactMatrix

    @property
    def diagonal(self) -> Vector:
        return tuple(self.d.entries[i][i] for i in range(min(self.d.rows, self.d.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith_normal_form(m: ExactMatrix) -> SmithForm:
    """Smith normal form with both transforms."""
    logger.debug("smith normal form of %dx%d over %s", m.rows, m.cols, m.base)
    a = m.to_lists()
    diagonal, u, v = _smith(a, m.cols, m.base.modulus)
    assert u is not None
    assert v is not None
    return SmithForm(
        u=ExactMatrix.from_rows(m.base, u, m.rows),
        d=ExactMatrix.diagonal(m.base, diagonal, m.rows, m.cols),
        v=ExactMatrix.from_rows(m.base, v, m.cols),
    )


def solve(m: ExactMatrix, b: Sequence[int]) -> Vector | None:
    """Some x with ``m @ x == b``, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.rows} rows")
    base, mod = m.base, m.base.modulus
    a = [list(row) + [base.reduce(x)] for row, x in zip(m.entries, b, strict=True)]
    r = _row_echelon(a, m.cols, mod)
    if any(row[-1] for row in a[r:]):
        return None
    reduced = [row[:-1] for row in a[:r]]
    rhs = [row[-1] for row in a[:r]]
    diagonal, u, v = _smith(reduced, m.cols, mod)
    assert u is not None
    assert v is not None
    c = [base.reduce(sum(x * y for x, y in zip(row, rhs, strict=True))) for row in u]
    w = [0] * m.cols
    for i, ci in enumerate(c):
        di = diagonal[i] if i < len(diagonal) else 0
        if di == 0:
            if ci:
                return None
        elif ci % di:
            return None
        else:
            w[i] = ci // di
    return tuple(base.reduce(sum(x * y for x, y in zip(row, w, strict=True))) for row in v)


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns generating ``{x : m @ x == 0}``, torsion generators included."""
    mod = m.base.modulus
    a = m.to_lists()
    r = _row_echelon(a, m.cols, mod)
    diagonal, _, v = _smith(a[:r], m.cols, mod, track_left=False)
    assert v is not None
    generators: list[list[int]] = []
    for j in range(m.cols):
        dj = diagonal[j] if j < len(diagonal) else 0
        column = [v[i][j] for i in range(m.cols)]
        if dj == 0:
            generators.append(column)
        elif mod and dj != 1:
            generators.append([(mod // dj) * x for x in column])
    return ExactMatrix.from_columns(m.base, generators, m.cols)


def image_basis(m: ExactMatrix) -> ExactMatrix:
    """At most ``m.rows`` columns generating the column span of ``m``."""
    a = m.transpose().to_lists()
    r = _row_echelon(a, m.rows, m.base.modulus)
    return ExactMatrix.from_columns(m.base, a[:r], m.rows)


# --- finitely presented modules --------------------------------------------


@dataclass(frozen=True)
class ModuleFingerprint:
    """Isomorphism type: free rank over the base plus invariant factors."""

    base: BaseRing
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = [f"{self.base}^{self.free_rank}"] if self.free_rank > 1 else []
        if self.free_rank == 1:
            parts.append(str(self.base))
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts)


@dataclass(frozen=True)
class PresentedModule:
    """Cokernel of ``relations``; generator i sits in degree ``degrees[i]``."""

    base: BaseRing
    degrees: tuple[int, ...]
    relations: ExactMatrix

    def __post_init__(self) -> None:
        if self.relations.base != self.base:
            raise BaseMismatch(f"relations over {self.relations.base}, module over {self.base}")
        if self.relations.rows != len(self.degrees):
            raise DimensionMismatch(
                f"{self.relations.rows} relation rows for {len(self.degrees)} generators"
            )
        for j, column in enumerate(self.relations.columns()):
            touched = {self.degrees[i] for i, x in enumerate(column) if x}
            if len(touched) > 1:
                raise PresentationError(f"relation {j} touches degrees {sorted(touched)}")

    @classmethod
    def free(cls, base: BaseRing, degrees: Sequence[int]) -> PresentedModule:
        return cls(base, tuple(degrees), ExactMatrix.zeros(base, len(degrees), 0))

    @classmethod
    def zero(cls, base: BaseRing) -> PresentedModule:
        return cls.free(base, ())

    @classmethod
    def cyclic(cls, base: BaseRing, order: int, degree: int = 0) -> PresentedModule:
        """``base / (order)`` in a single degree."""
        return cls(base, (degree,), ExactMatrix.from_rows(base, [[order]], 1))

    @classmethod
    def from_relations(
        cls,
        base: BaseRing,
        relations: Sequence[Sequence[int]],
        degrees: Sequence[int] | None = None,
    ) -> PresentedModule:
        """Build from relation rows (one row per generator)."""
        width = len(relations[0]) if relations else 0
        matrix = ExactMatrix.from_rows(base, relations, width)
        return cls(base, tuple(degrees) if degrees else (0,) * matrix.rows, matrix)

    @property
    def generator_count(self) -> int:
        return len(self.degrees)

    def piece(self, degree: int) -> PresentedModule:
        """The summand generated in ``degree``."""
        keep = [i for i, d in enumerate(self.degrees) if d == degree]
        chosen = set(keep)
        columns = [
            j
            for j, column in enumerate(self.relations.columns())
            if any(column) and all(i in chosen for i, x in enumerate(column) if x)
        ]
        block = self.relations.select_rows(keep).select_columns(columns)
        return PresentedModule(self.base, (degree,) * len(keep), block)

    def pieces(self) -> dict[int, PresentedModule]:
        return {d: self.piece(d) for d in sorted(set(self.degrees))}

    def direct_sum(self, other: PresentedModule) -> PresentedModule:
        if other.base != self.base:
            raise BaseMismatch(f"{self.base} vs {other.base}")
        return PresentedModule(
            self.base,
            self.degrees + other.degrees,
            ExactMatrix.block_diagonal(self.base, [self.relations, other.relations]),
        )

    def shifted(self, offset: int) -> PresentedModule:
        return PresentedModule(self.base, tuple(d + offset for d in self.degrees), self.relations)

    @cached_property
    def fingerprint(self) -> ModuleFingerprint:
        diagonal, _, _ = _smith(
            self.relations.to_lists(),
            self.relations.cols,
            self.base.modulus,
            track_left=False,
            track_right=False,
        )
        return ModuleFingerprint(
            base=self.base,
            free_rank=self.generator_count - len(diagonal),
            torsion=tuple(d for d in diagonal if d != 1),
        )

    def graded_fingerprint(self) -> dict[int, ModuleFingerprint]:
        """Nonzero pieces only."""
        return {
            d: piece.fingerprint
            for d, piece in self.pieces().items()
            if not piece.fingerprint.is_zero
        }


def module_is_zero(p: PresentedModule) -> bool:
    """True iff every SNF diagonal entry of the presentation is a unit."""
    return p.fingerprint.is_zero


def subquotient(
    generators: ExactMatrix,
    span: ExactMatrix,
    degrees: Sequence[int],
    span_degrees: Sequence[int],
) -> PresentedModule:
    """Present ``(A*generators + span) / span`` on the given generators.

    Columns of both matrices live in one ambient free module and must be
    homogeneous; relations are computed degree by degree so they stay so.
    """
    if generators.rows != span.rows:
        raise DimensionMismatch("generators and span live in different ambient modules")
    base = generators.base
    count = generators.cols
    relations: list[list[int]] = []
    for degree in sorted(set(degrees)):
        picked = [k for k, d in enumerate(degrees) if d == degree]
        spanned = [k for k, d in enumerate(span_degrees) if d == degree]
        block = generators.select_columns(picked)
        if spanned:
            block = block.hstack(image_basis(span.select_columns(spanned)))
        for column in kernel_basis(block).columns():
            relation = [0] * count
            for position, k in enumerate(picked):
                relation[k] = column[position]
            if any(relation):
                relations.append(relation)
    return PresentedModule(
        base, tuple(degrees), ExactMatrix.from_columns(base, relations, count)
    )


def graded_kernel(
    m: ExactMatrix, row_degrees: Sequence[int], col_degrees: Sequence[int]
) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Kernel of a degree-preserving map, one homogeneous block at a time."""
    base = m.base
    generators: list[list[int]] = []
    degrees: list[int] = []
    for degree in sorted(set(col_degrees)):
        cols = [j for j, d in enumerate(col_degrees) if d == degree]
        rows = [i for i, d in enumerate(row_degrees) if d == degree]
        block = m.select_rows(rows).select_columns(cols)
        for column in kernel_basis(block).columns():
            full = [0] * m.cols
            for position, j in enumerate(cols):
                full[j] = column[position]
            generators.append(full)
            degrees.append(degree)
    return ExactMatrix.from_columns(base, generators, m.cols), tuple(degrees)
