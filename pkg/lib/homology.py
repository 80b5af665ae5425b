"""Free resolutions, Tor, graded Tor and finite-group cohomology.

Graded modules are ``PresentedModule`` objects whose homogeneous pieces are
the members of the family; every map below preserves degree, so kernels and
images are taken one degree at a time.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from lib.errors import ActionViolation, BaseMismatch, CapExceeded, ValidationFailure
from lib.graded import tensor_modules
from lib.groups import FiniteGroup, GroupAction
from lib.linalg import (
    BaseRing,
    ExactMatrix,
    ModuleFingerprint,
    PresentedModule,
    graded_kernel,
    image_basis,
    kernel_basis,
    module_is_zero,
    solve,
    subquotient,
)
from lib.settings import get_settings

logger = logging.getLogger(__name__)


def _cap(cap: int | None) -> int:
    return get_settings().resolution_cap if cap is None else cap


def _homogeneous_image(
    m: ExactMatrix, degrees: tuple[int, ...]
) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Per-degree column-echelon reduction of a homogeneous matrix."""
    columns = []
    out_degrees: list[int] = []
    for degree in sorted(set(degrees)):
        block = image_basis(m.select_columns([j for j, d in enumerate(degrees) if d == degree]))
        columns.extend(block.columns())
        out_degrees.extend([degree] * block.cols)
    return ExactMatrix.from_columns(m.base, columns, m.rows), tuple(out_degrees)


def _column_degrees(m: ExactMatrix, degrees: tuple[int, ...]) -> tuple[int, ...]:
    """Degree of each homogeneous column; zero columns get degree 0."""
    return tuple(
        degrees[next(i for i, x in enumerate(c) if x)] if any(c) else 0 for c in m.columns()
    )


def minimal_presentation(module: PresentedModule) -> PresentedModule:
    """Isomorphic presentation with diagonal relations and no unit entries.

    Each piece becomes ``free^r + base/(d_1) + ...`` read off its Smith form.
    """
    base = module.base
    degrees: list[int] = []
    relations: list[tuple[int, int]] = []
    for degree, piece in module.pieces().items():
        fingerprint = piece.fingerprint
        for d in fingerprint.torsion:
            relations.append((len(degrees), d))
            degrees.append(degree)
        degrees.extend([degree] * fingerprint.free_rank)
    columns = []
    for row, d in relations:
        column = [0] * len(degrees)
        column[row] = d
        columns.append(column)
    return PresentedModule(
        base, tuple(degrees), ExactMatrix.from_columns(base, columns, len(degrees))
    )


@dataclass(frozen=True)
class Resolution:
    """``... -> F_2 -> F_1 -> F_0 -> M``; ``differentials[k]`` maps F_{k+1} to F_k."""

    module: PresentedModule
    degrees: tuple[tuple[int, ...], ...]
    differentials: tuple[ExactMatrix, ...]
    complete: bool
    length: int

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.degrees)

    def free_degrees(self, k: int) -> tuple[int, ...]:
        return self.degrees[k] if k < len(self.degrees) else ()

    def differential(self, k: int) -> ExactMatrix:
        """``d_k: F_k -> F_{k-1}``; zero outside the computed range."""
        if 1 <= k <= len(self.differentials):
            return self.differentials[k - 1]
        rows = len(self.free_degrees(k - 1)) if k >= 1 else 0
        return ExactMatrix.zeros(self.module.base, rows, len(self.free_degrees(k)))

    def check(self) -> bool:
        """``d∘d = 0``, exactness at each inner position and ``coker d_1 = M``."""
        for k in range(1, len(self.differentials)):
            if not (self.differential(k) @ self.differential(k + 1)).is_zero():
                return False
        for k in range(1, len(self.differentials) + (1 if self.complete else 0)):
            following = self.differential(k + 1)
            for column in kernel_basis(self.differential(k)).columns():
                if any(column) and solve(following, column) is None:
                    return False
        if not (self.differentials or self.complete):
            return True
        top = PresentedModule(self.module.base, self.free_degrees(0), self.differential(1))
        return top.fingerprint == self.module.fingerprint and (
            top.graded_fingerprint() == self.module.graded_fingerprint()
        )


def free_resolution(module: PresentedModule, length: int) -> Resolution:
    """Resolve ``module`` by free modules up to ``F_length``.

    The resolution starts from the Smith-minimal presentation, so over Z it
    stops after one step and over F_p it is just F_0.
    """
    if length < 0:
        raise ValidationFailure(f"resolution length must be nonnegative, got {length}")
    minimal = minimal_presentation(module)
    degrees: list[tuple[int, ...]] = [minimal.degrees]
    differentials: list[ExactMatrix] = []
    current, current_degrees = _homogeneous_image(
        minimal.relations, _column_degrees(minimal.relations, minimal.degrees)
    )
    complete = False
    for _ in range(length):
        if current.cols == 0:
            complete = True
            break
        differentials.append(current)
        degrees.append(current_degrees)
        kernel, kernel_degrees = graded_kernel(current, degrees[-2], current_degrees)
        current, current_degrees = _homogeneous_image(kernel, kernel_degrees)
    else:
        complete = current.cols == 0
    logger.debug("resolution ranks %s (complete %s)", [len(d) for d in degrees], complete)
    return Resolution(module, tuple(degrees), tuple(differentials), complete, length)


def _tensor_degrees(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a in left for b in right)


def tor(
    m: PresentedModule, n: PresentedModule, p: int, cap: int | None = None
) -> PresentedModule:
    """``Tor_p(M, N)`` over the base ring, graded by degree sums.

    Computed as the homology at F_p of ``F ⊗ N``, where chains of ``F_k ⊗ N``
    are vectors on ``F_k ⊗ gens(N)`` modulo ``F_k ⊗ rel(N)``.

    Raises:
        CapExceeded: ``p`` is above the resolution cap
    """
    limit = _cap(cap)
    if p > limit:
        raise CapExceeded(p, limit)
    if p < 0:
        raise ValidationFailure(f"homological degree must be nonnegative, got {p}")
    if m.base != n.base:
        raise BaseMismatch(f"{m.base} vs {n.base}")
    base = m.base
    resolution = free_resolution(m, p + 1)
    identity_n = ExactMatrix.identity(base, n.generator_count)
    rel_degrees = _column_degrees(n.relations, n.degrees)

    def chains(k: int) -> tuple[int, ...]:
        return _tensor_degrees(resolution.free_degrees(k), n.degrees)

    def boundary(k: int) -> ExactMatrix:
        return resolution.differential(k).kron(identity_n)

    def quotient(k: int) -> tuple[ExactMatrix, tuple[int, ...]]:
        size = len(resolution.free_degrees(k))
        return (
            ExactMatrix.identity(base, size).kron(n.relations),
            _tensor_degrees(resolution.free_degrees(k), rel_degrees),
        )

    if p == 0:
        cycles = ExactMatrix.identity(base, len(chains(0)))
        cycle_degrees = chains(0)
    else:
        relations, relation_degrees = quotient(p - 1)
        combined = boundary(p).hstack(relations)
        kernel, kernel_degrees = graded_kernel(
            combined, chains(p - 1), chains(p) + relation_degrees
        )
        cycles = kernel.select_rows(range(len(chains(p))))
        cycle_degrees = kernel_degrees
    relations, relation_degrees = quotient(p)
    span = boundary(p + 1).hstack(relations)
    span_degrees = chains(p + 1) + relation_degrees
    return subquotient(cycles, span, cycle_degrees, span_degrees)


@dataclass(frozen=True)
class GradedTorResult:
    """``Tor_p`` in internal degree ``q`` and its splitting over ``i + j = q``."""

    p: int
    q: int
    pieces: dict[tuple[int, int], PresentedModule]
    total: PresentedModule


def graded_tor(
    b: PresentedModule, c: PresentedModule, p: int, q: int, cap: int | None = None
) -> GradedTorResult:
    """Direct sum of ``Tor_p(B_i, C_j)`` over ``i + j = q``."""
    if b.base != c.base:
        raise BaseMismatch(f"{b.base} vs {c.base}")
    left, right = b.pieces(), c.pieces()
    pieces = {
        (i, q - i): tor(bi, right[q - i], p, cap)
        for i, bi in left.items()
        if q - i in right
    }
    total = PresentedModule.zero(b.base)
    for piece in pieces.values():
        total = total.direct_sum(piece)
    return GradedTorResult(p, q, pieces, total)


@dataclass(frozen=True)
class TableRow:
    """One entry of a bigraded table: homological index, internal degree, invariants."""

    index: int
    degree: int
    fingerprint: ModuleFingerprint


def tor_table(
    m: PresentedModule, n: PresentedModule, max_p: int, cap: int | None = None
) -> list[TableRow]:
    """Nonzero ``Tor_{p,q}(M, N)`` for ``p <= max_p``."""
    return [
        TableRow(p, q, fingerprint)
        for p in range(max_p + 1)
        for q, fingerprint in tor(m, n, p, cap).graded_fingerprint().items()
    ]


@dataclass(frozen=True)
class GModule:
    """Free base-ring module with a degree-preserving linear group action."""

    group: FiniteGroup
    base: BaseRing
    degrees: tuple[int, ...]
    matrices: tuple[ExactMatrix, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @classmethod
    def from_action(cls, action: GroupAction) -> GModule:
        """The algebra acted on, viewed as a module."""
        return cls(action.group, action.target.base, action.target.degrees, action.matrices)

    @classmethod
    def trivial(
        cls, group: FiniteGroup, base: BaseRing, degrees: tuple[int, ...] = (0,)
    ) -> GModule:
        identity = ExactMatrix.identity(base, len(degrees))
        return cls(group, base, degrees, (identity,) * group.order)


def validate_module(module: GModule) -> GModule:
    """Raises ActionViolation unless the matrices form a graded representation."""
    group, r = module.group, module.rank
    if len(module.matrices) != group.order:
        raise ActionViolation("shape", f"{len(module.matrices)} matrices for order {group.order}")
    for g, m in enumerate(module.matrices):
        if (m.rows, m.cols) != (r, r):
            raise ActionViolation("shape", f"matrix for element {g} is not {r}x{r}")
        if any(
            x and module.degrees[i] != module.degrees[j]
            for i, row in enumerate(m.entries)
            for j, x in enumerate(row)
        ):
            raise ActionViolation("degree", f"element {g} does not preserve degrees")
    if not module.matrices[group.identity].is_identity():
        raise ActionViolation("identity", "identity element does not act trivially")
    for g, h in itertools.product(group.elements(), repeat=2):
        if module.matrices[g] @ module.matrices[h] != module.matrices[group.mul(g, h)]:
            raise ActionViolation("composition", f"matrix({g}) * matrix({h})")
    return module


def _accumulate_block(
    block: list[list[int]], offset: int, matrix: ExactMatrix | None, sign: int
) -> None:
    # add sign * matrix (identity when None) at column offset
    for i, row in enumerate(block):
        for k in range(len(block)):
            value = matrix.entries[i][k] if matrix is not None else int(i == k)
            if value:
                row[offset + k] += sign * value


def bar_differential(module: GModule, s: int) -> ExactMatrix:
    """``delta: Map(G^s, M) -> Map(G^(s+1), M)`` of the standard cochain complex.

    Cochain coordinates are ordered by the tuple of group elements
    (lexicographic, table order) and then by module coordinate.
    """
    group, r, base = module.group, module.rank, module.base
    tuples_s = list(itertools.product(group.elements(), repeat=s))
    index_s = {t: k for k, t in enumerate(tuples_s)}
    rows: list[list[int]] = []
    for t in itertools.product(group.elements(), repeat=s + 1):
        block = [[0] * (len(tuples_s) * r) for _ in range(r)]
        _accumulate_block(block, index_s[t[1:]] * r, module.matrices[t[0]], 1)
        for i in range(s):
            merged = t[:i] + (group.mul(t[i], t[i + 1]),) + t[i + 2 :]
            _accumulate_block(block, index_s[merged] * r, None, (-1) ** (i + 1))
        _accumulate_block(block, index_s[t[:s]] * r, None, (-1) ** (s + 1))
        rows.extend(block)
    return ExactMatrix.from_rows(base, rows, len(tuples_s) * r)


def group_cohomology(module: GModule, s: int, cap: int | None = None) -> PresentedModule:
    """``H^s(G, M)`` from the bar cochain complex, graded by module degree.

    Raises:
        CapExceeded: ``s`` is above the resolution cap
    """
    limit = _cap(cap)
    if s > limit:
        raise CapExceeded(s, limit)
    if s < 0:
        raise ValidationFailure(f"cohomological degree must be nonnegative, got {s}")
    order = module.group.order
    degrees_s = module.degrees * order**s
    degrees_next = module.degrees * order ** (s + 1)
    cycles, cycle_degrees = graded_kernel(bar_differential(module, s), degrees_next, degrees_s)
    if s == 0:
        boundaries = ExactMatrix.zeros(module.base, len(degrees_s), 0)
        boundary_degrees: tuple[int, ...] = ()
    else:
        boundaries = bar_differential(module, s - 1)
        boundary_degrees = module.degrees * order ** (s - 1)
    logger.debug("H^%d: %d cocycle generators", s, cycles.cols)
    return subquotient(cycles, boundaries, cycle_degrees, boundary_degrees)


def cohomology_table(module: GModule, max_s: int, cap: int | None = None) -> list[TableRow]:
    """Nonzero ``H^s(G, M)`` pieces for ``s <= max_s``."""
    return [
        TableRow(s, degree, fingerprint)
        for s in range(max_s + 1)
        for degree, fingerprint in group_cohomology(module, s, cap).graded_fingerprint().items()
    ]


@dataclass(frozen=True)
class TensorSelfResult:
    """Whether ``M ⊗ M`` vanishes, with its presentation as evidence."""

    nonzero: bool
    product: PresentedModule

    @property
    def fingerprint(self) -> ModuleFingerprint:
        return self.product.fingerprint


def tensor_self_nonzero(module: PresentedModule) -> TensorSelfResult:
    product = tensor_modules(module, module)
    return TensorSelfResult(not module_is_zero(product), product)


def modules_isomorphic(a: PresentedModule, b: PresentedModule) -> bool:
    """Same invariant factors in every degree."""
    return a.graded_fingerprint() == b.graded_fingerprint()

