"""G-Galois extensions: fixed ring, the h-map, trace and dual basis.

All algebras here are commutative. The h-map sends ``x⊗y`` to the tuple
``(x * g(y))_g`` laid out as ``|G|`` stacked blocks of rank ``n``, block
``g`` in group-table order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from lib.errors import InconsistentCertificate, NoPreimage, NotCommutative, NotGalois
from lib.graded import AlgebraElement, GradedAlgebra, tensor_square
from lib.groups import GroupAction
from lib.linalg import ExactMatrix, RingScalar, graded_kernel, smith_normal_form, solve

logger = logging.getLogger(__name__)


def _require_commutative(algebra: GradedAlgebra) -> None:
    if not algebra.commutative:
        raise NotCommutative("Galois extensions are defined for commutative algebras only")


def _unit_multiple(algebra: GradedAlgebra, coords: tuple[int, ...]) -> RingScalar | None:
    """``c`` with ``coords == c * 1``, if any."""
    column = ExactMatrix.from_columns(algebra.base, [algebra.unit], algebra.rank)
    found = solve(column, coords)
    return None if found is None else found[0]


def fixed_subring(algebra: GradedAlgebra, action: GroupAction) -> list[AlgebraElement]:
    """Homogeneous generators of the submodule fixed by every group element."""
    identity = ExactMatrix.identity(algebra.base, algebra.rank)
    stacked = ExactMatrix.zeros(algebra.base, 0, algebra.rank).vstack(
        *(m - identity for m in action.matrices)
    )
    generators, _ = graded_kernel(
        stacked, algebra.degrees * action.group.order, algebra.degrees
    )
    return [AlgebraElement(algebra, column) for column in generators.columns()]


def h_map(algebra: GradedAlgebra, action: GroupAction) -> ExactMatrix:
    """Matrix of ``x⊗y -> (x * g(y))_g`` on the basis ``e_i⊗e_j``."""
    _require_commutative(algebra)
    n = algebra.rank
    blocks = []
    for m in action.matrices:
        products = [algebra.left_matrix(algebra.basis_element(i).coords) @ m for i in range(n)]
        columns = [products[i].column(j) for i in range(n) for j in range(n)]
        blocks.append(ExactMatrix.from_columns(algebra.base, columns, n))
    return ExactMatrix.zeros(algebra.base, 0, n * n).vstack(*blocks)


def _invert(m: ExactMatrix) -> ExactMatrix | None:
    """Two-sided inverse of a square matrix, None when it is singular."""
    if m.rows != m.cols:
        return None
    form = smith_normal_form(m)
    diagonal = form.diagonal
    if form.rank != m.rows or not all(m.base.is_unit(d) for d in diagonal):
        return None
    inverse_diagonal = ExactMatrix.diagonal(
        m.base, [m.base.inverse(d) for d in diagonal], m.rows, m.rows
    )
    return form.v @ inverse_diagonal @ form.u


@dataclass(frozen=True)
class DegreeBound:
    """Ranks per degree of B⊗B against those of the product of |G| copies of B."""

    tensor_ranks: dict[int, int]
    product_ranks: dict[int, int]

    @property
    def matches(self) -> bool:
        return self.tensor_ranks == self.product_ranks


def tensor_square_degree_bound(algebra: GradedAlgebra, group_order: int) -> DegreeBound:
    """Degree-by-degree rank comparison ruling out a graded h-isomorphism.

    The h-map preserves total degree, so any mismatch forbids invertibility.
    When B has a nonzero degree its extremal degree doubles in B⊗B and the
    ranks never match.
    """
    ranks = algebra.graded_ranks()
    tensor: dict[int, int] = {}
    for a, ra in ranks.items():
        for b, rb in ranks.items():
            tensor[a + b] = tensor.get(a + b, 0) + ra * rb
    return DegreeBound(
        tensor_ranks=dict(sorted(tensor.items())),
        product_ranks={d: group_order * r for d, r in ranks.items()},
    )


@dataclass(frozen=True)
class GaloisCertificate:
    """Evidence for or against the G-Galois property.

    ``h_inverse`` is present exactly when ``h_iso_ok`` holds and satisfies
    ``h @ h_inverse == I``.
    """

    fixed_generators: tuple[AlgebraElement, ...]
    fixed_ring_ok: bool
    h: ExactMatrix
    h_inverse: ExactMatrix | None
    h_iso_ok: bool
    faithful: bool
    degree_bound: DegreeBound

    @property
    def verdict(self) -> bool:
        return self.fixed_ring_ok and self.h_iso_ok and self.faithful


def is_galois(algebra: GradedAlgebra, action: GroupAction) -> GaloisCertificate:
    """Decide whether ``action`` makes ``algebra`` a Galois extension of the base."""
    _require_commutative(algebra)
    fixed = fixed_subring(algebra, action)
    fixed_ok = all(_unit_multiple(algebra, x.coords) is not None for x in fixed)
    h = h_map(algebra, action)
    h_inverse = _invert(h)
    if h_inverse is not None and not (h @ h_inverse).is_identity():
        raise InconsistentCertificate("inverse of the h-map failed its recheck")
    certificate = GaloisCertificate(
        fixed_generators=tuple(fixed),
        fixed_ring_ok=fixed_ok,
        h=h,
        h_inverse=h_inverse,
        h_iso_ok=h_inverse is not None,
        faithful=action.faithful,
        degree_bound=tensor_square_degree_bound(algebra, action.group.order),
    )
    logger.info(
        "galois verdict %s (fixed ring %s, h invertible %s)",
        certificate.verdict,
        fixed_ok,
        certificate.h_iso_ok,
    )
    return certificate


def trace(algebra: GradedAlgebra, action: GroupAction, y: AlgebraElement) -> AlgebraElement:
    """``sum_g g(y)``."""
    total = algebra.zero()
    for g in action.group.elements():
        total = total + action.act(g, y)
    return total


@dataclass(frozen=True)
class DualBasisCertificate:
    """Pairs ``(x_i, y_i)`` with ``z = sum_i tr(z * y_i) x_i`` for every ``z``.

    ``coefficients[j][i]`` is the scalar ``phi_i(e_j)``; ``residuals[j]`` is
    ``sum_i phi_i(e_j) x_i - e_j`` and is zero on every basis element.
    """

    pairs: tuple[tuple[AlgebraElement, AlgebraElement], ...]
    preimage: AlgebraElement
    coefficients: tuple[tuple[RingScalar, ...], ...]
    residuals: tuple[AlgebraElement, ...]
    retraction: ExactMatrix = field(repr=False)
    section: ExactMatrix = field(repr=False)

    @property
    def projective_rank(self) -> int:
        """k such that B is a retract of A^k."""
        return len(self.pairs)

    @property
    def is_retract(self) -> bool:
        return (self.retraction @ self.section).is_identity()


def dual_basis(
    algebra: GradedAlgebra,
    action: GroupAction,
    certificate: GaloisCertificate | None = None,
) -> DualBasisCertificate:
    """Dual basis from the h-preimage of ``(1, 0, ..., 0)``.

    Raises:
        NotGalois: the extension is not Galois
        NoPreimage: the certified h-map missed the target vector
        InconsistentCertificate: a coefficient left the base or a residual is nonzero
    """
    certificate = certificate or is_galois(algebra, action)
    if not certificate.verdict or certificate.h_inverse is None:
        raise NotGalois("dual basis requires a Galois extension")
    n = algebra.rank
    target = [0] * (action.group.order * n)
    offset = action.group.identity * n
    target[offset : offset + n] = algebra.unit
    z = certificate.h_inverse.apply(target)
    if certificate.h.apply(z) != tuple(target):
        raise NoPreimage("h-map has no preimage of the identity-block unit")

    pairs = []
    for i in range(n):
        y = algebra.element(z[i * n : (i + 1) * n])
        if not y.is_zero():
            pairs.append((algebra.basis_element(i), y))

    coefficients = []
    residuals = []
    for j in range(n):
        e_j = algebra.basis_element(j)
        row = []
        total = algebra.zero()
        for x, y in pairs:
            c = _unit_multiple(algebra, trace(algebra, action, e_j * y).coords)
            if c is None:
                raise InconsistentCertificate(f"trace of e_{j} * {y} is not in the base")
            row.append(c)
            total = total + x.scale(c)
        coefficients.append(tuple(row))
        residuals.append(total - e_j)
    if any(not r.is_zero() for r in residuals):
        raise InconsistentCertificate("dual basis formula failed on a basis element")

    k = len(pairs)
    section = ExactMatrix.from_rows(
        algebra.base, [[coefficients[j][i] for j in range(n)] for i in range(k)], n
    )
    retraction = ExactMatrix.from_columns(algebra.base, [x.coords for x, _ in pairs], n)
    return DualBasisCertificate(
        pairs=tuple(pairs),
        preimage=tensor_square(algebra).element(z),
        coefficients=tuple(coefficients),
        residuals=tuple(residuals),
        retraction=retraction,
        section=section,
    )
