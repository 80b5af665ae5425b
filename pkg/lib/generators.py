"""Seeded random instances for the fuzz harnesses.

Every draw goes through one ``random.Random`` seeded from the params, so a
(seed, params) pair always yields the same instance. Candidates come from a
handful of structural families: monomial quotients of A[x] and A[x, y],
products and tensor products with split factors, structure-constant
deformations and small noncommutative triangular algebras. A candidate may
then be scrambled by a random homogeneous change of basis. Anything that
fails validation or a lane constraint is rejected and counted.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce

from lib.errors import AxiomViolation, GenerationExhausted, ValidationFailure
from lib.gallery import make_trivial_galois
from lib.graded import (
    GradedAlgebra,
    StructureConstant,
    change_basis,
    product_algebras,
    revalidate,
    tensor_algebras,
    validate_algebra,
)
from lib.groups import GroupAction, cyclic_group, validate_action
from lib.linalg import BaseRing, ExactMatrix, PresentedModule, module_is_zero
from lib.models import GeneratorParams

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

_LETTERS = "xy"


@dataclass
class GenerationStats:
    """Attempt count and rejection reasons for one generator call."""

    attempts: int = 0
    rejections: Counter[str] = field(default_factory=Counter)

    def reject(self, reason: str) -> None:
        self.rejections[reason] += 1
        logger.debug("rejected candidate: %s", reason)


@dataclass(frozen=True)
class GeneratedInstance:
    algebra: GradedAlgebra
    action: GroupAction | None
    family: str
    stats: GenerationStats


class _Rejected(Exception):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


def _base(rng: random.Random, params: GeneratorParams) -> BaseRing:
    return BaseRing.parse(params.base or rng.choice(params.base_choices))


def _scalar(rng: random.Random, base: BaseRing) -> int:
    """A random nonzero scalar."""
    while True:
        c = base.reduce(rng.randint(-3, 3))
        if c:
            return c


def _order_ideal(rng: random.Random, variables: int, size: int) -> list[Monomial]:
    """Random set of monomials closed under division, sorted by total degree."""
    ideal: set[Monomial] = {(0,) * variables}

    def divisors_present(m: Monomial) -> bool:
        return all(
            m[v] == 0 or m[:v] + (m[v] - 1,) + m[v + 1 :] in ideal for v in range(variables)
        )

    while len(ideal) < size:
        frontier = sorted(
            {m[:v] + (m[v] + 1,) + m[v + 1 :] for m in ideal for v in range(variables)} - ideal
        )
        ideal.add(rng.choice([m for m in frontier if divisors_present(m)]))
    return sorted(ideal, key=lambda m: (sum(m), tuple(-e for e in m)))


def _monomial_name(m: Monomial) -> str:
    parts = [
        _LETTERS[v] if e == 1 else f"{_LETTERS[v]}^{e}" for v, e in enumerate(m) if e
    ]
    return "*".join(parts) or "1"


def _monomial_algebra(
    base: BaseRing, monomials: list[Monomial], variable_degrees: list[int]
) -> GradedAlgebra:
    """Span of an order ideal of monomials, products falling outside are zero."""
    position = {m: i for i, m in enumerate(monomials)}
    constants: list[StructureConstant] = []
    for i, a in enumerate(monomials):
        for j, b in enumerate(monomials):
            k = position.get(tuple(x + y for x, y in zip(a, b, strict=True)))
            if k is not None:
                constants.append((i, j, k, 1))
    return validate_algebra(
        base,
        [_monomial_name(m) for m in monomials],
        [sum(e * d for e, d in zip(m, variable_degrees, strict=True)) for m in monomials],
        [1] + [0] * (len(monomials) - 1),
        constants,
        commutative=True,
    )


def _split_algebra(base: BaseRing, k: int) -> GradedAlgebra:
    """``A^k`` on its primitive idempotents."""
    return validate_algebra(
        base,
        [f"e{i + 1}" for i in range(k)],
        [0] * k,
        [1] * k,
        [(i, i, i, 1) for i in range(k)],
        commutative=True,
    )


def _triangular_algebra(base: BaseRing, degree: int) -> GradedAlgebra:
    """Upper triangular 2x2 matrices with ``E12`` in ``degree``."""
    return validate_algebra(
        base,
        ["E11", "E22", "E12"],
        [0, 0, degree],
        [1, 1, 0],
        [(0, 0, 0, 1), (1, 1, 1, 1), (0, 2, 2, 1), (2, 1, 2, 1)],
    )


def _degree_window(params: GeneratorParams) -> tuple[int, int]:
    low, high = params.degree_range
    if params.connective:
        low = max(low, 0)
    if params.coconnective:
        high = min(high, 0)
    if low > high:
        raise _Rejected("degree range")
    return low, high


def _variable_degrees(rng: random.Random, params: GeneratorParams, count: int) -> list[int]:
    low, high = _degree_window(params)
    if params.forbid_graded:
        if not low <= 0 <= high:
            raise _Rejected("degree range")
        return [0] * count
    if not params.degree_zero_trivial:
        return [rng.randint(low, high) for _ in range(count)]
    # nonzero degrees of one sign keep every non-unit monomial out of degree 0
    signs = [s for s in (1, -1) if (high >= 1 if s > 0 else low <= -1)]
    if not signs:
        raise _Rejected("degree range")
    if params.force_negative:
        if -1 not in signs:
            raise _Rejected("degree range")
        # mixed signs allowed; a product landing in degree 0 is rejected with B_0
        nonzero = [d for d in range(low, high + 1) if d]
        return [rng.randint(low, -1)] + [rng.choice(nonzero) for _ in range(count - 1)]
    if rng.choice(signs) > 0:
        return [rng.randint(max(low, 1), high) for _ in range(count)]
    return [rng.randint(low, min(high, -1)) for _ in range(count)]


def _random_monomial_algebra(
    rng: random.Random, params: GeneratorParams, base: BaseRing, size: int
) -> tuple[GradedAlgebra, list[Monomial]]:
    variables = rng.choice((1, 2)) if size > 2 else 1
    monomials = _order_ideal(rng, variables, size)
    return _monomial_algebra(base, monomials, _variable_degrees(rng, params, variables)), monomials


def _deform(
    rng: random.Random, params: GeneratorParams, algebra: GradedAlgebra, stats: GenerationStats
) -> GradedAlgebra:
    """Perturb one homogeneous product; re-draw a broken perturbation a few times."""
    if algebra.rank < 2:
        raise _Rejected("deformation: rank")
    for _ in range(params.repair_budget + 1):
        i = rng.randrange(1, algebra.rank)
        j = rng.randrange(1, algebra.rank)
        target = algebra.indices_in_degree(algebra.degrees[i] + algebra.degrees[j])
        if not target:
            stats.reject("deformation: empty degree")
            continue
        k = rng.choice(target)
        constants = {(a, b, c): x for a, b, c, x in algebra.structure_constants()}
        shift = _scalar(rng, algebra.base)
        for a, b in {(i, j), (j, i)}:
            constants[(a, b, k)] = constants.get((a, b, k), 0) + shift
        try:
            return validate_algebra(
                algebra.base,
                algebra.names,
                algebra.degrees,
                algebra.unit,
                [(a, b, c, x) for (a, b, c), x in sorted(constants.items())],
                commutative=True,
            )
        except AxiomViolation as violation:
            stats.reject("deformation: " + ",".join(sorted(violation.axioms)))
    raise _Rejected("deformation: repair budget")


def _unitriangular(rng: random.Random, algebra: GradedAlgebra) -> tuple[ExactMatrix, ExactMatrix]:
    """Random homogeneous upper unitriangular matrix and its inverse."""
    n = algebra.rank
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for degree in algebra.distinct_degrees():
        block = algebra.indices_in_degree(degree)
        for a, i in enumerate(block):
            for j in block[a + 1 :]:
                p[i][j] = algebra.base.reduce(rng.randint(-2, 2))
    inverse = [[0] * n for _ in range(n)]
    for col in range(n):
        for i in reversed(range(n)):
            tail = sum(p[i][k] * inverse[k][col] for k in range(i + 1, n))
            inverse[i][col] = int(i == col) - tail
    return (
        ExactMatrix.from_rows(algebra.base, p, n),
        ExactMatrix.from_rows(algebra.base, inverse, n),
    )


def _scramble(
    rng: random.Random, algebra: GradedAlgebra, action: GroupAction | None
) -> tuple[GradedAlgebra, GroupAction | None]:
    if rng.random() < 0.5:
        return algebra, action
    p, p_inverse = _unitriangular(rng, algebra)
    scrambled = revalidate(change_basis(algebra, p, p_inverse))
    if action is None:
        return scrambled, None
    conjugated = [p_inverse @ m @ p for m in action.matrices]
    return scrambled, validate_action(action.group, scrambled, conjugated)


def _algebra_family(
    rng: random.Random, params: GeneratorParams, base: BaseRing, stats: GenerationStats
) -> tuple[str, GradedAlgebra]:
    if params.degree_zero_trivial:
        families = ["monomial", "deformed"]
    elif params.degree_zero_extra:
        families = ["tensor", "product"]
    else:
        families = ["monomial", "deformed", "product", "tensor", "split"]
        if not params.commutative:
            families.append("triangular")
    family = rng.choice(families)
    top = params.max_rank
    if family == "split":
        return family, _split_algebra(base, rng.randint(1, top))
    if family == "triangular":
        if top < 3:
            raise _Rejected("rank")
        low, high = _degree_window(params)
        return family, _triangular_algebra(base, rng.randint(low, high))
    if family == "tensor":
        if top < 4:
            raise _Rejected("rank")
        factor, _ = _random_monomial_algebra(rng, params, base, rng.randint(2, top // 2))
        return family, revalidate(tensor_algebras(_split_algebra(base, 2), factor))
    if family == "product":
        if top < 3:
            raise _Rejected("rank")
        size = rng.randint(2, top - 1)
        left, _ = _random_monomial_algebra(rng, params, base, size)
        rest = rng.randint(1, top - size)
        if rng.random() < 0.5:
            right = _split_algebra(base, rest)
        else:
            right, _ = _random_monomial_algebra(rng, params, base, rest)
        return family, revalidate(product_algebras(left, right))
    algebra, _ = _random_monomial_algebra(rng, params, base, rng.randint(min(2, top), top))
    if family == "deformed":
        return family, _deform(rng, params, algebra, stats)
    return family, algebra


def _rotation(
    rng: random.Random, params: GeneratorParams, base: BaseRing
) -> tuple[GradedAlgebra, GroupAction]:
    """``C^k`` with ``C_k`` cycling the factors."""
    group = cyclic_group(params.group_order)
    size_cap = params.max_rank // group.order
    if size_cap < 1:
        raise _Rejected("rank")
    factor, _ = _random_monomial_algebra(rng, params, base, rng.randint(1, size_cap))
    algebra = revalidate(reduce(product_algebras, [factor] * group.order))
    s = factor.rank
    matrices = [
        ExactMatrix.from_columns(
            base,
            [
                [int(row == group.mul(g, col // s) * s + col % s) for row in range(algebra.rank)]
                for col in range(algebra.rank)
            ],
            algebra.rank,
        )
        for g in group.elements()
    ]
    return algebra, validate_action(group, algebra, matrices)


def _sign_flip(
    rng: random.Random, params: GeneratorParams, base: BaseRing
) -> tuple[GradedAlgebra, GroupAction]:
    """``C_2`` negating one variable of a monomial algebra."""
    if base.reduce(-1) == 1:
        raise _Rejected("sign flip: characteristic 2")
    if params.max_rank < 2:
        raise _Rejected("rank")
    size = rng.randint(2, params.max_rank)
    algebra, monomials = _random_monomial_algebra(rng, params, base, size)
    v = rng.randrange(len(monomials[0]))
    flip = ExactMatrix.diagonal(
        base, [base.reduce((-1) ** m[v]) for m in monomials], algebra.rank, algebra.rank
    )
    identity = ExactMatrix.identity(base, algebra.rank)
    return algebra, validate_action(cyclic_group(2), algebra, [identity, flip])


def _swap(
    rng: random.Random, params: GeneratorParams, base: BaseRing
) -> tuple[GradedAlgebra, GroupAction]:
    """``C_2`` exchanging x and y in a symmetric monomial algebra."""
    half = _order_ideal(rng, 2, rng.randint(2, max(2, params.max_rank // 2 + 1)))
    monomials = sorted(
        set(half) | {(b, a) for a, b in half}, key=lambda m: (sum(m), tuple(-e for e in m))
    )
    if len(monomials) > params.max_rank:
        raise _Rejected("rank")
    degree = _variable_degrees(rng, params, 1)[0]
    algebra = _monomial_algebra(base, monomials, [degree, degree])
    position = {m: i for i, m in enumerate(monomials)}
    swap = ExactMatrix.from_columns(
        base,
        [[int(row == position[(b, a)]) for row in range(len(monomials))] for a, b in monomials],
        len(monomials),
    )
    identity = ExactMatrix.identity(base, algebra.rank)
    return algebra, validate_action(cyclic_group(2), algebra, [identity, swap])


def _action_family(
    rng: random.Random, params: GeneratorParams, base: BaseRing
) -> tuple[str, GradedAlgebra, GroupAction]:
    families = ["rotation", "sign-flip", "swap"] if params.group_order == 2 else ["rotation"]
    family = rng.choice(families)
    if family == "sign-flip":
        return family, *_sign_flip(rng, params, base)
    if family == "swap":
        return family, *_swap(rng, params, base)
    return family, *_rotation(rng, params, base)


def _constraint_failure(algebra: GradedAlgebra, params: GeneratorParams) -> str | None:
    if algebra.rank > params.max_rank:
        return "rank"
    if params.commutative and not algebra.commutative:
        return "commutativity"
    if params.connective and not algebra.is_connective:
        return "connective"
    if params.coconnective and not algebra.is_coconnective:
        return "coconnective"
    if params.force_graded and not algebra.is_graded:
        return "ungraded"
    if params.force_negative and min(algebra.degrees) >= 0:
        return "no negative degree"
    if params.forbid_graded and algebra.is_graded:
        return "graded"
    degree_zero = len(algebra.indices_in_degree(0))
    if params.degree_zero_trivial and degree_zero != 1:
        return "degree zero part too large"
    if params.degree_zero_extra and degree_zero < 2:
        return "degree zero part too small"
    return None


def random_graded_algebra(params: GeneratorParams) -> GeneratedInstance:
    """Draw a validated algebra (with an action when ``group_order`` is set).

    Raises:
        GenerationExhausted: every attempt was rejected
    """
    rng = random.Random(params.seed)
    stats = GenerationStats()
    for _ in range(params.max_attempts):
        stats.attempts += 1
        base = _base(rng, params)
        action: GroupAction | None = None
        try:
            if params.group_order:
                family, algebra, action = _action_family(rng, params, base)
            else:
                family, algebra = _algebra_family(rng, params, base, stats)
            algebra, action = _scramble(rng, algebra, action)
        except _Rejected as rejected:
            stats.reject(rejected.reason)
            continue
        except ValidationFailure as failure:
            stats.reject(type(failure).__name__)
            continue
        problem = _constraint_failure(algebra, params)
        if problem:
            stats.reject(problem)
            continue
        logger.debug(
            "seed %d: %s algebra of rank %d over %s after %d attempts",
            params.seed,
            family,
            algebra.rank,
            base,
            stats.attempts,
        )
        return GeneratedInstance(algebra, action, family, stats)
    raise GenerationExhausted(
        f"seed {params.seed}: no instance after {params.max_attempts} attempts "
        f"(rejections: {dict(sorted(stats.rejections.items()))})"
    )


def planted_galois(params: GeneratorParams) -> GeneratedInstance:
    """Ungraded split Galois instance, scrambled, drawn from the same seed stream."""
    rng = random.Random(params.seed)
    base = _base(rng, params)
    algebra, action = make_trivial_galois(base, cyclic_group(max(params.group_order, 2)))
    scrambled, moved = _scramble(rng, algebra, action)
    return GeneratedInstance(scrambled, moved, "planted", GenerationStats(attempts=1))


def random_module(params: GeneratorParams) -> PresentedModule:
    """A nonzero finitely presented module with homogeneous relations.

    Raises:
        GenerationExhausted: every draw presented the zero module
    """
    rng = random.Random(params.seed)
    low, high = params.degree_range
    for _ in range(params.max_attempts):
        base = _base(rng, params)
        count = rng.randint(1, 3)
        degrees = [rng.randint(low, high) for _ in range(count)]
        relations = []
        for _ in range(rng.randint(0, 3)):
            degree = rng.choice(degrees)
            relations.append(
                [base.reduce(rng.randint(-4, 8)) if d == degree else 0 for d in degrees]
            )
        module = PresentedModule(
            base, tuple(degrees), ExactMatrix.from_columns(base, relations, count)
        )
        if not module_is_zero(module):
            return module
        logger.debug("seed %d: drew the zero module, retrying", params.seed)
    raise GenerationExhausted(f"seed {params.seed}: only zero modules drawn")
