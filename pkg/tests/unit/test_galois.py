"""Tests for Galois certificates and dual bases."""

import pytest

from lib.errors import NotCommutative, NotGalois
from lib.gallery import (
    make_finite_field_ext,
    make_matrix_algebra,
    make_trivial_galois,
    make_truncated_poly,
)
from lib.galois import (
    dual_basis,
    fixed_subring,
    h_map,
    is_galois,
    tensor_square_degree_bound,
    trace,
)
from lib.graded import GradedAlgebra, tensor_square
from lib.groups import GroupAction, cyclic_group, trivial_action, validate_action
from lib.linalg import BaseRing, ExactMatrix

F2 = BaseRing.prime_field(2)
F3 = BaseRing.prime_field(3)
Z4 = BaseRing.integers_mod(4)

GALOIS_INSTANCES = {
    "trivial-F2-C2": lambda: make_trivial_galois(F2, cyclic_group(2)),
    "trivial-Z4-C2": lambda: make_trivial_galois(Z4, cyclic_group(2)),
    "trivial-F3-C3": lambda: make_trivial_galois(F3, cyclic_group(3)),
    "F4": lambda: make_finite_field_ext(2, 2),
    "F8": lambda: make_finite_field_ext(2, 3),
    "F9": lambda: make_finite_field_ext(3, 2),
}


@pytest.fixture
def sign_flip() -> tuple[GradedAlgebra, GroupAction]:
    """F_3[x]/(x^2), x in degree 1, with C_2 acting by x -> -x."""
    algebra = make_truncated_poly(F3, 2, 1)
    flip = ExactMatrix.from_rows(F3, [[1, 0], [0, 2]])
    return algebra, validate_action(
        cyclic_group(2), algebra, [ExactMatrix.identity(F3, 2), flip]
    )


class TestIsGalois:
    """Tests for the Galois decision."""

    @pytest.mark.parametrize("name", sorted(GALOIS_INSTANCES))
    def test_galois_fixtures(self, name: str) -> None:
        """Test that every split and finite-field fixture is certified."""
        algebra, action = GALOIS_INSTANCES[name]()
        certificate = is_galois(algebra, action)
        assert certificate.verdict
        assert certificate.fixed_ring_ok
        assert certificate.h_inverse is not None
        assert (certificate.h @ certificate.h_inverse).is_identity()
        assert certificate.degree_bound.matches

    def test_graded_sign_flip_is_not_galois(
        self, sign_flip: tuple[GradedAlgebra, GroupAction]
    ) -> None:
        """Test that a graded instance fails and the degree bound explains why."""
        algebra, action = sign_flip
        certificate = is_galois(algebra, action)
        assert not certificate.verdict
        assert not certificate.h_iso_ok
        assert certificate.h_inverse is None
        assert certificate.fixed_ring_ok
        assert not certificate.degree_bound.matches

    def test_unfaithful_action_is_not_galois(self) -> None:
        """Test that a trivial action of C_2 fails even where h is not the issue."""
        algebra, _ = make_trivial_galois(F2, cyclic_group(1))
        certificate = is_galois(algebra, trivial_action(cyclic_group(2), algebra))
        assert not certificate.faithful
        assert not certificate.verdict

    def test_fixed_ring_too_large(self) -> None:
        """Test that the fixed ring of a trivial group action is all of B."""
        algebra, _ = make_trivial_galois(F2, cyclic_group(2))
        action = trivial_action(cyclic_group(1), algebra)
        certificate = is_galois(algebra, action)
        assert not certificate.fixed_ring_ok
        assert len(fixed_subring(algebra, action)) == 2

    def test_noncommutative_refused(self) -> None:
        """Test that matrix rings are refused."""
        algebra = make_matrix_algebra(F2)
        with pytest.raises(NotCommutative):
            h_map(algebra, trivial_action(cyclic_group(1), algebra))

    def test_h_map_shape(self) -> None:
        """Test that h stacks |G| blocks of rank n over n^2 columns."""
        algebra, action = make_finite_field_ext(2, 3)
        h = h_map(algebra, action)
        assert (h.rows, h.cols) == (9, 9)

    @pytest.mark.parametrize("name", sorted(GALOIS_INSTANCES))
    def test_h_map_is_multiplicative(self, name: str) -> None:
        """Test h(st) = h(s)h(t) blockwise for pure basis tensors s and t."""
        algebra, action = GALOIS_INSTANCES[name]()
        h = h_map(algebra, action)
        square = tensor_square(algebra)
        n = algebra.rank
        basis = algebra.basis()
        pure = [square.pure(x, y).coords for x in basis for y in basis]
        for s in pure:
            for t in pure:
                product = h.apply(square.product_coords(s, t))
                hs, ht = h.apply(s), h.apply(t)
                for g in range(action.group.order):
                    block = slice(g * n, (g + 1) * n)
                    assert product[block] == algebra.product_coords(hs[block], ht[block])

    @pytest.mark.parametrize("name", ["F4", "F9", "trivial-F3-C3"])
    def test_h_map_is_product_after_action(self, name: str) -> None:
        """Test that block g of h(e_i⊗e_j) is e_i * g(e_j)."""
        algebra, action = GALOIS_INSTANCES[name]()
        h = h_map(algebra, action)
        n = algebra.rank
        for g in range(action.group.order):
            for i, x in enumerate(algebra.basis()):
                for j, y in enumerate(algebra.basis()):
                    column = h.column(i * n + j)
                    assert column[g * n : (g + 1) * n] == (x * action.act(g, y)).coords


class TestDegreeBound:
    """Tests for the rank comparison of B⊗B against Map(G, B)."""

    def test_ungraded_matches(self) -> None:
        """Test that an ungraded algebra of rank |G| matches."""
        algebra, _ = make_trivial_galois(F2, cyclic_group(3))
        assert tensor_square_degree_bound(algebra, 3).matches

    def test_graded_never_matches(self) -> None:
        """Test that the top degree doubles in B⊗B."""
        bound = tensor_square_degree_bound(make_truncated_poly(F2, 2, 1), 2)
        assert bound.tensor_ranks == {0: 1, 1: 2, 2: 1}
        assert bound.product_ranks == {0: 2, 1: 2}
        assert not bound.matches


class TestDualBasis:
    """Tests for dual bases of Galois extensions."""

    @pytest.mark.parametrize("name", sorted(GALOIS_INSTANCES))
    def test_residuals_vanish(self, name: str) -> None:
        """Test z = sum tr(z y_i) x_i on every basis element."""
        algebra, action = GALOIS_INSTANCES[name]()
        certificate = dual_basis(algebra, action)
        assert all(r.is_zero() for r in certificate.residuals)
        assert certificate.is_retract
        assert 1 <= certificate.projective_rank <= algebra.rank

    def test_trace_lands_in_base(self) -> None:
        """Test that the trace of w in F_4 is 1."""
        algebra, action = make_finite_field_ext(2, 2)
        assert trace(algebra, action, algebra.named("w")) == algebra.one()

    @pytest.mark.parametrize("name", sorted(GALOIS_INSTANCES))
    def test_trace_is_invariant_and_linear(self, name: str) -> None:
        """Test g(tr(x)) = tr(x) and tr(c*x + y) = c*tr(x) + tr(y) on basis pairs."""
        algebra, action = GALOIS_INSTANCES[name]()
        scalars = [1, 2, algebra.base.reduce(-1)]
        for x in algebra.basis():
            tx = trace(algebra, action, x)
            for g in action.group.elements():
                assert action.act(g, tx) == tx
            for y in algebra.basis():
                for c in scalars:
                    combined = trace(algebra, action, x.scale(c) + y)
                    assert combined == tx.scale(c) + trace(algebra, action, y)

    def test_not_galois_refused(self, sign_flip: tuple[GradedAlgebra, GroupAction]) -> None:
        """Test that a dual basis is not produced for a non-Galois instance."""
        algebra, action = sign_flip
        with pytest.raises(NotGalois):
            dual_basis(algebra, action)
