"""Tests for exact linear algebra over Z, Z/n and F_p."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lib.errors import DimensionMismatch, ParseError, PresentationError
from lib.linalg import (
    BaseRing,
    ExactMatrix,
    PresentedModule,
    image_basis,
    kernel_basis,
    module_is_zero,
    smith_normal_form,
    solve,
)

Z = BaseRing.integers()
F2 = BaseRing.prime_field(2)
Z4 = BaseRing.integers_mod(4)

BASES = [Z, F2, BaseRing.prime_field(3), Z4, BaseRing.integers_mod(6)]


@st.composite
def matrices(
    draw: st.DrawFn, base: BaseRing | None = None, max_side: int = 4, bound: int = 20
) -> ExactMatrix:
    """Small matrix over ``base``, or over a randomly chosen base ring."""
    base = base or draw(st.sampled_from(BASES))
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    entries = draw(
        st.lists(
            st.lists(st.integers(-bound, bound), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return ExactMatrix.from_rows(base, entries, cols)


class TestBaseRing:
    """Tests for base ring descriptors and arithmetic."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("Z", Z), ("Z/4", Z4), ("F2", F2), (" F3 ", BaseRing.prime_field(3))],
    )
    def test_parse(self, text: str, expected: BaseRing) -> None:
        """Test that every descriptor form parses."""
        assert BaseRing.parse(text) == expected

    @pytest.mark.parametrize("text", ["Q", "F4", "Z/1", "Z/x", ""])
    def test_parse_rejects(self, text: str) -> None:
        """Test that bad descriptors raise ParseError."""
        with pytest.raises(ParseError):
            BaseRing.parse(text)

    def test_str_round_trip(self) -> None:
        """Test that str gives back the descriptor."""
        for base in BASES:
            assert BaseRing.parse(str(base)) == base

    def test_units_and_inverses(self) -> None:
        """Test unit detection over each kind of ring."""
        assert Z.is_unit(-1)
        assert not Z.is_unit(2)
        assert not Z4.is_unit(2)
        assert Z4.inverse(3) == 3
        assert BaseRing.prime_field(5).inverse(2) == 3


class TestSmithNormalForm:
    """Tests for the Smith normal form and its transforms."""

    def test_diag_two_three(self) -> None:
        """Test the hand-computed diag(2, 3) over Z."""
        form = smith_normal_form(ExactMatrix.from_rows(Z, [[2, 0], [0, 3]]))
        assert form.diagonal == (1, 6)

    def test_zero_matrix(self) -> None:
        """Test that [[0]] stays [[0]]."""
        form = smith_normal_form(ExactMatrix.from_rows(Z, [[0]]))
        assert form.diagonal == (0,)
        assert form.rank == 0

    def test_identity(self) -> None:
        """Test that the identity has unit diagonal."""
        form = smith_normal_form(ExactMatrix.identity(Z, 3))
        assert form.d.is_identity()

    @pytest.mark.parametrize("base", BASES, ids=str)
    @settings(max_examples=1000, deadline=None)
    @given(data=st.data())
    def test_transforms_reproduce_diagonal(self, base: BaseRing, data: st.DataObject) -> None:
        """Test that u @ m @ v == d with invertible u and v."""
        m = data.draw(matrices(base))
        form = smith_normal_form(m)
        assert form.u @ m @ form.v == form.d
        assert m.base.is_unit(form.u.determinant())
        assert m.base.is_unit(form.v.determinant())

    @pytest.mark.parametrize("base", BASES, ids=str)
    @settings(max_examples=300, deadline=None)
    @given(data=st.data())
    def test_divisibility_chain(self, base: BaseRing, data: st.DataObject) -> None:
        """Test that each nonzero diagonal entry divides the next one in the base ring."""
        m = data.draw(matrices(base))
        nonzero = [d for d in smith_normal_form(m).diagonal if d]
        for a, b in itertools.pairwise(nonzero):
            # a | b in Z/n exactly when gcd(a, n) | b
            assert b % math.gcd(a, base.modulus) == 0

    def test_coprime_row_over_integers(self) -> None:
        """Test that [4, 6] over Z reduces to its gcd."""
        form = smith_normal_form(ExactMatrix.from_rows(Z, [[4, 6]]))
        assert form.diagonal == (2,)
        assert Z.is_unit(form.v.determinant())


class TestSolve:
    """Tests for solving linear systems exactly."""

    def test_over_f2(self) -> None:
        """Test [[1,1],[0,1]] x = (0,1) over F_2."""
        m = ExactMatrix.from_rows(F2, [[1, 1], [0, 1]])
        assert solve(m, (0, 1)) == (1, 1)

    def test_parity_obstruction(self) -> None:
        """Test that 2x = 3 has no integer solution."""
        assert solve(ExactMatrix.from_rows(Z, [[2]]), (3,)) is None

    def test_over_z4(self) -> None:
        """Test that 2x = 2 over Z/4 returns a valid representative."""
        x = solve(ExactMatrix.from_rows(Z4, [[2]]), (2,))
        assert x is not None
        assert Z4.reduce(2 * x[0]) == 2

    def test_dimension_mismatch(self) -> None:
        """Test that a right-hand side of the wrong length is rejected."""
        with pytest.raises(DimensionMismatch):
            solve(ExactMatrix.identity(Z, 2), (1,))

    @settings(max_examples=300, deadline=None)
    @given(matrices(), st.data())
    def test_substitution_reproduces_rhs(self, m: ExactMatrix, data: st.DataObject) -> None:
        """Test that a reported solution satisfies the system."""
        b = tuple(data.draw(st.lists(st.integers(-9, 9), min_size=m.rows, max_size=m.rows)))
        x = solve(m, b)
        if x is not None:
            assert m.apply(x) == tuple(m.base.reduce(v) for v in b)


class TestKernelBasis:
    """Tests for kernel generators."""

    def test_torsion_generator_over_z4(self) -> None:
        """Test that ker [2] over Z/4 is generated by 2."""
        kernel = kernel_basis(ExactMatrix.from_rows(Z4, [[2]]))
        assert [list(c) for c in kernel.columns()] == [[2]]

    def test_invertible_matrix(self) -> None:
        """Test that an invertible matrix has no kernel generators."""
        assert kernel_basis(ExactMatrix.from_rows(Z, [[1, 1], [0, 1]])).cols == 0

    def test_zero_matrix(self) -> None:
        """Test that the zero matrix with k columns has k generators."""
        kernel = kernel_basis(ExactMatrix.zeros(Z, 2, 3))
        assert kernel.cols == 3

    @settings(max_examples=300, deadline=None)
    @given(n=st.integers(2, 6), data=st.data())
    def test_exhaustive_over_integers_mod(self, n: int, data: st.DataObject) -> None:
        """Test every kernel vector of a random matrix lies in the span of the generators."""
        base = BaseRing.integers_mod(n)
        m = data.draw(matrices(base, max_side=3, bound=n))
        kernel = kernel_basis(m)
        for column in kernel.columns():
            assert not any(m.apply(column))
        for x in itertools.product(range(n), repeat=m.cols):
            if any(x) and not any(m.apply(x)):
                assert solve(kernel, x) is not None

    def test_image_basis_spans_columns(self) -> None:
        """Test that every original column lies in the reduced image."""
        m = ExactMatrix.from_rows(Z, [[2, 4, 1], [0, 0, 3]])
        image = image_basis(m)
        assert image.cols <= m.rows
        for column in m.columns():
            assert solve(image, column) is not None


class TestPresentedModule:
    """Tests for finitely presented modules and their fingerprints."""

    def test_identity_relations_give_zero(self) -> None:
        """Test that diag(1, 1) presents the zero module."""
        assert module_is_zero(PresentedModule.from_relations(Z, [[1, 0], [0, 1]]))

    def test_cyclic_module_is_nonzero(self) -> None:
        """Test that Z/2 is not zero."""
        module = PresentedModule.cyclic(Z, 2)
        assert not module_is_zero(module)
        assert str(module.fingerprint) == "Z/2"

    def test_free_module(self) -> None:
        """Test that one generator without relations is free of rank 1."""
        module = PresentedModule.free(Z, [0])
        assert not module_is_zero(module)
        assert module.fingerprint.free_rank == 1

    def test_invariant_factors_combine(self) -> None:
        """Test that Z/2 + Z/3 has the single invariant factor 6."""
        module = PresentedModule.cyclic(Z, 2).direct_sum(PresentedModule.cyclic(Z, 3))
        assert module.fingerprint.torsion == (6,)

    def test_fingerprint_text(self) -> None:
        """Test the human-readable form of free and torsion parts."""
        module = PresentedModule.free(F2, [0, 1])
        assert str(module.fingerprint) == "F2^2"
        assert str(PresentedModule.zero(Z).fingerprint) == "0"

    def test_graded_fingerprint_by_degree(self) -> None:
        """Test that pieces are reported per degree, zero pieces dropped."""
        module = PresentedModule(
            Z, (0, 1, 1), ExactMatrix.from_columns(Z, [[1, 0, 0], [0, 2, 0]], 3)
        )
        pieces = module.graded_fingerprint()
        assert list(pieces) == [1]
        assert pieces[1].free_rank == 1
        assert pieces[1].torsion == (2,)

    def test_relation_across_degrees_rejected(self) -> None:
        """Test that a relation touching two degrees is refused."""
        with pytest.raises(PresentationError):
            PresentedModule(Z, (0, 1), ExactMatrix.from_columns(Z, [[1, 1]], 2))
