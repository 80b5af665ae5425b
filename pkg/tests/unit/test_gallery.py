"""Tests for the fixture gallery."""

import pytest

from lib.config import CONSTRUCTOR_MAP, GALLERY_MAP
from lib.errors import UnknownName, ValidationFailure
from lib.gallery import (
    build_fixture,
    find_irreducible,
    fixture_names,
    make_finite_field_ext,
    make_truncated_poly,
    matrix_example_is_matrix_ring,
    suggest_name,
)
from lib.graded import revalidate
from lib.linalg import BaseRing


class TestRegistry:
    """Tests for named fixtures."""

    def test_names_sorted(self) -> None:
        """Test that fixture names come back sorted and complete."""
        names = fixture_names()
        assert names == sorted(GALLERY_MAP)
        assert {"f4", "a-x-a", "matrix-graded", "dual-numbers"} <= set(names)

    @pytest.mark.parametrize("name", sorted(GALLERY_MAP))
    def test_every_fixture_builds(self, name: str) -> None:
        """Test that every registered fixture validates."""
        fixture = build_fixture(name)
        assert fixture.name == name
        assert revalidate(fixture.algebra) == fixture.algebra
        assert (fixture.action is not None) == (
            name in CONSTRUCTOR_MAP["finite_field"] + CONSTRUCTOR_MAP["trivial_galois"]
        )

    def test_unknown_name_suggests(self) -> None:
        """Test that a near miss carries the closest fixture name."""
        with pytest.raises(UnknownName) as excinfo:
            build_fixture("dual-number")
        assert excinfo.value.suggestion == "dual-numbers"
        assert "did you mean" in str(excinfo.value)

    def test_unrelated_name_has_no_suggestion(self) -> None:
        """Test that nothing is suggested for a far-off name."""
        assert suggest_name("zzzzzzzz", fixture_names()) is None


class TestFiniteFields:
    """Tests for the finite-field constructors."""

    def test_irreducible_over_f2(self) -> None:
        """Test that x^2 + x + 1 is the first quadratic irreducible over F_2."""
        assert find_irreducible(2, 2).all_coeffs() == [1, 1, 1]

    def test_irreducible_over_f3(self) -> None:
        """Test that x^2 + 1 is the first quadratic irreducible over F_3."""
        assert [int(c) % 3 for c in find_irreducible(3, 2).all_coeffs()] == [1, 0, 1]

    def test_f8_shape(self) -> None:
        """Test that F_8 has rank 3 and a C_3 action."""
        algebra, action = make_finite_field_ext(2, 3)
        assert algebra.rank == 3
        assert action.group.order == 3
        assert algebra.names == ("1", "w", "w^2")

    def test_frobenius_squares_w(self) -> None:
        """Test that the generator of C_2 sends w to w^2 = w + 1 in F_4."""
        algebra, action = make_finite_field_ext(2, 2)
        w = algebra.named("w")
        assert action.act(1, w) == w * w

    def test_degree_one(self) -> None:
        """Test that F_p over itself is rank 1 with the trivial group."""
        algebra, action = make_finite_field_ext(3, 1)
        assert algebra.rank == 1
        assert action.group.order == 1


class TestOtherFixtures:
    """Tests for matrix and truncated polynomial constructors."""

    def test_matrix_example_is_matrix_ring(self) -> None:
        """Test that forgetting the grading gives 2x2 matrices."""
        assert matrix_example_is_matrix_ring(BaseRing.prime_field(2))
        assert matrix_example_is_matrix_ring(BaseRing.integers())

    def test_truncated_degrees(self) -> None:
        """Test that x^i sits in degree i * k."""
        algebra = make_truncated_poly(BaseRing.prime_field(2), 4, -1)
        assert algebra.degrees == (0, -1, -2, -3)
        assert algebra.names == ("1", "x", "x^2", "x^3")

    def test_truncation_order_too_small(self) -> None:
        """Test that A[x]/(x) is refused."""
        with pytest.raises(ValidationFailure):
            make_truncated_poly(BaseRing.prime_field(2), 1, 1)
