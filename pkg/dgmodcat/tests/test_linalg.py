import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Integer, Rational

from dgmodcat.graded.operations import unvectorize, vectorize
from dgmodcat.linalg.elimination import (
    cokernel_projection,
    image_basis,
    independent_columns,
    is_isomorphism,
    kernel_basis,
    left_inverse,
    rank,
    right_inverse,
    solve_right,
)
from dgmodcat.linalg.field import get_field
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import DimensionMismatchError, FieldMismatchError

F5 = get_field("Fp:5")


def matrix_rows(max_side: int = 5, modulus: int = 5):
    return st.integers(1, max_side).flatmap(
        lambda rows: st.integers(1, max_side).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(0, modulus - 1), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            )
        )
    )


@settings(max_examples=60, deadline=None)
@given(matrix_rows())
def test_rank_of_transpose(rows):
    matrix = Matrix.from_rows(F5, rows)
    assert rank(matrix) == rank(matrix.transpose())


@settings(max_examples=60, deadline=None)
@given(matrix_rows())
def test_kernel_is_annihilated(rows):
    matrix = Matrix.from_rows(F5, rows)
    kernel = kernel_basis(matrix)
    assert (matrix @ kernel).is_zero()
    assert kernel.cols == matrix.cols - rank(matrix)
    assert rank(kernel) == kernel.cols


@settings(max_examples=60, deadline=None)
@given(matrix_rows(), st.data())
def test_solve_reproduces_consistent_right_hand_sides(rows, data):
    matrix = Matrix.from_rows(F5, rows)
    x = Matrix.column(F5, data.draw(st.lists(st.integers(0, 4), min_size=matrix.cols, max_size=matrix.cols)))
    rhs = matrix @ x
    solution = solve_right(matrix, rhs)
    assert solution is not None
    assert matrix @ solution == rhs


def test_inconsistent_system_has_no_solution():
    matrix = Matrix.from_rows(F5, [[1, 0], [0, 0]])
    assert solve_right(matrix, Matrix.column(F5, [0, 1])) is None


def test_solve_rejects_mismatched_rows():
    with pytest.raises(DimensionMismatchError):
        solve_right(Matrix.identity(F5, 2), Matrix.column(F5, [1, 2, 3]))


def test_rational_scalars_are_canonical(rationals):
    assert rationals.format(rationals.parse("6/4")) == "3/2"
    assert rationals.format(rationals.parse("-3/6")) == "-1/2"
    assert rationals.format(rationals.parse(-2)) == "-2/1"
    with pytest.raises(ValueError):
        rationals.parse("1/0")


def test_sympy_rationals_convert_into_both_fields(rationals, f3):
    assert rationals.convert(Rational(6, 4)) == rationals.parse("3/2")
    assert f3.format(f3.convert(Rational(1, 2))) == 2
    assert f3.convert(Integer(5)) == f3.parse(2)
    with pytest.raises(ValueError):
        f3.convert(Rational(1, 3))
    with pytest.raises(ValueError):
        rationals.parse("one half")


def test_prime_field_scalars(f3):
    assert f3.format(f3.parse(2)) == 2
    assert f3.format(f3.parse(2) + f3.parse(2)) == 1
    assert f3.format(-f3.one) == 2
    with pytest.raises(ValueError):
        f3.parse(3)
    with pytest.raises(ValueError):
        get_field("Fp:4")


def test_field_descriptors_round_trip():
    assert get_field("Q").descriptor == "Q"
    assert get_field("Fp:7").descriptor == "Fp:7"
    assert get_field(7) == get_field("Fp:7")


def test_mixed_fields_refuse_to_multiply(f2, f3):
    with pytest.raises(FieldMismatchError):
        Matrix.identity(f2, 2) @ Matrix.identity(f3, 2)


def test_sections_and_retractions(rationals):
    surjection = Matrix.from_rows(rationals, [[1, 2, 0], [0, 1, 1]])
    assert surjection @ right_inverse(surjection) == Matrix.identity(rationals, 2)
    injection = surjection.transpose()
    assert left_inverse(injection) @ injection == Matrix.identity(rationals, 2)
    with pytest.raises(DimensionMismatchError):
        right_inverse(Matrix.from_rows(rationals, [[1, 1], [2, 2]]))


def test_image_and_cokernel(rationals):
    matrix = Matrix.from_rows(rationals, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert image_basis(matrix).cols == rank(matrix) == 2
    projection = cokernel_projection(matrix)
    assert projection.shape == (1, 3)
    assert (projection @ matrix).is_zero()
    assert independent_columns([Matrix.column(rationals, [1, 2, 0]), Matrix.column(rationals, [2, 4, 0])], 3) == [0]


def test_isomorphism_needs_square_full_rank(rationals):
    assert is_isomorphism(Matrix.from_rows(rationals, [[1, 1], [0, 1]]))
    assert not is_isomorphism(Matrix.from_rows(rationals, [[1, 1], [1, 1]]))
    assert not is_isomorphism(Matrix.from_rows(rationals, [[1, 0, 0], [0, 1, 0]]))


def test_vectorization_turns_sandwiches_into_kronecker_products(rng):
    left = Matrix.random(F5, 3, 2, rng)
    middle = Matrix.random(F5, 2, 4, rng)
    right = Matrix.random(F5, 4, 2, rng)
    assert vectorize(left @ middle @ right) == left.kron(right.transpose()) @ vectorize(middle)
    assert unvectorize(vectorize(middle), 2, 4) == middle


def test_random_matrices_are_seeded():
    first = Matrix.random(F5, 4, 4, np.random.default_rng(7))
    second = Matrix.random(F5, 4, 4, np.random.default_rng(7))
    assert first == second


def test_stacking_and_extraction(rationals):
    a = Matrix.from_rows(rationals, [[1, 2]])
    b = Matrix.from_rows(rationals, [[3, 4]])
    stacked = Matrix.vstack(rationals, 2, [a, b])
    assert stacked == Matrix.from_rows(rationals, [[1, 2], [3, 4]])
    assert Matrix.hstack(rationals, 1, [a, b]).cols == 4
    assert stacked.extract([1], [0]) == Matrix.from_rows(rationals, [[3]])
    assert a.embed((2, 3), [1], [0, 2]) == Matrix.from_rows(rationals, [[0, 0, 0], [1, 0, 2]])
