"""
Gauss-Jordan kernels over the ground field.

sympy's rref pivots on the first nonzero entry of each column, so every basis produced
here is deterministic.
"""
import logging
from typing import List, Optional, Tuple

from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)


def rref(matrix: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    if matrix.rows == 0 or matrix.cols == 0:
        return matrix, ()
    reduced, pivots = matrix.rep.rref()
    return Matrix(matrix.field, reduced.to_sparse()), tuple(int(p) for p in pivots)


def rank(matrix: Matrix) -> int:
    return len(rref(matrix)[1])


def kernel_basis(matrix: Matrix) -> Matrix:
    """
    Columns form a basis of {x : A x = 0}; one column per non-pivot column of A.
    """
    field = matrix.field
    n = matrix.cols
    if matrix.rows == 0:
        return Matrix.identity(field, n)
    reduced, pivots = rref(matrix)
    reduced_rows = reduced.to_rows()
    pivot_set = set(pivots)
    free_columns = [j for j in range(n) if j not in pivot_set]
    entries = {}
    for c, free in enumerate(free_columns):
        entries[(free, c)] = field.one
        for r, pivot in enumerate(pivots):
            value = reduced_rows[r][free]
            if value:
                entries[(pivot, c)] = -value
    return Matrix.from_entries(field, (n, len(free_columns)), entries)


def solve_right(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """
    Find X with A X = B.

    :param a: Coefficient matrix.
    :param b: Right-hand sides, one per column, same row count as a.
    :return: A solution (free variables set to zero), or None when the system is inconsistent.
    """
    if a.rows != b.rows:
        logger.error(f"solve_right called with {a.shape} and {b.shape}")
        raise DimensionMismatchError(f"solve_right needs equal row counts, got {a.rows} and {b.rows}")
    field = a.field
    n = a.cols
    if b.cols == 0:
        return Matrix.zeros(field, n, 0)
    augmented = Matrix.hstack(field, a.rows, [a, b])
    reduced, pivots = rref(augmented)
    if any(p >= n for p in pivots):
        return None
    reduced_rows = reduced.to_rows()
    entries = {}
    for r, pivot in enumerate(pivots):
        for j in range(b.cols):
            value = reduced_rows[r][n + j]
            if value:
                entries[(pivot, j)] = value
    return Matrix.from_entries(field, (n, b.cols), entries)


def is_isomorphism(matrix: Matrix) -> bool:
    return matrix.rows == matrix.cols and rank(matrix) == matrix.rows


def image_basis(matrix: Matrix) -> Matrix:
    """Pivot columns of the matrix, a basis of its column space."""
    _, pivots = rref(matrix)
    return matrix.extract(list(range(matrix.rows)), list(pivots))


def cokernel_projection(matrix: Matrix) -> Matrix:
    """
    A surjection W -> W / im(A) given by a basis of the annihilator of the image.
    """
    return kernel_basis(matrix.transpose()).transpose()


def right_inverse(surjection: Matrix) -> Matrix:
    """A section s with P s = I, for a surjective P."""
    section = solve_right(surjection, Matrix.identity(surjection.field, surjection.rows))
    if section is None:
        raise DimensionMismatchError(f"Matrix of shape {surjection.shape} is not surjective")
    return section


def left_inverse(injection: Matrix) -> Matrix:
    """A retraction r with r J = I, for an injective J."""
    return right_inverse(injection.transpose()).transpose()


def independent_columns(columns: List[Matrix], rows: int) -> List[int]:
    """Indices of a maximal independent subset of the given columns, chosen greedily left to right."""
    if not columns:
        return []
    stacked = Matrix.hstack(columns[0].field, rows, columns)
    return list(rref(stacked)[1])
