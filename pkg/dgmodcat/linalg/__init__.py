from dgmodcat.linalg.elimination import (
    cokernel_projection,
    image_basis,
    independent_columns,
    is_isomorphism,
    kernel_basis,
    left_inverse,
    rank,
    right_inverse,
    rref,
    solve_right,
)
from dgmodcat.linalg.field import BaseField, PrimeField, RationalField, get_field
from dgmodcat.linalg.matrix import Matrix
