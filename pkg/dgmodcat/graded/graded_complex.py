import logging
from collections import Counter
from typing import Dict, List, Mapping, Optional, Sequence

from dgmodcat.linalg.field import BaseField
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidStructureError

logger = logging.getLogger(__name__)


class GradedComplex:
    """
    A finite-dimensional chain complex over k with homological grading.

    The basis is flat: basis vector i sits in degree ``degrees[i]`` and the total differential
    is a square matrix whose only nonzero entries go from degree n to degree n-1.
    """

    def __init__(
        self,
        field: BaseField,
        degrees: Sequence[int],
        differential: Optional[Matrix] = None,
        validate: bool = True,
    ):
        self.field = field
        self.degrees = tuple(int(d) for d in degrees)
        n = len(self.degrees)
        self.differential = differential if differential is not None else Matrix.zeros(field, n, n)
        self._indices: Dict[int, List[int]] = {}
        for index, degree in enumerate(self.degrees):
            self._indices.setdefault(degree, []).append(index)
        if validate:
            self._validate()

    def _validate(self):
        n = self.dim
        if self.differential.shape != (n, n):
            raise DimensionMismatchError(
                f"Differential of shape {self.differential.shape} on a {n}-dimensional complex"
            )
        if self.differential.field != self.field:
            raise DimensionMismatchError("Differential lives over a different field")
        for (i, j) in self.differential.nonzero_entries():
            if self.degrees[i] != self.degrees[j] - 1:
                raise InvalidStructureError(
                    f"Differential entry ({i}, {j}) maps degree {self.degrees[j]} to degree {self.degrees[i]}"
                )
        if not (self.differential @ self.differential).is_zero():
            raise InvalidStructureError("Differential does not square to zero")

    @classmethod
    def from_blocks(
        cls,
        field: BaseField,
        dims: Mapping[int, int],
        differentials: Optional[Mapping[int, Matrix]] = None,
    ) -> "GradedComplex":
        """
        Build from per-degree data; the basis is ordered by ascending degree.

        :param dims: degree -> dimension.
        :param differentials: degree n -> matrix d_n of shape dims[n-1] x dims[n].
        """
        degrees: List[int] = []
        offsets: Dict[int, int] = {}
        for degree in sorted(dims):
            offsets[degree] = len(degrees)
            degrees.extend([degree] * dims[degree])
        n = len(degrees)
        entries = {}
        for degree, block in (differentials or {}).items():
            expected = (dims.get(degree - 1, 0), dims.get(degree, 0))
            if block.shape != expected:
                raise DimensionMismatchError(f"d_{degree} has shape {block.shape}, expected {expected}")
            for (i, j), value in block.nonzero_entries().items():
                entries[(offsets[degree - 1] + i, offsets[degree] + j)] = value
        return cls(field, degrees, Matrix.from_entries(field, (n, n), entries))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def dims(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))

    @property
    def support(self) -> List[int]:
        return sorted(self._indices)

    def indices(self, degree: int) -> List[int]:
        return self._indices.get(degree, [])

    def d(self, degree: int) -> Matrix:
        """The block d_n : X_n -> X_{n-1}."""
        return self.differential.extract(self.indices(degree - 1), self.indices(degree))

    def sign_matrix(self, exponent: int = 1) -> Matrix:
        """diag((-1)^(exponent * |x|)) over the basis."""
        return Matrix.diagonal(self.field, [self.field.sign(exponent * d) for d in self.degrees])

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedComplex):
            return NotImplemented
        return (
            self.field == other.field
            and self.degrees == other.degrees
            and self.differential == other.differential
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"GradedComplex({self.field.descriptor}, dims={self.dims})"
