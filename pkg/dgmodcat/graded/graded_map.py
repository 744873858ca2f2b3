import logging
from typing import Any

from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import DimensionMismatchError, FieldMismatchError, InvalidStructureError

logger = logging.getLogger(__name__)


class GradedMap:
    """
    A homogeneous k-linear map of the given degree between graded complexes, stored as one
    target.dim x source.dim matrix.
    """

    def __init__(
        self,
        source: GradedComplex,
        target: GradedComplex,
        matrix: Matrix,
        degree: int = 0,
        validate: bool = True,
    ):
        self.source = source
        self.target = target
        self.matrix = matrix
        self.degree = int(degree)
        if validate:
            self._validate()

    def _validate(self):
        if self.source.field != self.target.field:
            raise FieldMismatchError(f"{self.source.field} vs {self.target.field}")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError(
                f"Map matrix has shape {self.matrix.shape}, expected {(self.target.dim, self.source.dim)}"
            )
        for (i, j) in self.matrix.nonzero_entries():
            if self.target.degrees[i] != self.source.degrees[j] + self.degree:
                raise InvalidStructureError(
                    f"Entry ({i}, {j}) is not homogeneous of degree {self.degree}"
                )

    @classmethod
    def identity(cls, complex_: GradedComplex) -> "GradedMap":
        return cls(complex_, complex_, complex_.identity(), 0, validate=False)

    @classmethod
    def zero(cls, source: GradedComplex, target: GradedComplex, degree: int = 0) -> "GradedMap":
        return cls(source, target, Matrix.zeros(source.field, target.dim, source.dim), degree, validate=False)

    @property
    def field(self):
        return self.source.field

    def component(self, degree: int) -> Matrix:
        """The block f_n : source_n -> target_{n + degree}."""
        return self.matrix.extract(self.target.indices(degree + self.degree), self.source.indices(degree))

    def is_chain_map(self) -> bool:
        lhs = self.target.differential @ self.matrix
        rhs = (self.matrix @ self.source.differential).scale(self.field.sign(self.degree))
        return lhs == rhs

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other."""
        if other.target != self.source:
            raise DimensionMismatchError("Maps are not composable")
        return GradedMap(other.source, self.target, self.matrix @ other.matrix, self.degree + other.degree)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return self.compose(other)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if other.degree != self.degree:
            raise DimensionMismatchError("Cannot add maps of different degrees")
        return GradedMap(self.source, self.target, self.matrix + other.matrix, self.degree)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + other.scale(-self.field.one)

    def scale(self, scalar: Any) -> "GradedMap":
        return GradedMap(self.source, self.target, self.matrix.scale(scalar), self.degree, validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"GradedMap(degree={self.degree}, {self.source.dims} -> {self.target.dims})"
