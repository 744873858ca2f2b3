import logging
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.graded_map import GradedMap
from dgmodcat.graded.operations import tensor_base, unit_object
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)


class DGAlgebra:
    """
    A monoid in Ch(k): carrier complex A, multiplication A (x) A -> A and unit k -> A.

    The multiplication matrix has shape n x n^2; column i * n + j holds e_i e_j.
    """

    def __init__(
        self,
        carrier: GradedComplex,
        multiplication: Matrix,
        unit: Matrix,
        labels: Optional[Sequence[str]] = None,
        idempotents: Optional[Dict[str, Matrix]] = None,
        name: str = "",
    ):
        n = carrier.dim
        if multiplication.shape != (n, n * n):
            raise DimensionMismatchError(f"Multiplication has shape {multiplication.shape}, expected {(n, n * n)}")
        if unit.shape != (n, 1):
            raise DimensionMismatchError(f"Unit has shape {unit.shape}, expected {(n, 1)}")
        self.carrier = carrier
        self.multiplication = multiplication
        self.unit = unit
        self.labels: Tuple[str, ...] = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(n))
        self.idempotents: Dict[str, Matrix] = dict(idempotents or {})
        self.name = name

    @property
    def field(self):
        return self.carrier.field

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.carrier.degrees

    @property
    def differential(self) -> Matrix:
        return self.carrier.differential

    @property
    def is_ring(self) -> bool:
        """Concentrated in degree 0 with zero differential."""
        return all(d == 0 for d in self.degrees) and self.differential.is_zero()

    def multiplication_map(self) -> GradedMap:
        return GradedMap(tensor_base(self.carrier, self.carrier), self.carrier, self.multiplication, validate=False)

    def unit_map(self) -> GradedMap:
        return GradedMap(unit_object(self.field), self.carrier, self.unit, validate=False)

    def basis_vector(self, index: int) -> Matrix:
        return Matrix.from_entries(self.field, (self.dim, 1), {(index, 0): self.field.one})

    def product(self, a: Matrix, b: Matrix) -> Matrix:
        return self.multiplication @ a.kron(b)

    def left_multiplication(self, a: Matrix) -> Matrix:
        """Matrix of b -> a b."""
        return self.multiplication @ a.kron(self.carrier.identity())

    def right_multiplication(self, b: Matrix) -> Matrix:
        """Matrix of a -> a b."""
        return self.multiplication @ self.carrier.identity().kron(b)

    @cached_property
    def opposite(self) -> "DGAlgebra":
        """A^op with a .b = (-1)^(|a||b|) b a."""
        n = self.dim
        field = self.field
        entries = {}
        for (k, column), value in self.multiplication.nonzero_entries().items():
            j, i = divmod(column, n)
            entries[(k, i * n + j)] = value * field.sign(self.degrees[i] * self.degrees[j])
        opposite = DGAlgebra(
            self.carrier,
            Matrix.from_entries(field, (n, n * n), entries),
            self.unit,
            labels=self.labels,
            idempotents=self.idempotents,
            name=f"{self.name}^op" if self.name else "",
        )
        opposite.__dict__["opposite"] = self
        return opposite

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DGAlgebra):
            return NotImplemented
        if self is other:
            return True
        return (
            self.carrier == other.carrier
            and self.multiplication == other.multiplication
            and self.unit == other.unit
        )

    __hash__ = None

    def __repr__(self) -> str:
        label = self.name or "DGAlgebra"
        return f"{label}({self.field.descriptor}, dims={self.carrier.dims})"
