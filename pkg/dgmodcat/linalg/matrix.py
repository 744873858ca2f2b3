import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from dgmodcat.linalg.field import BaseField
from dgmodcat.system.exceptions import DimensionMismatchError, FieldMismatchError

logger = logging.getLogger(__name__)


class Matrix:
    """
    Immutable dense-semantics matrix over a BaseField, stored as a sparse sympy DomainMatrix.

    All matrices are kept in sympy's sparse format so that arithmetic never mixes formats.
    """

    def __init__(self, field: BaseField, rep: DomainMatrix):
        self.field = field
        self._rep = rep
        self._rows_cache: Optional[List[List[Any]]] = None
        self._entries_cache: Optional[Dict[Tuple[int, int], Any]] = None

    @classmethod
    def from_entries(
        cls, field: BaseField, shape: Tuple[int, int], entries: Mapping[Tuple[int, int], Any]
    ) -> "Matrix":
        rows, cols = shape
        sparse: Dict[int, Dict[int, Any]] = {}
        for (i, j), value in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatchError(f"Entry ({i}, {j}) outside a {rows}x{cols} matrix")
            element = field.convert(value)
            if element:
                sparse.setdefault(i, {})[j] = element
        return cls(field, DomainMatrix(sparse, (rows, cols), field.domain))

    @classmethod
    def from_rows(cls, field: BaseField, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionMismatchError(f"Row {i} has {len(row)} entries, expected {cols}")
            for j, value in enumerate(row):
                entries[(i, j)] = value
        return cls.from_entries(field, (len(rows), cols), entries)

    @classmethod
    def column(cls, field: BaseField, values: Sequence[Any]) -> "Matrix":
        return cls.from_entries(field, (len(values), 1), {(i, 0): v for i, v in enumerate(values)})

    @classmethod
    def zeros(cls, field: BaseField, rows: int, cols: int) -> "Matrix":
        return cls.from_entries(field, (rows, cols), {})

    @classmethod
    def identity(cls, field: BaseField, n: int) -> "Matrix":
        return cls.from_entries(field, (n, n), {(i, i): field.one for i in range(n)})

    @classmethod
    def diagonal(cls, field: BaseField, values: Sequence[Any]) -> "Matrix":
        n = len(values)
        return cls.from_entries(field, (n, n), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def random(
        cls,
        field: BaseField,
        rows: int,
        cols: int,
        rng: np.random.Generator,
        density: float = 0.5,
    ) -> "Matrix":
        """
        Seeded random matrix: entries in [0, p) over F_p, small integers in [-2, 2] over Q.
        """
        if field.characteristic:
            values = rng.integers(0, field.characteristic, size=(rows, cols))
        else:
            values = rng.integers(-2, 3, size=(rows, cols))
        mask = rng.random(size=(rows, cols)) < density
        entries = {
            (i, j): int(values[i, j]) for i in range(rows) for j in range(cols) if mask[i, j]
        }
        return cls.from_entries(field, (rows, cols), entries)

    @classmethod
    def hstack(cls, field: BaseField, rows: int, blocks: Sequence["Matrix"]) -> "Matrix":
        entries = {}
        offset = 0
        for block in blocks:
            if block.rows != rows:
                raise DimensionMismatchError(f"hstack of a {block.rows}-row block into {rows} rows")
            for (i, j), value in block.nonzero_entries().items():
                entries[(i, offset + j)] = value
            offset += block.cols
        return cls.from_entries(field, (rows, offset), entries)

    @classmethod
    def vstack(cls, field: BaseField, cols: int, blocks: Sequence["Matrix"]) -> "Matrix":
        return cls.hstack(field, cols, [block.transpose() for block in blocks]).transpose()

    @classmethod
    def block_diagonal(cls, field: BaseField, blocks: Sequence["Matrix"]) -> "Matrix":
        entries = {}
        row_offset = col_offset = 0
        for block in blocks:
            for (i, j), value in block.nonzero_entries().items():
                entries[(row_offset + i, col_offset + j)] = value
            row_offset += block.rows
            col_offset += block.cols
        return cls.from_entries(field, (row_offset, col_offset), entries)

    @property
    def rep(self) -> DomainMatrix:
        return self._rep

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self._rep.shape)

    @property
    def rows(self) -> int:
        return self._rep.shape[0]

    @property
    def cols(self) -> int:
        return self._rep.shape[1]

    def to_rows(self) -> List[List[Any]]:
        if self._rows_cache is None:
            if self.rows == 0 or self.cols == 0:
                self._rows_cache = [[] for _ in range(self.rows)]
            else:
                self._rows_cache = [
                    [self.field.convert(value) for value in row] for row in self._rep.to_list()
                ]
        return self._rows_cache

    def nonzero_entries(self) -> Dict[Tuple[int, int], Any]:
        """Read-only view of the nonzero entries keyed by (row, column)."""
        if self._entries_cache is None:
            self._entries_cache = {
                (i, j): value
                for i, row in enumerate(self.to_rows())
                for j, value in enumerate(row)
                if value
            }
        return self._entries_cache

    def entry(self, i: int, j: int) -> Any:
        return self.to_rows()[i][j]

    def column_values(self, j: int) -> List[Any]:
        return [row[j] for row in self.to_rows()]

    def is_zero(self) -> bool:
        return not self.nonzero_entries()

    def _check_compatible(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or self.cols == 0 or other.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix(self.field, self._rep.matmul(other._rep))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot add {self.shape} and {other.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, self._rep + other._rep)

    def __neg__(self) -> "Matrix":
        return self.scale(-self.field.one)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, scalar: Any) -> "Matrix":
        factor = self.field.convert(scalar)
        return Matrix.from_entries(
            self.field, self.shape, {key: value * factor for key, value in self.nonzero_entries().items()}
        )

    def transpose(self) -> "Matrix":
        return Matrix.from_entries(
            self.field, (self.cols, self.rows), {(j, i): v for (i, j), v in self.nonzero_entries().items()}
        )

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def extract(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        rows = self.to_rows()
        return Matrix.from_entries(
            self.field,
            (len(row_indices), len(col_indices)),
            {
                (a, b): rows[i][j]
                for a, i in enumerate(row_indices)
                for b, j in enumerate(col_indices)
                if rows[i][j]
            },
        )

    def embed(self, shape: Tuple[int, int], row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        """
        Place this matrix inside a zero matrix of the given shape at the given rows and columns.
        """
        return Matrix.from_entries(
            self.field,
            shape,
            {(row_indices[i], col_indices[j]): v for (i, j), v in self.nonzero_entries().items()},
        )

    def kron(self, other: "Matrix") -> "Matrix":
        self._check_compatible(other)
        entries = {}
        other_entries = other.nonzero_entries()
        for (i, j), a in self.nonzero_entries().items():
            for (k, l), b in other_entries.items():
                entries[(i * other.rows + k, j * other.cols + l)] = a * b
        return Matrix.from_entries(
            self.field, (self.rows * other.rows, self.cols * other.cols), entries
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self.nonzero_entries() == other.nonzero_entries()
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Matrix({self.field.descriptor}, {self.rows}x{self.cols}, {self.to_rows()})"
