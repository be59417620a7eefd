from typing import Iterable, Sequence

from sqfree_bn.models.field import QQ, Field, FieldScalar
from sqfree_bn.utils.exceptions import DimensionMismatchError, FieldMismatchError

Vector = tuple


class Matrix:
    """
    Dense matrix over an exact field. Empty shapes (0 x n, n x 0) are allowed,
    so the shape is stored explicitly.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(
        self,
        rows: Iterable[Iterable],
        field: Field = QQ,
        ncols: int | None = None,
    ):
        self.field = field
        self.rows: tuple[Vector, ...] = tuple(tuple(field(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise DimensionMismatchError(
                    f"ragged matrix: row of length {len(row)}, expected {ncols}"
                )

    @classmethod
    def _raw(cls, rows: tuple, field: Field, ncols: int) -> "Matrix":
        matrix = cls.__new__(cls)
        matrix.field = field
        matrix.rows = rows
        matrix.nrows = len(rows)
        matrix.ncols = ncols
        return matrix

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        zero = field.zero
        return cls._raw(tuple((zero,) * ncols for _ in range(nrows)), field, ncols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        zero, one = field.zero, field.one
        rows = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        return cls._raw(rows, field, n)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence], nrows: int, field: Field = QQ
    ) -> "Matrix":
        for column in columns:
            if len(column) != nrows:
                raise DimensionMismatchError(
                    f"column of length {len(column)}, expected {nrows}"
                )
        rows = tuple(tuple(field(c[i]) for c in columns) for i in range(nrows))
        return cls._raw(rows, field, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def entry(self, i: int, j: int) -> FieldScalar:
        return self.rows[i][j]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.columns, self.field, self.nrows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        zero = self.field.zero
        cols = other.columns
        rows = tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a != 0), zero) for col in cols)
            for row in self.rows
        )
        return Matrix._raw(rows, self.field, other.ncols)

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.ncols:
            raise DimensionMismatchError(
                f"vector of length {len(vector)} against {self.ncols} columns"
            )
        zero = self.field.zero
        return tuple(
            sum((a * b for a, b in zip(row, vector) if a != 0), zero) for row in self.rows
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        rows = tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        )
        return Matrix._raw(rows, self.field, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, scalar) -> "Matrix":
        c = self.field(scalar)
        rows = tuple(tuple(c * x for x in row) for row in self.rows)
        return Matrix._raw(rows, self.field, self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and all(a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))
        )

    __hash__ = None

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.nrows != other.nrows:
            raise DimensionMismatchError(f"hstack of {self.shape} and {other.shape}")
        rows = tuple(r1 + r2 for r1, r2 in zip(self.rows, other.rows))
        return Matrix._raw(rows, self.field, self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise DimensionMismatchError(f"vstack of {self.shape} and {other.shape}")
        return Matrix._raw(self.rows + other.rows, self.field, self.ncols)

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.rows]

    @classmethod
    def from_strings(
        cls, rows: Sequence[Sequence[str]], field: Field, ncols: int | None = None
    ) -> "Matrix":
        return cls([[field.parse(str(x)) for x in row] for row in rows], field, ncols)

    def __repr__(self) -> str:
        return f"Matrix({self.to_strings()}, {self.field.name}, shape={self.shape})"


def block_diagonal(blocks: Sequence[Matrix], field: Field = QQ) -> Matrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    zero = field.zero
    rows = list()
    offset = 0
    for block in blocks:
        for row in block.rows:
            rows.append((zero,) * offset + row + (zero,) * (ncols - offset - block.ncols))
        offset += block.ncols
    return Matrix._raw(tuple(rows), field, ncols)
