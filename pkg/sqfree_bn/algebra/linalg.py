"""
Exact Gaussian elimination over Q and F_p.

Pivoting is deterministic: the pivot of a column is the first row (in order)
with a nonzero entry, so bases returned here are reproducible.
"""

from typing import Sequence

from sqfree_bn.models.field import QQ, Field
from sqfree_bn.models.matrix import Matrix, Vector
from sqfree_bn.utils.exceptions import DimensionMismatchError


def rref(matrix: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Returns the reduced row echelon form and the pivot columns"""
    field = matrix.field
    rows = [list(row) for row in matrix.rows]
    nrows, ncols = matrix.nrows, matrix.ncols
    pivots = list()
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        pivot_row = rows[r]
        for i in range(nrows):
            factor = rows[i][c]
            if i != r and factor != 0:
                rows[i] = [a - factor * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return Matrix._raw(tuple(tuple(row) for row in rows), field, ncols), tuple(pivots)


def rank(matrix: Matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Matrix) -> list[Vector]:
    """Basis of {x : Ax = 0}, one vector per free column"""
    field = matrix.field
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = list()
    for free in range(matrix.ncols):
        if free in pivot_set:
            continue
        x = [field.zero] * matrix.ncols
        x[free] = field.one
        for i, p in enumerate(pivots):
            x[p] = -reduced.rows[i][free]
        basis.append(tuple(x))
    return basis


def solve(matrix: Matrix, b: Sequence) -> Vector | None:
    """One solution of Ax = b, or None when the system is inconsistent"""
    if len(b) != matrix.nrows:
        raise DimensionMismatchError(
            f"right-hand side of length {len(b)} against {matrix.nrows} rows"
        )
    field = matrix.field
    augmented = matrix.hstack(Matrix([[x] for x in b], field, 1)) if matrix.nrows else None
    if augmented is None:
        return tuple([field.zero] * matrix.ncols)
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == matrix.ncols:
        return None
    x = [field.zero] * matrix.ncols
    for i, p in enumerate(pivots):
        x[p] = reduced.rows[i][matrix.ncols]
    return tuple(x)


def row_space(vectors: Sequence[Sequence], length: int, field: Field = QQ) -> list[Vector]:
    """Echelon-normalized basis of the span of the given vectors"""
    if not vectors:
        return []
    reduced, pivots = rref(Matrix(vectors, field, length))
    return [reduced.rows[i] for i in range(len(pivots))]


def column_space(matrix: Matrix) -> list[Vector]:
    return row_space(matrix.columns, matrix.nrows, matrix.field)


def span_rank(vectors: Sequence[Sequence], length: int, field: Field = QQ) -> int:
    if not vectors:
        return 0
    return rank(Matrix(vectors, field, length))


def coordinates(basis: Sequence[Sequence], vector: Sequence, field: Field = QQ) -> Vector | None:
    """Coefficients of vector in the given (independent) basis, None if outside the span"""
    if not basis:
        return () if all(x == 0 for x in vector) else None
    return solve(Matrix.from_columns(basis, len(vector), field), vector)


def in_span(basis: Sequence[Sequence], vector: Sequence, field: Field = QQ) -> bool:
    return coordinates(basis, vector, field) is not None


def intersect(
    first: Sequence[Sequence], second: Sequence[Sequence], length: int, field: Field = QQ
) -> list[Vector]:
    """Basis of span(first) ∩ span(second)"""
    if not first or not second:
        return []
    first = row_space(first, length, field)
    second = row_space(second, length, field)
    # [U | -V] (a, b) = 0  <=>  U a = V b
    stacked = Matrix.from_columns(
        list(first) + [tuple(-x for x in v) for v in second], length, field
    )
    combos = nullspace(stacked)
    zero = field.zero
    vectors = [
        tuple(
            sum((c * u[i] for c, u in zip(combo[: len(first)], first)), zero)
            for i in range(length)
        )
        for combo in combos
    ]
    return row_space(vectors, length, field)


def extend_basis(
    basis: Sequence[Sequence], candidates: Sequence[Sequence], length: int, field: Field = QQ
) -> list[int]:
    """Indices of candidates that greedily extend span(basis)"""
    chosen = list()
    current = list(basis)
    current_rank = span_rank(current, length, field)
    for i, candidate in enumerate(candidates):
        trial = span_rank(current + [candidate], length, field)
        if trial > current_rank:
            current.append(candidate)
            current_rank = trial
            chosen.append(i)
    return chosen


def inverse(matrix: Matrix) -> Matrix | None:
    if not matrix.is_square():
        raise DimensionMismatchError(f"cannot invert a {matrix.shape} matrix")
    n = matrix.nrows
    if n == 0:
        return matrix
    reduced, pivots = rref(matrix.hstack(Matrix.identity(n, matrix.field)))
    if pivots[:n] != tuple(range(n)):
        return None
    return Matrix._raw(tuple(row[n:] for row in reduced.rows), matrix.field, n)


def is_invertible(matrix: Matrix) -> bool:
    return matrix.is_square() and rank(matrix) == matrix.nrows


def is_injective(matrix: Matrix) -> bool:
    return rank(matrix) == matrix.ncols


def is_surjective(matrix: Matrix) -> bool:
    return rank(matrix) == matrix.nrows


def flatten(matrices: Sequence[Matrix]) -> Vector:
    return tuple(x for m in matrices for row in m.rows for x in row)
