"""
Exact rational linear algebra and q-series arithmetic.

Everything downstream (mode actions, Gram matrices, commutant solves) runs on
``fractions.Fraction``; nothing in the engine ever rounds.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Scalar = Fraction
Number = Union[int, Fraction]


def to_scalar(value: Union[Number, str]) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"-1/2"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def to_half_integer(value: Union[Number, str]) -> int:
    """Return the doubled integer for a half-integer value (``3/2 -> 3``)."""
    doubled = 2 * to_scalar(value)
    if doubled.denominator != 1:
        raise ValueError(f"{value} is not a half-integer")
    return int(doubled)


def from_doubled(doubled: int) -> Fraction:
    return Fraction(doubled, 2)


def _pivot_size(value: Fraction) -> int:
    return abs(value.numerator).bit_length() + value.denominator.bit_length()


class SparseMatrix:
    """Sparse matrix over the rationals.

    Entries are kept in a ``(row, col) -> Fraction`` mapping with zero entries
    dropped on construction. Instances are treated as immutable.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], Number]] = None):
        self.rows = rows
        self.cols = cols
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            value = to_scalar(value)
            if value:
                cleaned[(r, c)] = value
        self.entries = cleaned

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]]) -> "SparseMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        entries = {
            (r, c): value
            for r, row in enumerate(rows)
            for c, value in enumerate(row)
            if value
        }
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[Hashable, Number]]) -> Tuple["SparseMatrix", List[Hashable]]:
        """Assemble a matrix whose columns are sparse vectors keyed by arbitrary
        hashable row labels. Returns the matrix and the row label order."""
        row_index: Dict[Hashable, int] = {}
        entries: Dict[Tuple[int, int], Fraction] = {}
        for c, column in enumerate(columns):
            for key, value in column.items():
                if not value:
                    continue
                r = row_index.setdefault(key, len(row_index))
                entries[(r, c)] = to_scalar(value)
        return cls(len(row_index), len(columns), entries), list(row_index)

    def row_dicts(self) -> List[Dict[int, Fraction]]:
        rows: List[Dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            rows[r][c] = value
        return rows

    def multiply_vector(self, vector: Sequence[Number]) -> List[Fraction]:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} against {self.cols} columns")
        result = [Fraction(0)] * self.rows
        for (r, c), value in self.entries.items():
            if vector[c]:
                result[r] += value * vector[c]
        return result

    def to_dense(self) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            dense[r][c] = value
        return dense

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _row_echelon(rows: List[Dict[int, Fraction]], cols: int) -> List[Tuple[int, Dict[int, Fraction]]]:
    """Forward elimination. Returns (pivot column, row) pairs in pivot order."""
    remaining = [row for row in rows if row]
    pivots: List[Tuple[int, Dict[int, Fraction]]] = []
    for col in range(cols):
        candidates = [i for i, row in enumerate(remaining) if col in row]
        if not candidates:
            continue
        # smallest pivot, then sparsest row, keeps coefficient growth down
        best = min(candidates, key=lambda i: (_pivot_size(remaining[i][col]), len(remaining[i])))
        pivot_row = remaining.pop(best)
        pivot_value = pivot_row[col]
        pivot_row = {c: v / pivot_value for c, v in pivot_row.items()}
        for i, row in enumerate(remaining):
            factor = row.get(col)
            if not factor:
                continue
            for c, v in pivot_row.items():
                updated = row.get(c, 0) - factor * v
                if updated:
                    row[c] = updated
                else:
                    row.pop(c, None)
        remaining = [row for row in remaining if row]
        pivots.append((col, pivot_row))
    return pivots


def nullspace(matrix: SparseMatrix) -> Tuple[int, List[List[Fraction]]]:
    """Exact kernel of ``matrix``.

    Returns ``(rank, basis)`` where ``basis`` holds one dense vector per free
    column; ``rank + len(basis) == matrix.cols``.
    """
    pivots = _row_echelon(matrix.row_dicts(), matrix.cols)
    pivot_cols = {col for col, _ in pivots}
    free_cols = [c for c in range(matrix.cols) if c not in pivot_cols]
    basis: List[List[Fraction]] = []
    for free in free_cols:
        solution = [Fraction(0)] * matrix.cols
        solution[free] = Fraction(1)
        for col, row in reversed(pivots):
            total = sum((v * solution[c] for c, v in row.items() if c != col), Fraction(0))
            solution[col] = -total
        basis.append(solution)
    logger.debug(f"nullspace of {matrix!r}: rank {len(pivots)}, kernel {len(basis)}")
    return len(pivots), basis


def rank(matrix: SparseMatrix) -> int:
    return len(_row_echelon(matrix.row_dicts(), matrix.cols))


def invert_matrix(rows: Sequence[Sequence[Number]]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix to invert must be square")
    work = [[to_scalar(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ValueError("singular matrix cannot be inverted")
        work[col], work[pivot] = work[pivot], work[col]
        scale = work[col][col]
        work[col] = [v / scale for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace of a
    sparse vector space with arbitrary sortable keys.

    Every stored row has coefficient 1 at its pivot and 0 at every other pivot,
    so reducing a vector is a single pass over the pivots it touches.
    """

    def __init__(self, vectors: Iterable[Mapping[Hashable, Number]] = ()):
        self._rows: Dict[Hashable, Dict[Hashable, Fraction]] = {}
        for vector in vectors:
            self.add(vector)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Mapping[Hashable, Number]) -> Dict[Hashable, Fraction]:
        residue = {k: to_scalar(v) for k, v in vector.items() if v}
        for pivot in [k for k in residue if k in self._rows]:
            factor = residue.get(pivot)
            if not factor:
                continue
            for k, v in self._rows[pivot].items():
                updated = residue.get(k, 0) - factor * v
                if updated:
                    residue[k] = updated
                else:
                    residue.pop(k, None)
        return residue

    def contains(self, vector: Mapping[Hashable, Number]) -> bool:
        return not self.reduce(vector)

    def add(self, vector: Mapping[Hashable, Number]) -> bool:
        """Insert ``vector``; returns True when the rank grew."""
        residue = self.reduce(vector)
        if not residue:
            return False
        pivot = min(residue)
        scale = residue[pivot]
        new_row = {k: v / scale for k, v in residue.items()}
        for row in self._rows.values():
            factor = row.get(pivot)
            if not factor:
                continue
            for k, v in new_row.items():
                updated = row.get(k, 0) - factor * v
                if updated:
                    row[k] = updated
                else:
                    row.pop(k, None)
        self._rows[pivot] = new_row
        return True

    def rows(self) -> List[Dict[Hashable, Fraction]]:
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def copy(self) -> "EchelonBasis":
        clone = EchelonBasis()
        clone._rows = {p: dict(row) for p, row in self._rows.items()}
        return clone

    def same_span(self, other: "EchelonBasis") -> bool:
        return self.rank == other.rank and all(self.contains(row) for row in other.rows())


@dataclass(frozen=True)
class QSeries:
    """Truncated series in ``q^(1/2)`` with integer coefficients.

    ``coefficients[k]`` is the coefficient of ``q^(k/2)`` for
    ``0 <= k <= order2``; ``order2`` is the doubled truncation order.
    """

    coefficients: Tuple[int, ...]
    order2: int

    def __post_init__(self):
        if self.order2 < 0:
            raise ValueError("truncation order must be non-negative")
        if len(self.coefficients) != self.order2 + 1:
            raise ValueError(
                f"expected {self.order2 + 1} coefficients, got {len(self.coefficients)}"
            )

    @classmethod
    def from_mapping(cls, coefficients: Mapping[int, int], order2: int) -> "QSeries":
        return cls(tuple(int(coefficients.get(k, 0)) for k in range(order2 + 1)), order2)

    @classmethod
    def one(cls, order2: int) -> "QSeries":
        return cls.from_mapping({0: 1}, order2)

    @property
    def order(self) -> Fraction:
        return from_doubled(self.order2)

    def coefficient(self, weight: Union[Number, str]) -> int:
        doubled = to_half_integer(weight)
        if doubled < 0:
            return 0
        if doubled > self.order2:
            raise ValueError(f"q^{weight} lies past the truncation order {self.order}")
        return self.coefficients[doubled]

    def integer_coefficients(self) -> List[int]:
        """Coefficients at q^0, q^1, ... up to the truncation order."""
        return [self.coefficients[k] for k in range(0, self.order2 + 1, 2)]

    def as_dict(self) -> Dict[str, int]:
        return {str(from_doubled(k)): c for k, c in enumerate(self.coefficients)}

    def truncate(self, order2: int) -> "QSeries":
        if order2 > self.order2:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coefficients[: order2 + 1], order2)

    def __add__(self, other: "QSeries") -> "QSeries":
        order2 = min(self.order2, other.order2)
        return QSeries(tuple(self.coefficients[k] + other.coefficients[k] for k in range(order2 + 1)), order2)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + other.scale(-1)

    def scale(self, factor: int) -> "QSeries":
        return QSeries(tuple(factor * c for c in self.coefficients), self.order2)

    def __mul__(self, other: "QSeries") -> "QSeries":
        order2 = min(self.order2, other.order2)
        product = [0] * (order2 + 1)
        for i, a in enumerate(self.coefficients[: order2 + 1]):
            if not a:
                continue
            for j in range(order2 + 1 - i):
                product[i + j] += a * other.coefficients[j]
        return QSeries(tuple(product), order2)

    def halve(self) -> "QSeries":
        if any(c % 2 for c in self.coefficients):
            raise ValueError("series has odd coefficients")
        return QSeries(tuple(c // 2 for c in self.coefficients), self.order2)

    def agrees_with(self, other: "QSeries", order2: Optional[int] = None) -> bool:
        """Exact comparison through ``order2`` (default: the shorter truncation).
        Asking past either truncation is an error rather than a silent pass."""
        limit = min(self.order2, other.order2) if order2 is None else order2
        if limit > self.order2 or limit > other.order2:
            raise ValueError(f"comparison through q^{from_doubled(limit)} exceeds a truncation order")
        return self.coefficients[: limit + 1] == other.coefficients[: limit + 1]


def _divide_by_binomial(coefficients: List[int], step: int, sign: int) -> None:
    """In place: multiply by 1/(1 - sign*x^step)."""
    for k in range(step, len(coefficients)):
        coefficients[k] += sign * coefficients[k - step]


def _product_series(order: Union[Number, str], steps: Iterable[int], power: int, sign: int) -> QSeries:
    order2 = to_half_integer(order)
    if order2 < 0:
        raise ValueError("truncation order must be non-negative")
    coefficients = [0] * (order2 + 1)
    coefficients[0] = 1
    for step in steps:
        if step > order2:
            break
        for _ in range(power):
            _divide_by_binomial(coefficients, step, sign)
    return QSeries(tuple(coefficients), order2)


def heisenberg_series(rank: int, order: Union[Number, str]) -> QSeries:
    """Graded dimension of the rank-``rank`` Heisenberg vertex algebra,
    ``prod_{n>=1} (1 - q^n)^(-rank)``."""
    if rank < 1:
        raise ValueError("Heisenberg rank must be at least 1")
    order2 = to_half_integer(order)
    return _product_series(order, range(2, order2 + 1, 2), rank, 1)


def signed_heisenberg_series(rank: int, order: Union[Number, str]) -> QSeries:
    """``prod_{n>=1} (1 + q^n)^(-rank)``: partitions counted with sign (-1)^parts."""
    if rank < 1:
        raise ValueError("Heisenberg rank must be at least 1")
    order2 = to_half_integer(order)
    return _product_series(order, range(2, order2 + 1, 2), rank, -1)


def heisenberg_plus_series(rank: int, order: Union[Number, str]) -> QSeries:
    """Graded dimension of the fixed points of ``h -> -h``: colored partitions
    with an even number of parts."""
    return (heisenberg_series(rank, order) + signed_heisenberg_series(rank, order)).halve()


def fock_series(pairs: int, order: Union[Number, str]) -> QSeries:
    """Graded dimension of the Weyl Fock space with ``pairs`` pairs,
    ``prod_{n>=1} (1 - q^(n-1/2))^(-2 pairs)``."""
    if pairs < 1:
        raise ValueError("Fock space needs at least one pair")
    order2 = to_half_integer(order)
    return _product_series(order, range(1, order2 + 1, 2), 2 * pairs, 1)
