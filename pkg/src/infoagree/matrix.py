"""Validated agreement matrices and their combinatorial operations.

An agreement matrix records how two raters, X and Y, classified the same
items into n classes: counts[y][x] is the number of items that rater Y put
in class y while rater X put it in class x. Rows belong to rater Y, columns
to rater X; everything downstream assumes that orientation.

Instances are immutable once constructed (the backing array is marked
read-only), so they can be shared freely across threads.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from infoagree.errors import (
    AllZeroError,
    CountOverflowError,
    DimensionTooSmallError,
    NegativeCellError,
    NonIntegerCellError,
    NotSquareError,
)

U64_MAX = 2**64 - 1

# Float totals below this bound guarantee the exact uint64 accumulation
# cannot wrap (float64 relative error is far smaller than the 4x headroom).
_SAFE_FLOAT_TOTAL = float(2**62)


class AgreementMatrix:
    """Immutable n-by-n matrix of nonnegative integer classification counts.

    Attributes:
        counts: read-only (n, n) uint64 array, counts[y][x] as described above.
        n: number of classes (n >= 2).
        total: exact sum of all cells, cached at construction (> 0).
    """

    __slots__ = ("counts", "n", "total")

    def __init__(self, rows: Sequence[Sequence[int]] | np.ndarray):
        arr = _coerce_counts(rows)
        n = arr.shape[0]
        if n < 2:
            raise DimensionTooSmallError(f"need at least 2 classes, got {n}")
        total = _exact_total(arr)
        if total == 0:
            raise AllZeroError("agreement matrix must contain at least one positive cell")
        arr.setflags(write=False)
        self.counts = arr
        self.n = n
        self.total = total

    @classmethod
    def _from_trusted(cls, counts: np.ndarray, total: int) -> "AgreementMatrix":
        """Wrap an already-validated read-only uint64 array without rechecking."""
        obj = object.__new__(cls)
        obj.counts = counts
        obj.n = counts.shape[0]
        obj.total = total
        return obj

    def row_sums(self) -> np.ndarray:
        """Per-row cell sums (rater Y's class totals), length n, summing to total."""
        return self.counts.sum(axis=1)

    def col_sums(self) -> np.ndarray:
        """Per-column cell sums (rater X's class totals), length n, summing to total."""
        return self.counts.sum(axis=0)

    def transpose(self) -> "AgreementMatrix":
        """The matrix with the raters' roles swapped: result[x][y] = counts[y][x]."""
        flipped = np.ascontiguousarray(self.counts.T)
        flipped.setflags(write=False)
        return AgreementMatrix._from_trusted(flipped, self.total)

    def count_non_null_rows(self) -> int:
        """Number of rows with a positive sum (1 <= result <= n)."""
        return int(np.count_nonzero(self.row_sums()))

    def count_non_null_cols(self) -> int:
        """Number of columns with a positive sum (1 <= result <= n)."""
        return int(np.count_nonzero(self.col_sums()))

    def has_zero_cell(self) -> bool:
        return bool((self.counts == 0).any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AgreementMatrix):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    def __repr__(self) -> str:
        if self.n <= 6:
            return f"AgreementMatrix({self.counts.tolist()!r})"
        return f"<AgreementMatrix n={self.n} total={self.total}>"


def _coerce_counts(rows) -> np.ndarray:
    """Turn caller input into a fresh uint64 (n, n) array, or raise a MatrixError."""
    if isinstance(rows, np.ndarray):
        return _coerce_ndarray(rows)
    return _coerce_sequences(rows)


def _coerce_ndarray(arr: np.ndarray) -> np.ndarray:
    if arr.ndim != 2:
        raise NotSquareError(f"expected a 2-d array, got {arr.ndim}-d")
    if arr.shape[0] != arr.shape[1]:
        raise NotSquareError(f"matrix is {arr.shape[0]}x{arr.shape[1]}, not square")
    if not issubclass(arr.dtype.type, np.integer):
        raise NonIntegerCellError(f"cells must be integers, got dtype {arr.dtype}")
    if arr.size and arr.min() < 0:
        y, x = np.argwhere(arr < 0)[0]
        raise NegativeCellError(f"cell [{y}][{x}] is negative: {arr[y, x]}")
    return arr.astype(np.uint64)


def _coerce_sequences(rows) -> np.ndarray:
    try:
        row_list = [list(r) for r in rows]
    except TypeError:
        raise NotSquareError("input is not a sequence of rows") from None
    n = len(row_list)
    if n == 0:
        raise DimensionTooSmallError("matrix has no rows")
    for y, row in enumerate(row_list):
        if len(row) != n:
            raise NotSquareError(f"row {y} has {len(row)} cells, expected {n}")
    for y, row in enumerate(row_list):
        for x, cell in enumerate(row):
            if isinstance(cell, bool) or not isinstance(cell, (int, np.integer)):
                raise NonIntegerCellError(f"cell [{y}][{x}] is not an integer: {cell!r}")
            if cell < 0:
                raise NegativeCellError(f"cell [{y}][{x}] is negative: {cell}")
            if cell > U64_MAX:
                raise CountOverflowError(f"cell [{y}][{x}] exceeds 64-bit range: {cell}")
    return np.array(row_list, dtype=np.uint64)


def _exact_total(arr: np.ndarray) -> int:
    """Exact grand total with an overflow check on the 64-bit budget."""
    approx = float(arr.sum(dtype=np.float64))
    if approx < _SAFE_FLOAT_TOTAL:
        return int(arr.sum(dtype=np.uint64))
    exact = sum(int(v) for v in arr.ravel().tolist())
    if exact > U64_MAX:
        raise CountOverflowError(f"total count {exact} exceeds 64-bit range")
    return exact
