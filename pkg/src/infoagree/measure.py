"""The information agreement measure and its extension by continuity.

Plain information agreement divides the raters' mutual information by the
smaller marginal entropy and is only defined when every cell of the matrix
is positive. The extension by continuity (ia_epsilon) assigns a value to
every agreement matrix via a four-case closed form over the entropies of
the zero-stripped ("refined") distributions; it coincides with the plain
measure wherever the latter exists, and with the epsilon-limit that
oracle.py evaluates numerically everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from infoagree import _kernels, infotheory
from infoagree.errors import ContainsZeroError, InternalInvariantError
from infoagree.matrix import AgreementMatrix

ROUNDING_TOL = 1e-9
"""Largest excursion outside [0, 1] absorbed by clamping; beyond this the
value is treated as an internal invariant violation, not rounding."""

DEGENERATE_ENTROPY_TOL = 1e-12
"""Sanity bound: a structurally degenerate matrix must also have a
numerically vanishing refined marginal entropy."""


class IaCase(Enum):
    """Which branch of the closed form produced the value."""

    DEGENERATE_X = "degenerate_x"  # single non-null column: refined H(X) = 0
    DEGENERATE_Y = "degenerate_y"  # single non-null row: refined H(Y) = 0
    REGULAR_X_MIN = "regular_x_min"  # refined H(X) strictly the smaller entropy
    REGULAR_Y_MIN = "regular_y_min"  # refined H(Y) <= refined H(X)


@dataclass(frozen=True)
class IaResult:
    """Value plus the diagnostics needed to audit which branch fired.

    m and l are the non-null row and column counts; h_x, h_y, h_xy are the
    refined entropies in bits (always computed, even when a degenerate
    branch decided the value without them).
    """

    value: float
    case: IaCase
    n: int
    m: int
    l: int
    h_x: float
    h_y: float
    h_xy: float


def ia_strict(matrix: AgreementMatrix) -> float:
    """Information agreement of a strictly positive matrix, in [0, 1].

    MI(X, Y) / min(H(X), H(Y)), evaluated as 1 + (H_max - H(XY)) / H_min.
    Raises ContainsZeroError if any cell is zero; use ia_epsilon then.
    """
    if matrix.has_zero_cell():
        raise ContainsZeroError(
            "matrix contains zero cells; plain information agreement is "
            "undefined, use ia_epsilon"
        )
    h_x = infotheory.shannon_entropy(infotheory.marginal_x(matrix))
    h_y = infotheory.shannon_entropy(infotheory.marginal_y(matrix))
    h_xy = infotheory.shannon_entropy(infotheory.joint(matrix))
    h_lo, h_hi = sorted((h_x, h_y))
    return _absorb_rounding(1.0 + (h_hi - h_xy) / h_lo)


def ia_epsilon(matrix: AgreementMatrix) -> IaResult:
    """Information agreement extension by continuity; total on valid matrices.

    Degeneracy is detected structurally (exactly one non-null column or
    row) rather than by comparing a float entropy with zero; in those cases
    the value is the exact ratio (n - m) / n or (n - l) / n. Otherwise the
    value comes from the refined entropies, which are computed from the
    non-null count sums via H = log2(S) - (1/S) * sum(c * log2(c)).

    The X-degenerate branch is checked first, and the tie H(X) = H(Y) falls
    to the Y-min branch (strict comparison); both choices change only the
    reported case, never the value.
    """
    n = matrix.n
    total = float(matrix.total)
    row_sums = matrix.row_sums().astype(np.float64)
    col_sums = matrix.col_sums().astype(np.float64)
    cells = matrix.counts.ravel().astype(np.float64)
    m = int(np.count_nonzero(row_sums))
    l = int(np.count_nonzero(col_sums))

    h_x = _entropy_of_count_sums(col_sums, l, total)
    h_y = _entropy_of_count_sums(row_sums, m, total)
    h_xy = _entropy_of_count_sums(cells, int(np.count_nonzero(cells)), total)

    if l == 1:
        assert h_x < DEGENERATE_ENTROPY_TOL, h_x
        value = (n - m) / n
        case = IaCase.DEGENERATE_X
    elif m == 1:
        assert h_y < DEGENERATE_ENTROPY_TOL, h_y
        value = (n - l) / n
        case = IaCase.DEGENERATE_Y
    elif h_x < h_y:
        value = _absorb_rounding(1.0 + (h_y - h_xy) / h_x)
        case = IaCase.REGULAR_X_MIN
    else:
        value = _absorb_rounding(1.0 + (h_x - h_xy) / h_y)
        case = IaCase.REGULAR_Y_MIN

    return IaResult(value=value, case=case, n=n, m=m, l=l, h_x=h_x, h_y=h_y, h_xy=h_xy)


def _entropy_of_count_sums(values: np.ndarray, support: int, total: float) -> float:
    """Refined entropy in bits of a count vector; zeros are structural and skipped.

    Same identity as infotheory.entropy_from_counts, minus that function's
    input validation: here the counts come from a validated matrix, and the
    measure must stay total even where a redundant sum-consistency check
    could trip over float rounding.
    """
    if support == 1:
        return 0.0
    h = math.log2(total) - _kernels.xlog2_sum(values) / total
    if h < 0.0:
        if h < -DEGENERATE_ENTROPY_TOL:
            raise InternalInvariantError(f"refined entropy computed as {h!r}")
        return 0.0
    return h


def _absorb_rounding(value: float) -> float:
    if 0.0 <= value <= 1.0:
        return value
    if -ROUNDING_TOL <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + ROUNDING_TOL:
        return 1.0
    raise InternalInvariantError(f"agreement value {value!r} is outside [0, 1]")
