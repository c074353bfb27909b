r"""
Matrix of moments and determinant nonclassicality witnesses.

For any state with a non-negative Glauber-Sudarshan P function the Hankel
matrix :math:`M_{mm'} = \langle{:}\hat X^{m+m'}{:}\rangle` is positive
semidefinite, so a negative principal minor certifies nonclassicality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.linalg

from .errors import ArgumentError
from .moments import MomentSet

__all__ = [
    "DEFAULT_TOLERANCE",
    "MomentMatrix",
    "WitnessReport",
    "determinant",
    "minor_determinant",
    "moment_matrix",
    "normally_ordered_variance",
    "scan_witnesses",
]

DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class MomentMatrix:
    entries: np.ndarray
    phase: float = 0.0

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ArgumentError("moment matrix must be square")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class WitnessReport:
    index_set: tuple[int, ...]
    determinant: float
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def nonclassical(self) -> bool:
        return self.determinant < -self.tolerance

    @property
    def verdict(self) -> str:
        return "nonclassical-witnessed" if self.nonclassical else "inconclusive"


def moment_matrix(moments: MomentSet, size: int | None = None) -> MomentMatrix:
    """Hankel matrix of ``size`` rows; ``floor(N/2) + 1`` by default."""
    size = moments.N // 2 + 1 if size is None else size
    needed = 2 * (size - 1)
    if size < 1 or moments.max_order < needed:
        raise ArgumentError(
            f"a {size}x{size} matrix of moments needs orders up to {needed}, "
            f"have {moments.max_order}"
        )
    idx = np.arange(size)
    return MomentMatrix(moments.moments[idx[:, None] + idx[None, :]], moments.phase)


def determinant(a: np.ndarray) -> float:
    """Cofactor expansion up to 3x3, symmetric-indefinite LDL^T beyond."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    # det(P L D L^T P^T) = det(D), D block diagonal with 1x1 and 2x2 blocks
    _, d, _ = scipy.linalg.ldl(a)
    out, i = 1.0, 0
    while i < n:
        if i + 1 < n and d[i + 1, i] != 0:
            out *= d[i, i] * d[i + 1, i + 1] - d[i, i + 1] * d[i + 1, i]
            i += 2
        else:
            out *= d[i, i]
            i += 1
    return float(out)


def minor_determinant(matrix: MomentMatrix, index_set, tolerance: float = DEFAULT_TOLERANCE) -> WitnessReport:
    """Principal minor over the rows/columns in ``index_set``."""
    idx = tuple(sorted(set(int(i) for i in index_set)))
    if not idx:
        raise ArgumentError("index set must be non-empty")
    if idx[0] < 0 or idx[-1] >= matrix.size:
        raise ArgumentError(f"index set {idx} outside 0..{matrix.size - 1}")
    sub = matrix.entries[np.ix_(idx, idx)]
    return WitnessReport(idx, determinant(sub), tolerance)


def normally_ordered_variance(moments: MomentSet) -> float:
    r""":math:`\langle{:}(\Delta\hat X)^2{:}\rangle`, the ``{0, 1}`` minor."""
    if moments.max_order < 2:
        raise ArgumentError("the variance needs moments up to order 2")
    return moments[2] - moments[1] ** 2


def scan_witnesses(matrix: MomentMatrix, all_subsets: bool = False,
                   tolerance: float = DEFAULT_TOLERANCE) -> list[WitnessReport]:
    """Evaluate every principal minor, strongest (most negative) first.

    By default only index sets containing row 0 are scanned.
    """
    rows = range(matrix.size)
    reports = []
    for k in range(1, matrix.size + 1):
        for idx in combinations(rows, k):
            if all_subsets or idx[0] == 0:
                reports.append(minor_determinant(matrix, idx, tolerance))
    return sorted(reports, key=lambda rep: rep.determinant)
