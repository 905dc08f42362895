"""Dense GF(2) linear algebra on bit-packed rows.

A row is a Python int; bit ``j`` holds the entry in column ``j``.  Python
ints are arbitrary width, so a row of up to a few hundred columns is a
single word-parallel XOR per elimination step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        mask = (1 << self.cols) - 1
        if any(r & ~mask for r in self.data):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> F2Matrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, size: int) -> F2Matrix:
        return cls(size, size, tuple(1 << i for i in range(size)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> F2Matrix:
        cols = len(entries[0]) if entries else 0
        data = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            data.append(sum((v & 1) << j for j, v in enumerate(row)))
        return cls(len(entries), cols, tuple(data))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> F2Matrix:
        """Build a matrix whose column ``j`` is the bit vector ``columns[j]``."""
        data = [0] * rows
        for j, col in enumerate(columns):
            bit = 1 << j
            while col:
                low = col & -col
                data[low.bit_length() - 1] |= bit
                col ^= low
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def of_linear_map(cls, fn: Callable[[int], int], dim_in: int, dim_out: int) -> F2Matrix:
        """Matrix of a GF(2)-linear map given as a function on bit vectors."""
        return cls.from_columns([fn(1 << j) for j in range(dim_in)], dim_out)

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def matvec(self, v: int) -> int:
        out = 0
        for i, r in enumerate(self.data):
            out |= ((r & v).bit_count() & 1) << i
        return out

    def vstack(self, other: F2Matrix) -> F2Matrix:
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return F2Matrix(self.rows + other.rows, self.cols, self.data + other.data)


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``m x = rhs``: empty, or ``particular + ker(m)``."""

    consistent: bool
    particular: int | None
    kernel_dim: int

    @property
    def count(self) -> int:
        return 1 << self.kernel_dim if self.consistent else 0


def _echelon(rows: Iterable[int], cols: int) -> tuple[list[int], list[int], list[int]]:
    """Reduced row echelon form over the low ``cols`` bits.

    Bits above ``cols`` ride along (an augmented rhs column).  Returns the
    pivot rows, their pivot columns, and the leftover rows, which are zero
    on every column.
    """
    work = list(rows)
    pivots: list[int] = []
    reduced: list[int] = []
    for col in range(cols):
        bit = 1 << col
        for k, r in enumerate(work):
            if r & bit:
                pivot = work.pop(k)
                break
        else:
            continue
        work = [r ^ pivot if r & bit else r for r in work]
        reduced = [r ^ pivot if r & bit else r for r in reduced]
        reduced.append(pivot)
        pivots.append(col)
        if not work:
            break
    return reduced, pivots, work


def rank(m: F2Matrix) -> int:
    return len(_echelon(m.data, m.cols)[1])


def solve_affine(m: F2Matrix, rhs: int) -> SolutionSet:
    if rhs < 0 or rhs >> m.rows:
        raise ValueError(f"rhs must be a bit vector of length {m.rows}")
    flag = 1 << m.cols
    aug = [r | flag if (rhs >> i) & 1 else r for i, r in enumerate(m.data)]
    reduced, pivots, leftover = _echelon(aug, m.cols)
    kernel_dim = m.cols - len(pivots)
    if any(leftover):
        # a leftover row is 0 = 1
        return SolutionSet(False, None, kernel_dim)
    particular = 0
    for r, col in zip(reduced, pivots):
        if r & flag:
            particular |= 1 << col
    return SolutionSet(True, particular, kernel_dim)


def kernel_basis(m: F2Matrix) -> list[int]:
    reduced, pivots, _ = _echelon(m.data, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, col in zip(reduced, pivots):
            if (r >> free) & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def count_solutions(m: F2Matrix, rhs: int) -> int:
    return solve_affine(m, rhs).count
