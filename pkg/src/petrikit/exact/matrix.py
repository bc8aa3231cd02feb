"""Dense exact matrices over Q with deterministic Gaussian elimination.

Pivot rule: within the leftmost unresolved column, the first row (top to
bottom) holding a nonzero entry.  No magnitude-based pivoting.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import as_rational

_ZERO = Fraction(0)


class InconsistentSystem(ArithmeticError):
    pass


class ExactMatrix:
    __slots__ = ("rows", "cols", "entries", "row_labels", "col_labels")

    def __init__(
        self,
        entries: Iterable[Iterable],
        cols: int | None = None,
        row_labels: Sequence[str] | None = None,
        col_labels: Sequence[str] | None = None,
    ):
        grid = tuple(tuple(as_rational(v) for v in row) for row in entries)
        if cols is None:
            if not grid:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(grid[0])
        if any(len(r) != cols for r in grid):
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None
        if self.row_labels is not None and len(self.row_labels) != self.rows:
            raise ValueError("row label count mismatch")
        if self.col_labels is not None and len(self.col_labels) != self.cols:
            raise ValueError("column label count mismatch")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None, **labels) -> ExactMatrix:
        if not columns:
            if rows is None:
                raise ValueError("rows must be given for a matrix with no columns")
            return cls([[] for _ in range(rows)], 0, **labels)
        n = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(n)], len(columns), **labels)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
            row_labels=self.col_labels,
            col_labels=self.row_labels,
        )

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + other.scale(-1)

    def __neg__(self) -> ExactMatrix:
        return self.scale(-1)

    def scale(self, c) -> ExactMatrix:
        c = as_rational(c)
        return ExactMatrix([[c * a for a in r] for r in self.entries], self.cols)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            ocols = [other.column(j) for j in range(other.cols)]
            return ExactMatrix(
                [[sum((a * b for a, b in zip(r, c) if a and b), _ZERO) for c in ocols] for r in self.entries],
                other.cols,
            )
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [as_rational(a) for a in v]
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), _ZERO) for r in self.entries)

    def __pow__(self, n: int) -> ExactMatrix:
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = ExactMatrix.identity(self.rows)
        for _ in range(n):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    # elimination

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            p = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if p is None:
                continue
            if p != r:
                m[r], m[p] = m[p], m[r]
            inv = 1 / m[r][c]
            m[r] = [a * inv for a in m[r]]
            row_r = m[r]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], row_r)]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel, one vector per free column (free entry = 1)."""
        m, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [_ZERO] * self.cols
            v[free] = Fraction(1)
            for row, pc in enumerate(pivots):
                v[pc] = -m[row][free]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: Sequence) -> tuple[Fraction, ...]:
        """Particular solution of M v = rhs with every free variable set to zero."""
        if len(rhs) != self.rows:
            raise ValueError("right-hand side length mismatch")
        aug = ExactMatrix([list(r) + [as_rational(b)] for r, b in zip(self.entries, rhs)], self.cols + 1)
        m, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            raise InconsistentSystem("linear system has no solution")
        v = [_ZERO] * self.cols
        for row, pc in enumerate(pivots):
            v[pc] = m[row][self.cols]
        return tuple(v)

    def is_consistent(self, rhs: Sequence) -> bool:
        try:
            self.solve(rhs)
        except InconsistentSystem:
            return False
        return True


def matrix_kernel(m: ExactMatrix) -> list[tuple[Fraction, ...]]:
    return m.kernel()


def row_space_basis(vectors: Sequence[Sequence], width: int) -> list[tuple[Fraction, ...]]:
    """Reduced echelon basis of the span of ``vectors``."""
    if not vectors:
        return []
    m, pivots = ExactMatrix(vectors, width).rref()
    return [tuple(m[i]) for i in range(len(pivots))]
