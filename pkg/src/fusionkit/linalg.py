"""Small dense matrices over the exact rationals.

Entries are ``fractions.Fraction`` throughout and elimination uses exact
pivots, so ranks, kernels and inverses are never approximate. Matrices with
zero rows or zero columns are legal and behave as the empty linear map; a
zero-row matrix is the zero map into a zero-dimensional space, whose kernel
is everything.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


class RationalMatrix:
    """Immutable-by-convention dense rational matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        self.data = tuple(tuple(Q(x) for x in row) for row in data)
        self.rows = len(self.data)
        if self.rows:
            widths = {len(row) for row in self.data}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            width = widths.pop()
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with row data")
            self.cols = width
        else:
            if cols is None:
                raise ValueError("a zero-row matrix needs an explicit column count")
            self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        return cls([[col[i] for col in columns] for i in range(rows)], len(columns))

    @classmethod
    def vstack(cls, mats: Iterable["RationalMatrix"], cols: int | None = None) -> "RationalMatrix":
        mats = list(mats)
        if not mats:
            if cols is None:
                raise ValueError("vstack of nothing needs an explicit column count")
            return cls.zeros(0, cols)
        width = mats[0].cols
        if any(m.cols != width for m in mats):
            raise ValueError("column mismatch in vstack")
        rows: list[Sequence] = []
        for m in mats:
            rows.extend(m.data)
        return cls(rows, width)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, {[[str(x) for x in r] for r in self.data]})"

    def __getitem__(self, key) -> Q:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple[Q, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Q, ...]:
        return tuple(row[j] for row in self.data)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        if self.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        ot = list(zip(*other.data))
        out = [
            [sum(a * b for a, b in zip(row, col)) for col in ot]
            for row in self.data
        ]
        return RationalMatrix(out, other.cols)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return RationalMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)], self.cols
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, s) -> "RationalMatrix":
        s = Q(s)
        return RationalMatrix([[s * x for x in row] for row in self.data], self.cols)

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        out = [[Q(0)] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if not a:
                    continue
                for p in range(other.rows):
                    base = other.data[p]
                    orow = out[i * other.rows + p]
                    off = j * other.cols
                    for q in range(other.cols):
                        orow[off + q] = a * base[q]
        return RationalMatrix(out, cols)

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def _rref(self) -> tuple[list[list[Q]], list[int]]:
        m = [list(row) for row in self.data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def kernel(self) -> "RationalMatrix":
        """Basis of the right kernel, one column per free variable."""
        m, pivots = self._rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        columns = []
        for f in free:
            v = [Q(0)] * self.cols
            v[f] = Q(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][f]
            columns.append(v)
        return RationalMatrix.from_columns(columns, self.cols)

    def nullity(self) -> int:
        return self.cols - self.rank()

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices invert")
        n = self.rows
        aug = RationalMatrix(
            [list(self.data[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)], 2 * n
        )
        m, pivots = aug._rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return RationalMatrix([row[n:] for row in m], n)

    def solve(self, rhs: "RationalMatrix") -> "RationalMatrix":
        """Solve self @ X = rhs for square nonsingular self."""
        if self.rows != self.cols:
            raise ValueError("solve needs a square matrix")
        if rhs.rows != self.rows:
            raise ValueError("rhs row mismatch")
        n = self.rows
        aug = RationalMatrix(
            [list(self.data[i]) + list(rhs.data[i]) for i in range(n)], n + rhs.cols
        )
        m, pivots = aug._rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return RationalMatrix([row[n:] for row in m], rhs.cols)


def kernel(matrix: RationalMatrix) -> RationalMatrix:
    """Kernel basis of an exact rational matrix (columns span the kernel)."""
    return matrix.kernel()
