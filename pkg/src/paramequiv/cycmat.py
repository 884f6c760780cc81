"""Dense matrices over the cyclotomic field."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError
from .exactnum import ONE, ZERO, Cyclotomic, Scalar, _coerce, format_scalar


class CycMatrix:
    """Immutable ``rows x cols`` matrix with :class:`Cyclotomic` entries (row-major)."""

    __slots__ = ("rows", "cols", "entries", "_complex")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        entries = tuple(_coerce(e) for e in entries)
        if rows < 0 or cols < 0 or rows * cols != len(entries):
            raise DimensionError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._complex = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> CycMatrix:
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged matrix literal")
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> CycMatrix:
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> CycMatrix:
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def scalar(cls, z: Scalar) -> CycMatrix:
        return cls(1, 1, [z])

    @classmethod
    def column(cls, values: Sequence[Scalar]) -> CycMatrix:
        return cls(len(values), 1, values)

    def __getitem__(self, ij: tuple[int, int]) -> Cyclotomic:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Cyclotomic, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Cyclotomic]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def first_difference(self, other: CycMatrix) -> tuple[int, int] | None:
        """Row-major index of the first differing entry, or ``None``."""
        if self.shape != other.shape:
            raise DimensionError(f"cannot compare {self.shape} with {other.shape}")
        for idx, (a, b) in enumerate(zip(self.entries, other.entries)):
            if a != b:
                return divmod(idx, self.cols)
        return None

    # -- algebra -------------------------------------------------------------

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        return matmul(self, other)

    def __add__(self, other: CycMatrix) -> CycMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return CycMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return CycMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> CycMatrix:
        return CycMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, z: Scalar) -> CycMatrix:
        z = _coerce(z)
        return CycMatrix(self.rows, self.cols, [z * a if a else ZERO for a in self.entries])

    def adjoint(self) -> CycMatrix:
        return CycMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j].conjugate() for j in range(self.cols) for i in range(self.rows)],
        )

    dagger = adjoint

    def transpose(self) -> CycMatrix:
        return CycMatrix(
            self.cols, self.rows, [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        )

    def to_complex(self) -> np.ndarray:
        if self._complex is None:
            arr = np.array([e.to_complex() for e in self.entries], dtype=complex).reshape(self.rows, self.cols)
            arr.flags.writeable = False
            self._complex = arr
        return self._complex

    def __repr__(self) -> str:
        return f"CycMatrix({format_matrix(self)})"

    def __reduce__(self):
        return (CycMatrix, (self.rows, self.cols, self.entries))


def matmul(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    """Exact matrix product ``a @ b``."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    n, m, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    row_nz = [[(k, ae[i * m + k]) for k in range(m) if ae[i * m + k]] for i in range(n)]
    col_nz = [{k: be[k * p + j] for k in range(m) if be[k * p + j]} for j in range(p)]
    out = []
    for i in range(n):
        nz = row_nz[i]
        for j in range(p):
            col = col_nz[j]
            acc = None
            for k, x in nz:
                y = col.get(k)
                if y is not None:
                    term = x * y
                    acc = term if acc is None else acc + term
            out.append(ZERO if acc is None else acc)
    return CycMatrix(n, p, out)


def kron(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    """Kronecker product: block ``(i, j)`` of the result is ``a[i, j] * b``."""
    out = []
    for i in range(a.rows):
        for r in range(b.rows):
            brow = b.row(r)
            for j in range(a.cols):
                x = a.entries[i * a.cols + j]
                if not x:
                    out.extend([ZERO] * b.cols)
                else:
                    out.extend(x * y if y else ZERO for y in brow)
    return CycMatrix(a.rows * b.rows, a.cols * b.cols, out)


def direct_sum(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    """Block-diagonal stacking ``[[a, 0], [0, b]]``."""
    rows, cols = a.rows + b.rows, a.cols + b.cols
    out = []
    for i in range(a.rows):
        out.extend(a.row(i))
        out.extend([ZERO] * b.cols)
    for i in range(b.rows):
        out.extend([ZERO] * a.cols)
        out.extend(b.row(i))
    return CycMatrix(rows, cols, out)


def _require_square(m: CycMatrix, what: str) -> None:
    if not m.is_square():
        raise DimensionError(f"{what} requires a square matrix, got {m.shape}")


def is_unitary(m: CycMatrix) -> bool:
    _require_square(m, "is_unitary")
    ident = CycMatrix.identity(m.rows)
    adj = m.adjoint()
    return matmul(m, adj) == ident and matmul(adj, m) == ident


def is_hermitian(m: CycMatrix) -> bool:
    _require_square(m, "is_hermitian")
    return m == m.adjoint()


def rank(m: CycMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination; pivot = first nonzero in column."""
    work = m.to_rows()
    rows, cols = m.rows, m.cols
    r = 0
    prev_inv = ONE
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][c]
        for i in range(r + 1, rows):
            lead = work[i][c]
            row_i = work[i]
            for j in range(c + 1, cols):
                val = p * row_i[j]
                if lead:
                    val = val - lead * work[r][j]
                row_i[j] = val * prev_inv
            row_i[c] = ZERO
        prev_inv = p.inverse()
        r += 1
    return r


def is_injective(m: CycMatrix) -> bool:
    return rank(m) == m.cols


def format_matrix(m: CycMatrix) -> str:
    """Matrix literal syntax ``[[e, e], [e, e]]``."""
    return "[" + ", ".join("[" + ", ".join(format_scalar(e) for e in m.row(i)) + "]" for i in range(m.rows)) + "]"
