"""Arbitrary-precision integer matrices and Smith normal form with transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __init__(self, rows: Sequence[Sequence[int]], cols: int | None = None):
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if any(len(row) != cols for row in entries):
            raise ValueError("matrix rows have unequal length")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "cols", cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.entries], self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries], other.cols)

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(r, v)) for r in self.entries]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix([r + s for r, s in zip(self.entries, other.entries)], self.cols + other.cols)

    def det(self) -> int:
        """Fraction-free Bareiss elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        A = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if A[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if A[i][k]), None)
                if swap is None:
                    return 0
                A[k], A[swap] = A[swap], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


@dataclass(frozen=True)
class SnfResult:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """``U M V = D`` with ``U``, ``V`` unimodular and ``d_1 | d_2 | ...`` non-negative.

    Pivots are the smallest non-zero absolute value of the remaining block,
    ties broken by row-major position.
    """
    m, n = M.shape
    A = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        for X in (A, U):
            X[dst] = [a + f * b for a, b in zip(X[dst], X[src])]

    def add_col(dst, src, f):
        for X in (A, V):
            for row in X:
                row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            residues = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
            residues += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            if residues:
                _, i, j = min(residues, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return SnfResult(IntMatrix(A, n), IntMatrix(U, m), IntMatrix(V, n))


def solve_integer(M: IntMatrix, b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``M x = b``, or ``None`` if there is none."""
    snf = smith_normal_form(M)
    c = snf.U.apply(b)
    y = [0] * M.cols
    for i, ci in enumerate(c):
        d = snf.D[i, i] if i < min(M.shape) else 0
        if d == 0:
            if ci:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return snf.V.apply(y)


def integer_kernel(M: IntMatrix) -> list[list[int]]:
    """A Z-basis of ``{x in Z^n : M x = 0}``."""
    snf = smith_normal_form(M)
    return [snf.V.column(j) for j in range(snf.rank, M.cols)]


def lattice_rank_and_covolume(generators: Sequence[Sequence[int]], dim: int) -> tuple[int, int]:
    """Rank of the lattice spanned by ``generators`` and the product of its non-zero invariant factors."""
    if not generators:
        return 0, 1
    G = IntMatrix([list(col) for col in zip(*generators)], len(generators))
    assert G.rows == dim
    diag = smith_normal_form(G).diagonal
    covol = 1
    for d in diag:
        if d:
            covol *= d
    return sum(1 for d in diag if d), covol
