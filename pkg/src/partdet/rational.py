"""Exact rational scalars and dense linear algebra over Q.

The scalar type is :class:`fractions.Fraction`: it is always kept in lowest
terms with a positive denominator, which is exactly the normal form every
other module relies on for equality and serialization.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "RationalMatrix",
    "SingularMatrixError",
    "as_rational",
    "format_rational",
    "parse_rational",
    "det",
    "det_cofactor",
    "det_permutation",
    "solve_linear",
    "cramer_column_replace",
]


class SingularMatrixError(ArithmeticError):
    """Raised when a linear system has no unique solution."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; pass int, Fraction or 'p/q'")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def format_rational(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(text)


class RationalMatrix:
    """Dense row-major matrix of Fractions.

    Instances are treated as immutable: every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_rational(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows}x{cols}={rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def with_column(self, j: int, column: Sequence) -> "RationalMatrix":
        if not 0 <= j < self.cols:
            raise IndexError(f"column index {j} out of range for {self.cols} columns")
        if len(column) != self.rows:
            raise ValueError("replacement column has the wrong length")
        rows = self.to_rows()
        for i, x in enumerate(column):
            rows[i][j] = as_rational(x)
        return RationalMatrix.from_rows(rows)

    def swap_rows(self, i: int, k: int) -> "RationalMatrix":
        rows = self.to_rows()
        rows[i], rows[k] = rows[k], rows[i]
        return RationalMatrix.from_rows(rows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, out)

    def apply(self, vector: Sequence) -> list[Fraction]:
        if len(vector) != self.cols:
            raise ValueError("shape mismatch")
        vec = [as_rational(v) for v in vector]
        return [sum((a * b for a, b in zip(self.row(i), vec)), Fraction(0)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"RationalMatrix([{body}])"


def _require_square(m: RationalMatrix) -> None:
    if not m.is_square:
        raise ValueError(f"matrix must be square, got {m.rows}x{m.cols}")


def _bareiss_int(a: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys ``a``)."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def det(m: RationalMatrix) -> Fraction:
    """Exact determinant via Bareiss elimination.

    Each column is scaled by the lcm of its denominators so the elimination
    runs on integers; the scale factors are divided back out at the end.
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    scales = [lcm(*(m[i, j].denominator for i in range(n))) for j in range(n)]
    a = [[m[i, j].numerator * (scales[j] // m[i, j].denominator) for j in range(n)] for i in range(n)]
    total_scale = 1
    for s in scales:
        total_scale *= s
    return Fraction(_bareiss_int(a), total_scale)


def det_cofactor(m: RationalMatrix) -> Fraction:
    """Laplace expansion along the first row; test oracle for small orders."""
    _require_square(m)

    def rec(rows: list[list[Fraction]]) -> Fraction:
        n = len(rows)
        if n == 0:
            return Fraction(1)
        if n == 1:
            return rows[0][0]
        total = Fraction(0)
        for j, x in enumerate(rows[0]):
            if x == 0:
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = x * rec(minor)
            total += -term if j % 2 else term
        return total

    return rec(m.to_rows())


def det_permutation(m: RationalMatrix) -> Fraction:
    """Leibniz formula. Exponential; only for tiny oracles."""
    _require_square(m)
    n = m.rows
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i, j in enumerate(perm):
            prod *= m[i, j]
            if not prod:
                break
        total += -prod if inversions % 2 else prod
    return total


def solve_linear(m: RationalMatrix, rhs: Sequence) -> list[Fraction]:
    """Unique exact solution of ``m x = rhs`` by Gauss-Jordan over Q.

    Raises :class:`SingularMatrixError` when the determinant vanishes.
    """
    _require_square(m)
    n = m.rows
    if len(rhs) != n:
        raise ValueError(f"rhs has length {len(rhs)}, expected {n}")
    aug = [list(m.row(i)) + [as_rational(rhs[i])] for i in range(n)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("determinant vanishes; system route unavailable")
        if pivot != k:
            aug[k], aug[pivot] = aug[pivot], aug[k]
        inv = 1 / aug[k][k]
        rowk = [x * inv for x in aug[k]]
        aug[k] = rowk
        for i in range(n):
            if i == k:
                continue
            f = aug[i][k]
            if f:
                rowi = aug[i]
                for j in range(k, n + 1):
                    if rowk[j]:
                        rowi[j] -= f * rowk[j]
    return [aug[i][n] for i in range(n)]


def cramer_column_replace(m: RationalMatrix, col_index: int, rhs: Sequence) -> Fraction:
    """Determinant of ``m`` with column ``col_index`` replaced by ``rhs``."""
    _require_square(m)
    return det(m.with_column(col_index, rhs))
