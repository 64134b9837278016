"""Dense exact matrices over the integers and rationals.

Entries are plain Python ints or fractions.Fraction; nothing here ever
touches floating point.  The elimination core works fraction-free on
integer rows (clearing denominators first), which keeps the Fox-calculus
and equivariance systems fast at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _as_exact(x):
    if isinstance(x, (int, Fraction)):
        return x
    raise TypeError(f"matrix entries must be int or Fraction, got {type(x)}")


class Matrix:
    """Immutable dense matrix with exact int/Fraction entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(_as_exact(x) for x in row) for row in entries)
        if entries and any(len(row) != len(entries[0]) for row in entries):
            raise ValueError("ragged rows")
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_cols(cls, cols) -> "Matrix":
        return cls(cols).transpose()

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix([[-x for x in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Matrix([[x * other for x in row] for row in self.entries])
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = other.transpose().entries
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.entries]
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def apply(self, vec):
        """Matrix times column vector (tuple)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def det(self):
        """Exact determinant (fraction-free Bareiss on an integer scaling)."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        work, scale = _int_rows(self.entries)
        prev = 1
        sign = 1
        for k in range(n - 1):
            if work[k][k] == 0:
                for i in range(k + 1, n):
                    if work[i][k] != 0:
                        work[k], work[i] = work[i], work[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
                work[i][k] = 0
            prev = work[k][k]
        d = Fraction(sign * work[n - 1][n - 1], 1)
        for s in scale:
            d /= s
        return d if d.denominator != 1 else d.numerator

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        work = [
            [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(self.entries)
        ]
        for col in range(n):
            piv = next((i for i in range(col, n) if work[i][col] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            work[col], work[piv] = work[piv], work[col]
            pv = work[col][col]
            work[col] = [x / pv for x in work[col]]
            for i in range(n):
                if i != col and work[i][col] != 0:
                    f = work[i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[col])]
        out = [[_simplify(work[i][n + j]) for j in range(n)] for i in range(n)]
        return Matrix(out)

    def rank(self) -> int:
        rows, _ = _int_rows(self.entries)
        pivots, _ = _int_echelon(rows)
        return len(pivots)

    def nullspace(self) -> list[tuple]:
        """Basis of the right kernel, as tuples of Fractions/ints."""
        return nullspace_of_rows(list(self.entries), self.cols)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix[{body}]"


def block_diag(*blocks: Matrix) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    ro = co = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[ro + i][co + j] = b.entries[i][j]
        ro += b.rows
        co += b.cols
    return Matrix(out)


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _int_rows(entries):
    """Scale each row to integers; returns (mutable int rows, row scales)."""
    out = []
    scales = []
    for row in entries:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                d = x.denominator
                lcm = lcm * d // gcd(lcm, d)
        out.append([int(x * lcm) for x in row])
        scales.append(lcm)
    return out, scales


def _normalize_row(row):
    g = 0
    for x in row:
        g = gcd(g, abs(x))
        if g == 1:
            break
    if g > 1:
        row = [x // g for x in row]
    for x in row:
        if x != 0:
            if x < 0:
                row = [-y for y in row]
            break
    return row


def _int_echelon(rows):
    """Incremental fraction-free echelon form of integer rows.

    Returns (pivots, echelon) where pivots is the sorted list of pivot
    column indices and echelon maps each pivot column to its (gcd-reduced)
    row.  Rows are reduced against existing pivots by cross-multiplication,
    so everything stays in the integers.
    """
    echelon: dict[int, list[int]] = {}
    for row in rows:
        row = list(row)
        while True:
            lead = next((j for j, x in enumerate(row) if x != 0), None)
            if lead is None or lead not in echelon:
                break
            piv = echelon[lead]
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            row = [ma * x - mb * y for x, y in zip(row, piv)]
        if lead is not None:
            echelon[lead] = _normalize_row(row)
    pivots = sorted(echelon)
    return pivots, echelon


def nullspace_of_rows(rows, ncols: int) -> list[tuple]:
    """Basis of {x : R x = 0} for the given constraint rows (int/Fraction)."""
    int_rows, _ = _int_rows(rows)
    pivots, echelon = _int_echelon(int_rows)
    free = [j for j in range(ncols) if j not in echelon]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for p in reversed(pivots):
            row = echelon[p]
            s = sum(Fraction(row[j]) * x[j] for j in range(p + 1, ncols) if row[j] != 0)
            x[p] = -s / row[p]
        basis.append(tuple(_simplify(v) for v in x))
    return basis


def rank_of_rows(rows) -> int:
    int_rows, _ = _int_rows(rows)
    pivots, _ = _int_echelon(int_rows)
    return len(pivots)


def charpoly(mat: Matrix) -> list[int]:
    """Characteristic polynomial det(xI - A) of an integer matrix, as a
    coefficient list [c_0, ..., c_n] with c_n = 1 (Faddeev–LeVerrier)."""
    n = mat.rows
    if mat.rows != mat.cols:
        raise ValueError("characteristic polynomial of non-square matrix")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = Matrix.identity(n)
    for k in range(1, n + 1):
        am = mat * m
        c = -am.trace() / Fraction(k)
        coeffs[n - k] = Fraction(c)
        m = am + Matrix.identity(n) * c
    out = []
    for c in coeffs:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError("non-integer characteristic coefficient (non-integer input?)")
        out.append(f.numerator)
    return out
