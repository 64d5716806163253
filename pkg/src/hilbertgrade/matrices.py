"""Dense exact matrices over QQ or GF(p).

Values are immutable after construction and all operations are pure, so
matrices are safe to share across threads and to use as set/dict keys
(equality is structural and exact, never hash-probabilistic).

Elimination is fraction-free (Bareiss) over the rationals, after clearing
row denominators, so intermediate integers stay bounded by minors of the
input; over GF(p) it is plain Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .fields import Field, FieldMismatchError, PrimeField


class ShapeError(ValueError):
    """Operands had incompatible or invalid dimensions."""


class SingularMatrixError(ValueError):
    """A matrix required to be invertible was singular."""


class Matrix:
    """Immutable row-major dense matrix over one exact field."""

    __slots__ = ("field", "rows", "cols", "entries", "_hash")

    def __init__(self, field: Field, rows: int, cols: int, entries: Iterable):
        if rows <= 0 or cols <= 0:
            raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
        coerced = tuple(field.coerce(x) for x in entries)
        if len(coerced) != rows * cols:
            raise ShapeError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(coerced)}"
            )
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = coerced
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows: int, cols: int, entries: tuple) -> "Matrix":
        # Internal fast path: entries already coerced and counted.
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m.entries = entries
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, field: Field, row_data: Sequence[Sequence]) -> "Matrix":
        if not row_data:
            raise ShapeError("matrix needs at least one row")
        width = len(row_data[0])
        flat = []
        for i, row in enumerate(row_data):
            if len(row) != width:
                raise ShapeError(f"ragged matrix: row {i} has length {len(row)}, expected {width}")
            flat.extend(row)
        return cls(field, len(row_data), width, flat)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        zero, one = field.zero, field.one
        entries = [zero] * (n * n)
        for i in range(n):
            entries[i * n + i] = one
        return cls._raw(field, n, n, tuple(entries))

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(
                f"cannot combine matrices over {self.field!r} and {other.field!r}"
            )

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix addition needs equal shapes")
        entries = tuple(a + b for a, b in zip(self.entries, other.entries))
        return Matrix._raw(self.field, self.rows, self.cols, entries)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix subtraction needs equal shapes")
        entries = tuple(a - b for a, b in zip(self.entries, other.entries))
        return Matrix._raw(self.field, self.rows, self.cols, entries)

    def __neg__(self):
        return Matrix._raw(self.field, self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = self.field.zero
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            base = i * k
            # Skipping zero terms keeps products of sparse matrices
            # (permutation-like group elements) cheap.
            terms = [(t, a[base + t]) for t in range(k) if a[base + t] != zero]
            for j in range(m):
                acc = zero
                for t, av in terms:
                    bv = b[t * m + j]
                    if bv != zero:
                        acc = acc + av * bv
                out.append(acc)
        return Matrix._raw(self.field, n, m, tuple(out))

    def scale(self, scalar) -> "Matrix":
        s = self.field.coerce(scalar)
        return Matrix._raw(self.field, self.rows, self.cols, tuple(s * a for a in self.entries))

    def transpose(self) -> "Matrix":
        entries = tuple(
            self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)
        )
        return Matrix._raw(self.field, self.cols, self.rows, entries)

    def trace(self):
        if self.rows != self.cols:
            raise ShapeError("trace needs a square matrix")
        acc = self.field.zero
        for i in range(self.rows):
            acc = acc + self.entries[i * self.cols + i]
        return acc

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return self == Matrix.identity(self.field, self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.field!r}, [{body}])"

    # -- elimination ------------------------------------------------------

    def _integer_rows(self) -> tuple[list[list[int]], int]:
        """Clear denominators per row; returns integer rows and the row-scale product."""
        scale = 1
        out = []
        for i in range(self.rows):
            row = self.row(i)
            mult = lcm(*(e.denominator for e in row)) if row else 1
            scale *= mult
            out.append([int(e.numerator * (mult // e.denominator)) for e in row])
        return out, scale

    def det(self):
        """Exact determinant (Bareiss over QQ, Gauss over GF(p))."""
        if self.rows != self.cols:
            raise ShapeError("determinant needs a square matrix")
        if isinstance(self.field, PrimeField):
            rows = [[e.value for e in self.row(i)] for i in range(self.rows)]
            return self.field.coerce(_det_mod(rows, self.rows, self.field.p))
        rows, scale = self._integer_rows()
        return Fraction(_det_bareiss(rows, self.rows), scale)

    def rank(self) -> int:
        if isinstance(self.field, PrimeField):
            rows = [[e.value for e in self.row(i)] for i in range(self.rows)]
            return _rank_mod(rows, self.rows, self.cols, self.field.p)
        rows, _ = self._integer_rows()
        return _rank_bareiss(rows, self.rows, self.cols)

    def kernel_dim(self) -> int:
        """Dimension of the right null space: cols - rank."""
        return self.cols - self.rank()

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan over the field."""
        if self.rows != self.cols:
            raise ShapeError("inverse needs a square matrix")
        n = self.rows
        zero, one = self.field.zero, self.field.one
        aug = []
        for i in range(n):
            row = list(self.row(i)) + [zero] * n
            row[n + i] = one
            aug.append(row)
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if aug[i][c] != zero:
                    pivot = i
                    break
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            aug[c], aug[pivot] = aug[pivot], aug[c]
            pv = aug[c][c]
            aug[c] = [x / pv for x in aug[c]]
            for i in range(n):
                if i == c:
                    continue
                f = aug[i][c]
                if f == zero:
                    continue
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        entries = tuple(aug[i][n + j] for i in range(n) for j in range(n))
        return Matrix._raw(self.field, n, n, entries)


def _det_bareiss(a: list[list[int]], n: int) -> int:
    """Fraction-free determinant of an integer matrix (destructive)."""
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
        pk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # Exact by Sylvester's identity: prev divides the bracket.
                rowi[j] = (rowi[j] * pk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def _rank_bareiss(a: list[list[int]], nrows: int, ncols: int) -> int:
    """Fraction-free row echelon rank of an integer matrix (destructive)."""
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pk = a[r][c]
        rowr = a[r]
        for i in range(r + 1, nrows):
            rowi = a[i]
            aic = rowi[c]
            # Every row below the pivot must be rescaled, even when its
            # pivot-column entry is zero: fraction-free entries carry a
            # pk/prev factor, and skipping a row breaks later exact
            # divisions.
            for j in range(c + 1, ncols):
                rowi[j] = (rowi[j] * pk - aic * rowr[j]) // prev
            rowi[c] = 0
        prev = pk
        r += 1
    return r


def _det_mod(a: list[list[int]], n: int, p: int) -> int:
    sign = 1
    det = 1
    for k in range(n):
        pivot = None
        for i in range(k, n):
            if a[i][k] % p != 0:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        pk = a[k][k] % p
        det = det * pk % p
        inv = pow(pk, p - 2, p)
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f == 0:
                continue
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] - f * a[k][j]) % p
            a[i][k] = 0
    return det * sign % p


def _rank_mod(a: list[list[int]], nrows: int, ncols: int, p: int) -> int:
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = None
        for i in range(r, nrows):
            if a[i][c] % p != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c] % p, p - 2, p)
        for i in range(r + 1, nrows):
            f = a[i][c] * inv % p
            if f == 0:
                continue
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] - f * a[r][j]) % p
            a[i][c] = 0
        r += 1
    return r


__all__ = [
    "Matrix",
    "ShapeError",
    "SingularMatrixError",
]
