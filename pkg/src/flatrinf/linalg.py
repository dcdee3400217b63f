"""Exact dense linear algebra over the rationals and the integers.

Entries are Python ints or :class:`fractions.Fraction`; a fraction with
denominator one is always stored as an int, so integral matrices compare,
hash and serialize exactly like integer matrices.  Nothing here ever touches
floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _norm(x) -> Scalar:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    raise TypeError(f"non-exact matrix entry {x!r}")


class Matrix:
    """Immutable dense matrix with exact entries.

    ``RatMatrix`` and ``IntMatrix`` are aliases of this class; integrality is
    a property of the entries (see :meth:`is_integral`), not of the type.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[Scalar]], cols: int | None = None):
        rows = tuple(tuple(_norm(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> Matrix:
        # rows must already be a tuple of tuples of normalized entries
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = len(rows), cols, rows, None
        return m

    # construction

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diag(cls, *values: Scalar) -> Matrix:
        n = len(values)
        return cls(((values[i] if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def block_diag(cls, blocks: Sequence[Matrix]) -> Matrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, cols=m)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: int | None = None) -> Matrix:
        if not columns:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*columns))

    @classmethod
    def hstack(cls, mats: Sequence[Matrix]) -> Matrix:
        nrows = mats[0].rows
        return cls((sum((m._data[i] for m in mats), ()) for i in range(nrows)),
                   cols=sum(m.cols for m in mats))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def flat(self) -> tuple[Scalar, ...]:
        return tuple(x for r in self._data for x in r)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> Matrix:
        return Matrix(((self._data[i][j] for j in cols) for i in rows), cols=len(cols))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(type(x) is int for r in self._data for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._data) for j, x in enumerate(r) if i != j)

    # arithmetic

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._data == other._data and self.cols == other.cols

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __lt__(self, other: Matrix) -> bool:
        return self.flat() < other.flat()

    def __add__(self, other: Matrix) -> Matrix:
        _check_same_shape(self, other)
        return Matrix((a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))

    def __sub__(self, other: Matrix) -> Matrix:
        _check_same_shape(self, other)
        return Matrix((a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))

    def __neg__(self) -> Matrix:
        return Matrix(((-a for a in r) for r in self._data), cols=self.cols)

    def scale(self, c: Scalar) -> Matrix:
        return Matrix(((c * a for a in r) for r in self._data), cols=self.cols)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other._data))
        data = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self._data)
        if not (self.is_integral() and other.is_integral()):
            data = tuple(tuple(_norm(x) for x in r) for r in data)
        return Matrix._raw(data, other.cols)

    __mul__ = __matmul__

    def transpose(self) -> Matrix:
        return Matrix(zip(*self._data), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def inverse(self) -> Matrix:
        _require_square(self)
        n = self.rows
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self._data)]
        pivots = _rref_in_place(aug, n)
        if len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(r[n:] for r in aug)

    def __pow__(self, k: int) -> Matrix:
        _require_square(self)
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})"


RatMatrix = Matrix
IntMatrix = Matrix


def _check_same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _require_square(m: Matrix) -> None:
    if not m.is_square():
        raise ValueError(f"square matrix required, got {m.rows}x{m.cols}")


def _div(x: Scalar, p: Scalar) -> Scalar:
    if type(x) is int and type(p) is int:
        return x // p if x % p == 0 else Fraction(x, p)
    return _norm(Fraction(x) / p)


def _rref_in_place(rows: list[list[Scalar]], ncols: int) -> list[int]:
    """Reduce ``rows`` to reduced row echelon form over the first ``ncols``
    columns; return the pivot columns.  Entries stay ints where possible."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [_div(x, piv) if x else 0 for x in rows[r]]
        support = [(j, y) for j, y in enumerate(rows[r]) if y != 0]
        for i in range(nrows):
            row = rows[i]
            f = row[c]
            if i != r and f != 0:
                for j, y in support:
                    row[j] = _norm(row[j] - f * y) if type(f) is not int or type(y) is not int \
                        else row[j] - f * y
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m._data]
    pivots = _rref_in_place(rows, m.cols)
    return Matrix(rows, cols=m.cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def det(m: Matrix) -> Scalar:
    """Determinant by Bareiss fraction-free elimination."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m._data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                row_i[j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = akk
    return _norm(Fraction(sign * a[n - 1][n - 1]))


def has_eigenvalue_one(m: Matrix) -> bool:
    _require_square(m)
    return det(m - Matrix.identity(m.rows)) == 0


def nullspace(m: Matrix) -> list[Matrix]:
    """Exact basis of the right kernel as column vectors.

    One basis vector per free column of the reduced echelon form, with a 1 in
    that free position, so the basis is itself in (column) echelon form.
    """
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(Matrix([x] for x in v))
    return basis


def column_echelon_basis(vectors: Sequence[Sequence[Scalar]], dim: int) -> list[tuple[Scalar, ...]]:
    """Canonical basis of the span of ``vectors``: rows of the RREF of the
    matrix whose rows are the vectors."""
    if not vectors:
        return []
    red, pivots = rref(Matrix(vectors, cols=dim))
    return [red.row(i) for i in range(len(pivots))]


def primitive_integer_scale(m: Matrix) -> Matrix:
    """Scale ``m`` by the unique positive rational making it integral with
    content 1."""
    entries = [Fraction(x) for x in m.flat()]
    if all(x == 0 for x in entries):
        raise ValueError("zero matrix has no primitive scaling")
    den = reduce(lcm, (x.denominator for x in entries), 1)
    ints = [int(x * den) for x in entries]
    content = reduce(gcd, ints, 0)
    return Matrix(((x * den // content for x in (Fraction(y) for y in r)) for r in m._data),
                  cols=m.cols)


def smith_normal_form(m: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form of an integer matrix.

    Returns ``(factors, U, V)`` with ``m == U @ diag(factors) @ V`` (square
    input), ``U`` and ``V`` unimodular, factors nonnegative and each dividing
    the next.
    """
    if not m.is_integral():
        raise ValueError("Smith normal form needs an integer matrix")
    nr, nc = m.shape
    a = [list(r) for r in m._data]
    # left and right transforms: L @ m @ R == S
    L = [[int(i == j) for j in range(nr)] for i in range(nr)]
    R = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        L[dst] = [x + q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in R:
            row[dst] += q * row[src]

    for t in range(min(nr, nc)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j] != 0]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            L[t] = [-x for x in L[t]]
    factors = [a[i][i] for i in range(min(nr, nc))]
    U = Matrix(L).inverse()
    V = Matrix(R).inverse()
    return factors, U, V


def intertwiner_basis(pairs: Sequence[tuple[Matrix, Matrix]], n: int) -> list[Matrix]:
    """Basis of ``{X : X @ a == b @ X for every (a, b) in pairs}`` over Q.

    ``X`` is ``n x n``; with ``b == a`` this is the commutant.
    """
    eqs = []
    for a, b in pairs:
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for l in range(n):
                    row[i * n + l] += a[l, j]
                    row[l * n + j] -= b[i, l]
                eqs.append(row)
    if not eqs:
        eqs = [[0] * (n * n)]
    basis = nullspace(Matrix(eqs, cols=n * n))
    return [Matrix(([v[i * n + j, 0] for j in range(n)] for i in range(n)), cols=n) for v in basis]
