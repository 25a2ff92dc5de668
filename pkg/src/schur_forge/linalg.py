"""Exact dense linear algebra over the fields of :mod:`schur_forge.exactfield`.

Elimination is plain Gauss-Jordan with the pivot taken as the first nonzero
entry in column order, so kernels and bases come out the same on every run.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix
from .exactfield import QQ


class Matrix:
    """Immutable dense matrix with entries in ``field``."""

    __slots__ = ("rows", "field", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], field=QQ):
        coerced = tuple(tuple(field(x) for x in row) for row in rows)
        widths = {len(r) for r in coerced}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix rows")
        self._init(coerced, field)

    def _init(self, rows, field):
        self.rows = rows
        self.field = field
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @classmethod
    def _make(cls, rows, field) -> Matrix:
        m = cls.__new__(cls)
        m._init(tuple(tuple(r) for r in rows), field)
        return m

    # constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int, field=QQ) -> Matrix:
        z, o = field.zero, field.one
        return cls._make([[o if i == j else z for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, field=QQ) -> Matrix:
        m = n if m is None else m
        return cls._make([[field.zero] * m for _ in range(n)], field)

    @classmethod
    def diag(cls, entries: Sequence, field=QQ) -> Matrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_flat(cls, vec: Sequence, nrows: int, ncols: int | None = None, field=QQ) -> Matrix:
        ncols = nrows if ncols is None else ncols
        if len(vec) != nrows * ncols:
            raise DimensionMismatch(f"{len(vec)} entries cannot fill {nrows}x{ncols}")
        return cls([vec[i * ncols:(i + 1) * ncols] for i in range(nrows)], field)

    # basic protocol -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def ambient(self):
        return ("matrix", self.nrows, self.ncols, self.field)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self.rows[i][j]
        return self.rows[key]

    def __iter__(self):
        return iter(self.rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def flat(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(repr(x) for x in row) for row in self.rows)
        return f"Matrix([{body}] over {self.field!r})"

    # arithmetic -----------------------------------------------------------

    def _check_same(self, other: Matrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        return Matrix._make([[a + b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        return Matrix._make([[a - b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.rows, other.rows)], self.field)

    def __neg__(self):
        return Matrix._make([[-a for a in r] for r in self.rows], self.field)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows)) if other.rows else []
            zero = self.field.zero
            out = []
            for row in self.rows:
                out_row = []
                for col in cols:
                    acc = zero
                    for a, b in zip(row, col):
                        if a and b:
                            acc = acc + a * b
                    out_row.append(acc)
                out.append(out_row)
            return Matrix._make(out, self.field)
        c = self.field(other)
        return Matrix._make([[c * a for a in r] for r in self.rows], self.field)

    def __rmul__(self, other):
        c = self.field(other)
        return Matrix._make([[c * a for a in r] for r in self.rows], self.field)

    def __truediv__(self, other):
        c = self.field(other)
        if not c:
            raise ZeroDivisionError("matrix divided by zero")
        inv = self.field.one / c
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Matrix.identity(self.nrows, self.field), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # structure ------------------------------------------------------------

    @property
    def T(self) -> Matrix:
        return Matrix._make(list(zip(*self.rows)), self.field)

    def map(self, fn, field=None) -> Matrix:
        field = self.field if field is None else field
        return Matrix([[fn(x) for x in r] for r in self.rows], field)

    def conj(self) -> Matrix:
        """Entrywise Galois conjugate (identity unless over a quadratic field)."""
        c = self.field.conj
        return Matrix._make([[c(x) for x in r] for r in self.rows], self.field)

    def change_field(self, field) -> Matrix:
        return Matrix(self.rows, field)

    def one_like(self) -> Matrix:
        return Matrix.identity(self.nrows, self.field)

    def zero_like(self) -> Matrix:
        return Matrix.zeros(self.nrows, self.ncols, self.field)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def scalar_value(self):
        """Return ``c`` if this matrix equals ``c`` times the identity, else ``None``."""
        if not self.is_square() or self.nrows == 0:
            return None
        c = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if (x != c) if i == j else x:
                    return None
        return c

    def trace(self):
        acc = self.field.zero
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        m = self.tolist()
        n = len(m)
        det = self.field.one
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                return self.field.zero
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            pivot = m[c][c]
            det = det * pivot
            for r in range(c + 1, n):
                f = m[r][c]
                if f:
                    f = f / pivot
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return det

    def rank(self) -> int:
        return len(rref(self.tolist(), self.field)[1])

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        one, zero = self.field.one, self.field.zero
        aug = [list(row) + [one if i == j else zero for j in range(n)]
               for i, row in enumerate(self.rows)]
        red, pivots = rref(aug, self.field)
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is not invertible")
        return Matrix._make([row[n:] for row in red[:n]], self.field)

    def solve_right(self, rhs: Matrix) -> Matrix:
        """``X`` with ``self * X == rhs`` for invertible ``self``."""
        return self.inverse() * rhs


# ---------------------------------------------------------------------------
# row reduction on plain lists

def rref(rows: list[list], field=QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``; input is not mutated."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b if b else a for a, b in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: list[list], ncols: int, field=QQ) -> list[tuple]:
    """Basis of ``{x : rows @ x == 0}``; one vector per free column, that entry set to 1."""
    if not rows:
        return [tuple(field.one if j == k else field.zero for j in range(ncols))
                for k in range(ncols)]
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -red[row_idx][f]
        basis.append(tuple(v))
    return basis


def rank_of(rows: list[list], field=QQ) -> int:
    return len(rref(rows, field)[1]) if rows else 0


def solve(columns: Sequence[Sequence], target: Sequence, field=QQ):
    """Coefficients ``x`` with ``sum(x[k] * columns[k]) == target``, or ``None``.

    Free variables are set to zero.
    """
    k = len(columns)
    dim = len(target)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(dim)]
    red, pivots = rref(aug, field)
    if k in pivots:
        return None
    x = [field.zero] * k
    for row_idx, pc in enumerate(pivots):
        x[pc] = red[row_idx][k]
    return tuple(x)


class Span:
    """Incrementally grown subspace of ``field**dim`` with exact membership tests."""

    def __init__(self, dim: int, field=QQ):
        self.dim = dim
        self.field = field
        self._rows: list[tuple[int, list]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for pc, row in self._rows:
            f = v[pc]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; returns ``True`` if it enlarged the span."""
        r = self.reduce(v)
        pc = next((i for i, x in enumerate(r) if x), None)
        if pc is None:
            return False
        inv = self.field.one / r[pc]
        self._rows.append((pc, [x * inv for x in r]))
        return True


# ---------------------------------------------------------------------------
# matrix-algebra helpers shared by matrep and azumaya

def commutator_system(mats: Sequence[Matrix], n: int, field=QQ) -> list[list]:
    """Rows of the map ``f -> (f*A - A*f for A in mats)`` acting on row-major ``vec(f)``."""
    zero = field.zero
    rows = []
    for A in mats:
        if A.shape != (n, n):
            raise DimensionMismatch(f"expected {n}x{n}, got {A.shape}")
        a = A.rows
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                # (fA)_ij = sum_q f_iq A_qj ; (Af)_ij = sum_p A_ip f_pj
                for q in range(n):
                    if a[q][j]:
                        row[i * n + q] = row[i * n + q] + a[q][j]
                for p in range(n):
                    if a[i][p]:
                        row[p * n + j] = row[p * n + j] - a[i][p]
                rows.append(row)
    return rows


def centralizer(mats: Sequence[Matrix], n: int, field=QQ) -> list[Matrix]:
    """Basis of ``{f in Mat_n : f*A == A*f for all A in mats}``."""
    rows = commutator_system(mats, n, field)
    return [Matrix._make([v[i * n:(i + 1) * n] for i in range(n)], field)
            for v in nullspace(rows, n * n, field)]


def span_closure(gens: Sequence[Matrix], n: int, field=QQ) -> list[Matrix]:
    """Basis of the unital subalgebra of ``Mat_n`` generated by ``gens``.

    Grows the span of words by left multiplication with generators until it
    stops changing; the dimension is at most ``n**2`` so this terminates.
    """
    span = Span(n * n, field)
    basis: list[Matrix] = []
    frontier = [Matrix.identity(n, field)]
    while frontier:
        new = []
        for m in frontier:
            if span.add(m.flat()):
                basis.append(m)
                new.append(m)
        frontier = [g * m for m in new for g in gens]
    return basis


def coordinates(basis: Sequence[Matrix], target: Matrix, field=None):
    """Coordinates of ``target`` in a linearly independent list of matrices, or ``None``."""
    field = target.field if field is None else field
    return solve([b.flat() for b in basis], target.flat(), field)
