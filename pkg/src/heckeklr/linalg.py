"""Dense exact matrices over the fields of :mod:`heckeklr.exactfield`.

Rational and prime-field matrices are backed by python-flint (``fmpq_mat`` and
``nmod_mat``).  Cyclotomic fields use a small pure-Python row-list backend,
which is only ever asked to handle desk-scale sizes.  Both backends expose the
same interface through :class:`Matrix`.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from flint import fmpq_mat, nmod_mat

__all__ = ["Matrix", "LinearAlgebraError"]


class LinearAlgebraError(ArithmeticError):
    """Raised for singular systems and shape mismatches."""


class Matrix:
    """An immutable dense matrix over an exact field."""

    __slots__ = ("field", "_m", "_rows", "_cols")

    # -- construction ---------------------------------------------------------
    def __init__(self, field, raw, nrows: int, ncols: int):
        self.field = field
        self._m = raw
        self._rows = nrows
        self._cols = ncols

    @staticmethod
    def _flint_kind(field) -> str | None:
        if field.kind == "Q":
            return "Q"
        if field.kind == "GF":
            return "GF"
        return None

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        kind = cls._flint_kind(field)
        if kind == "Q":
            raw = fmpq_mat(nrows, ncols, [field(x) for r in rows for x in r]) if nrows and ncols else fmpq_mat(nrows, ncols)
        elif kind == "GF":
            raw = nmod_mat(nrows, ncols, [int(field(x)) for r in rows for x in r], field.p) if nrows and ncols else nmod_mat(nrows, ncols, field.p)
        else:
            raw = [[field(x) for x in r] for r in rows]
        return cls(field, raw, nrows, ncols)

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> Matrix:
        kind = cls._flint_kind(field)
        if kind == "Q":
            raw = fmpq_mat(nrows, ncols)
        elif kind == "GF":
            raw = nmod_mat(nrows, ncols, field.p)
        else:
            raw = [[field.zero] * ncols for _ in range(nrows)]
        return cls(field, raw, nrows, ncols)

    @classmethod
    def identity(cls, field, n: int) -> Matrix:
        return cls.from_sparse(field, n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_sparse(cls, field, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object]) -> Matrix:
        kind = cls._flint_kind(field)
        if kind == "Q":
            raw = fmpq_mat(nrows, ncols)
            for (i, j), v in entries.items():
                raw[i, j] = field(v)
        elif kind == "GF":
            raw = nmod_mat(nrows, ncols, field.p)
            for (i, j), v in entries.items():
                raw[i, j] = int(field(v))
        else:
            raw = [[field.zero] * ncols for _ in range(nrows)]
            for (i, j), v in entries.items():
                raw[i][j] = field(v)
        return cls(field, raw, nrows, ncols)

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        entries = {}
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if v != 0:
                    entries[i, j] = v
        return cls.from_sparse(field, nrows, len(columns), entries)

    @classmethod
    def block_diagonal(cls, field, blocks: Sequence[Matrix]) -> Matrix:
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        entries = {}
        r0 = c0 = 0
        for b in blocks:
            for (i, j), v in b.nonzero_entries():
                entries[r0 + i, c0 + j] = v
            r0 += b.nrows
            c0 += b.ncols
        return cls.from_sparse(field, n, m, entries)

    @classmethod
    def hstack(cls, field, mats: Sequence[Matrix], nrows: int | None = None) -> Matrix:
        if not mats:
            return cls.zeros(field, nrows or 0, 0)
        n = mats[0].nrows
        entries = {}
        c0 = 0
        for b in mats:
            if b.nrows != n:
                raise LinearAlgebraError("hstack: row counts differ")
            for (i, j), v in b.nonzero_entries():
                entries[i, c0 + j] = v
            c0 += b.ncols
        return cls.from_sparse(field, n, c0, entries)

    @classmethod
    def vstack(cls, field, mats: Sequence[Matrix], ncols: int | None = None) -> Matrix:
        if not mats:
            return cls.zeros(field, 0, ncols or 0)
        return cls.hstack(field, [m.T for m in mats]).T

    # -- basic access -----------------------------------------------------------
    @property
    def nrows(self) -> int:
        return self._rows

    @property
    def ncols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def is_flint(self) -> bool:
        return not isinstance(self._m, list)

    def __getitem__(self, key):
        i, j = key
        if self.is_flint:
            v = self._m[i, j]
            return self.field(v) if self.field.kind == "GF" else v
        return self._m[i][j]

    def tolist(self) -> list[list]:
        if not self.is_flint:
            return [list(r) for r in self._m]
        if self.field.kind == "GF":
            p = self.field.p
            from flint import nmod

            return [[nmod(int(x), p) for x in row] for row in self._m.tolist()] if self._rows and self._cols else [[] for _ in range(self._rows)]
        return self._m.tolist() if self._rows and self._cols else [[] for _ in range(self._rows)]

    def nonzero_entries(self) -> Iterable[tuple[tuple[int, int], object]]:
        for i, row in enumerate(self.tolist()):
            for j, v in enumerate(row):
                if v != 0:
                    yield (i, j), v

    def column(self, j: int) -> list:
        return [self[i, j] for i in range(self._rows)]

    def take(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> Matrix:
        """Submatrix on the given row and column index lists (``None`` keeps all)."""
        data = self.tolist()
        rows = range(self._rows) if rows is None else list(rows)
        cols = range(self._cols) if cols is None else list(cols)
        sub = [[data[i][j] for j in cols] for i in rows]
        out = Matrix.from_rows(self.field, sub) if sub and len(cols) else Matrix.zeros(self.field, len(rows), len(cols))
        return out

    # -- arithmetic -------------------------------------------------------------
    def _check_same(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise LinearAlgebraError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.is_flint:
            return Matrix(self.field, self._m + other._m, *self.shape)
        raw = [[a + b for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        return Matrix(self.field, raw, *self.shape)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.is_flint:
            return Matrix(self.field, self._m - other._m, *self.shape)
        raw = [[a - b for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        return Matrix(self.field, raw, *self.shape)

    def __neg__(self) -> Matrix:
        if self.is_flint:
            return Matrix(self.field, -self._m, *self.shape)
        return Matrix(self.field, [[-a for a in r] for r in self._m], *self.shape)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        if self.is_flint:
            if self.field.kind == "GF":
                return Matrix(self.field, self._m * int(c), *self.shape)
            return Matrix(self.field, self._m * c, *self.shape)
        return Matrix(self.field, [[c * a for a in r] for r in self._m], *self.shape)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self._cols != other._rows:
            raise LinearAlgebraError(f"cannot multiply {self.shape} by {other.shape}")
        n, m = self._rows, other._cols
        if self.is_flint:
            if n == 0 or m == 0 or self._cols == 0:
                return Matrix.zeros(self.field, n, m)
            return Matrix(self.field, self._m * other._m, n, m)
        zero = self.field.zero
        bt = list(zip(*other._m)) if other._rows else [() for _ in range(m)]
        raw = []
        for row in self._m:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out = []
            for j in range(m):
                col = bt[j]
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                out.append(acc)
            raw.append(out)
        return Matrix(self.field, raw, n, m)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int) -> Matrix:
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self._rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        if self.is_flint:
            if 0 in self.shape:
                return True
            return self._m == other._m
        return all(a == b for r, s in zip(self._m, other._m) for a, b in zip(r, s))

    __hash__ = None  # mutable-looking container semantics: not hashable

    def is_zero(self) -> bool:
        if self.is_flint:
            if 0 in self.shape:
                return True
            return self._m == type(self._m)(self._rows, self._cols, *([self.field.p] if self.field.kind == "GF" else []))
        return all(not a for r in self._m for a in r)

    def is_identity(self) -> bool:
        return self._rows == self._cols and self == Matrix.identity(self.field, self._rows)

    @property
    def T(self) -> Matrix:
        if self.is_flint:
            if 0 in self.shape:
                return Matrix.zeros(self.field, self._cols, self._rows)
            return Matrix(self.field, self._m.transpose(), self._cols, self._rows)
        raw = [list(c) for c in zip(*self._m)] if self._rows else [[] for _ in range(self._cols)]
        if not raw and self._cols:
            raw = [[] for _ in range(self._cols)]
        return Matrix(self.field, raw, self._cols, self._rows)

    def trace(self):
        acc = self.field.zero
        for i in range(min(self.shape)):
            acc = acc + self[i, i]
        return acc

    # -- elimination ------------------------------------------------------------
    def rref(self) -> tuple[Matrix, list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        if 0 in self.shape:
            return self, []
        if self.is_flint:
            reduced, rank = self._m.rref()
            out = Matrix(self.field, reduced, *self.shape)
            rows = out.tolist()
            pivots = []
            for i in range(rank):
                for j, v in enumerate(rows[i]):
                    if v != 0:
                        pivots.append(j)
                        break
            return out, pivots
        rows = [list(r) for r in self._m]
        pivots: list[int] = []
        r = 0
        for c in range(self._cols):
            pivot = next((i for i in range(r, self._rows) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = self.field.one / rows[r][c]
            rows[r] = [inv * a for a in rows[r]]
            for i in range(self._rows):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self._rows:
                break
        return Matrix(self.field, rows, *self.shape), pivots

    def rank(self) -> int:
        if 0 in self.shape:
            return 0
        if self.is_flint:
            return self._m.rank()
        return len(self.rref()[1])

    def pivot_columns(self) -> list[int]:
        return self.rref()[1]

    def nullspace(self) -> Matrix:
        """A matrix whose columns form a basis of the right kernel."""
        reduced, pivots = self.rref()
        free = [j for j in range(self._cols) if j not in set(pivots)]
        rows = reduced.tolist()
        columns = []
        for f in free:
            vec = [self.field.zero] * self._cols
            vec[f] = self.field.one
            for i, p in enumerate(pivots):
                vec[p] = -rows[i][f]
            columns.append(vec)
        return Matrix.from_columns(self.field, columns, nrows=self._cols)

    def inverse(self) -> Matrix:
        if self._rows != self._cols:
            raise LinearAlgebraError("inverse of a non-square matrix")
        if self._rows == 0:
            return self
        if self.is_flint:
            try:
                return Matrix(self.field, self._m.inv(), *self.shape)
            except ZeroDivisionError as exc:
                raise LinearAlgebraError("matrix is singular") from exc
        n = self._rows
        aug = Matrix.hstack(self.field, [self, Matrix.identity(self.field, n)])
        reduced, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise LinearAlgebraError("matrix is singular")
        return reduced.take(cols=range(n, 2 * n))

    def solve(self, rhs: Matrix) -> Matrix:
        """Solve ``self * X = rhs`` for square invertible ``self``."""
        return self.inverse() * rhs

    def __repr__(self) -> str:
        body = "; ".join(", ".join(self.field.format(x) for x in row) for row in self.tolist())
        return f"Matrix[{self._rows}x{self._cols}]({body})"
