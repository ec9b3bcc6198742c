"""Exact integer matrices and their normal forms.

Everything here works on Python ints, so there is no overflow.  Matrices
are dense; the graphs this package targets are small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple


class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"bad shape {rows}x{cols} for {len(entries)} entries")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count needed for a matrix without rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for a matrix without columns")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ValueError("ragged columns")
        return cls(rows, len(columns), (columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(values):
            out[i][i] = x
        return cls.from_rows(out, cols)

    @staticmethod
    def hstack(*blocks: "IntMatrix") -> "IntMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack: row counts differ")
        cols = sum(b.cols for b in blocks)
        out = []
        for i in range(rows):
            for b in blocks:
                out.extend(b.entries[i * b.cols:(i + 1) * b.cols])
        return IntMatrix(rows, cols, out)

    @staticmethod
    def vstack(*blocks: "IntMatrix") -> "IntMatrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("vstack: column counts differ")
        return IntMatrix(sum(b.rows for b in blocks), cols, (x for b in blocks for x in b.entries))

    @staticmethod
    def block_diagonal(*blocks: "IntMatrix") -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return IntMatrix.from_rows(out, cols)

    # access

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def select_columns(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_columns([self.column(j) for j in indices], self.rows)

    def select_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.row(i) for i in indices], self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    # arithmetic

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
            return IntMatrix(self.rows, other.cols, out)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(vec)}")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (k * a for a in self.entries))

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """``u @ m @ v == d`` with ``u``, ``v`` unimodular.

    ``u_inv`` and ``v_inv`` are the exact inverses, tracked alongside.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self) -> list:
        return [self.d[i, i] for i in range(min(self.d.rows, self.d.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def _ident(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf(m) -> SnfResult:
    """Smith normal form with the minimal-absolute-value pivot rule."""
    m = as_matrix(m)
    r, c = m.rows, m.cols
    a = m.to_rows()
    u, u_inv = _ident(r), _ident(r)
    v, v_inv = _ident(c), _ident(c)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            for row in u_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]
            v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]
            for row in u_inv:
                row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]
            v_inv[src] = [x - q * y for x, y in zip(v_inv[src], v_inv[dst])]

    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            best = None
            for i in range(t + 1, r):
                if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                    best = (abs(a[i][t]), i, None)
            for j in range(t + 1, c):
                if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                    best = (abs(a[t][j]), None, j)
            if best is not None:
                if best[1] is not None:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
            for row in u_inv:
                row[t] = -row[t]

    return SnfResult(
        u=IntMatrix.from_rows(u, r),
        d=IntMatrix.from_rows(a, c),
        v=IntMatrix.from_rows(v, c),
        u_inv=IntMatrix.from_rows(u_inv, r),
        v_inv=IntMatrix.from_rows(v_inv, c),
    )


# ---------------------------------------------------------------------------
# Hermite normal form and lattice helpers


def hnf_rows(vectors: Sequence[Sequence[int]], width: int) -> list:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Returns the nonzero rows: echelon, positive pivots, entries above each
    pivot reduced into ``[0, pivot)``.  The result only depends on the
    lattice, so it serves as a canonical basis.
    """
    rows = [list(v) for v in vectors if any(v)]
    out = []
    col = 0
    while rows and col < width:
        live = [row for row in rows if row[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda row: abs(row[col]))
            piv = live[0]
            nxt = [piv]
            for row in live[1:]:
                q = row[col] // piv[col]
                row[:] = [x - q * y for x, y in zip(row, piv)]
                if row[col]:
                    nxt.append(row)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        rows = [row for row in rows if row is not piv and any(row)]
        for prev in out:
            q = prev[col] // piv[col]
            if q:
                prev[:] = [x - q * y for x, y in zip(prev, piv)]
        out.append(piv)
        col += 1
    return out


def lattice_basis(m) -> IntMatrix:
    """Canonical (Hermite) basis, as columns, of the column span of ``m``."""
    m = as_matrix(m)
    return IntMatrix.from_columns(hnf_rows(m.columns(), m.rows), m.rows)


def hnf(m) -> IntMatrix:
    """Column Hermite form of ``m``: the canonical basis of its column span."""
    return lattice_basis(m)


def same_lattice(a, b) -> bool:
    return lattice_basis(a) == lattice_basis(b)


def rank(m) -> int:
    m = as_matrix(m)
    return len(hnf_rows(m.columns(), m.rows))


def kernel_basis(m) -> IntMatrix:
    """Saturated basis (columns) of ``{x : m x = 0}``, in Hermite form."""
    m = as_matrix(m)
    res = snf(m)
    k = res.rank
    raw = res.v.select_columns(range(k, m.cols))
    return IntMatrix.from_columns(hnf_rows(raw.columns(), m.cols), m.cols)


def solve_integer(m, b: Sequence[int]) -> Optional[Vector]:
    """Some integer ``x`` with ``m x = b``, or ``None`` if there is none."""
    m = as_matrix(m)
    b = tuple(b)
    if len(b) != m.rows:
        raise ValueError("right-hand side has the wrong length")
    return SnfSolver(m).solve(b)


class SnfSolver:
    """Reusable integer solver for a fixed matrix."""

    def __init__(self, m):
        self.m = as_matrix(m)
        self.res = snf(self.m)
        self.diag = self.res.diagonal
        self.rank = self.res.rank

    def solve(self, b: Sequence[int]) -> Optional[Vector]:
        ub = self.res.u @ tuple(b)
        y = [0] * self.m.cols
        for i, x in enumerate(ub):
            if i < self.rank:
                q, rem = divmod(x, self.diag[i])
                if rem:
                    return None
                y[i] = q
            elif x:
                return None
        return self.res.v @ y


def det(m) -> int:
    """Determinant via fraction-free Bareiss elimination."""
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def is_unimodular(m) -> bool:
    m = as_matrix(m)
    return m.rows == m.cols and abs(det(m)) == 1


def rational_inverse(m) -> list:
    """Exact inverse over Q as a list of rows of Fractions."""
    m = as_matrix(m)
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.to_rows())]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def leading_minors(m) -> list:
    m = as_matrix(m)
    return [det(m.select_rows(range(k)).select_columns(range(k))) for k in range(1, m.rows + 1)]
