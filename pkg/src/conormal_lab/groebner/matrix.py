"""Graded matrices over a polynomial ring.

A matrix is a map of graded free modules F1 -> F0.  Columns are stored as
sparse engine vectors ``{(row, exps): coeff}``; ``row_degrees`` are the
degrees of the basis of F0 and ``col_degrees`` those of F1.  A column is
homogeneous when every entry has degree ``col_degree - row_degree``.
"""

from __future__ import annotations

from itertools import combinations
from operator import add

from ..arith.polynomial import PolyRing, Polynomial
from ..errors import InputError, RingMismatchError


def vec_degree(ring: PolyRing, v: dict, row_degrees) -> int | None:
    degs = {row_degrees[r] + ring.degree(e) for (r, e) in v}
    if len(degs) != 1:
        return None
    return degs.pop()


class Matrix:
    __slots__ = ("ring", "nrows", "cols", "row_degrees", "col_degrees")

    def __init__(self, ring: PolyRing, nrows: int, cols, row_degrees=None, col_degrees=None):
        self.ring = ring
        self.nrows = nrows
        self.cols = [dict(c) for c in cols]
        self.row_degrees = tuple(row_degrees) if row_degrees is not None else (0,) * nrows
        if len(self.row_degrees) != nrows:
            raise InputError("row degree list has the wrong length")
        if col_degrees is None:
            col_degrees = []
            for c in self.cols:
                d = vec_degree(ring, c, self.row_degrees) if c else None
                col_degrees.append(d if d is not None else self._max_degree(c))
        self.col_degrees = tuple(col_degrees)
        if len(self.col_degrees) != len(self.cols):
            raise InputError("column degree list has the wrong length")

    def _max_degree(self, c) -> int:
        if not c:
            return 0
        return max(self.row_degrees[r] + self.ring.degree(e) for (r, e) in c)

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_rows(cls, ring: PolyRing, rows, row_degrees=None, col_degrees=None) -> Matrix:
        rows = [[_as_poly(ring, x) for x in row] for row in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise InputError("ragged matrix rows")
        cols = []
        for j in range(ncols):
            v = {}
            for i in range(nrows):
                for e, c in rows[i][j].terms.items():
                    v[(i, e)] = c
            cols.append(v)
        if row_degrees is None and col_degrees is None:
            row_degrees = _infer_row_degrees(ring, rows)
        return cls(ring, nrows, cols, row_degrees, col_degrees)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns, nrows: int | None = None, row_degrees=None, col_degrees=None) -> Matrix:
        columns = [[_as_poly(ring, x) for x in col] for col in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        rows = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
        if not columns:
            return cls(ring, nrows, [], row_degrees, col_degrees)
        return cls.from_rows(ring, rows, row_degrees, col_degrees)

    @classmethod
    def identity(cls, ring: PolyRing, n: int, degrees=None) -> Matrix:
        one = ring.field.one
        z = (0,) * ring.nvars
        degrees = tuple(degrees) if degrees is not None else (0,) * n
        return cls(ring, n, [{(i, z): one} for i in range(n)], degrees, degrees)

    @classmethod
    def zero(cls, ring: PolyRing, nrows: int, ncols: int, row_degrees=None, col_degrees=None) -> Matrix:
        return cls(ring, nrows, [{} for _ in range(ncols)], row_degrees, col_degrees or (0,) * ncols)

    # -- accessors -------------------------------------------------------
    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, len(self.cols)

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial(self.ring, {e: c for (r, e), c in self.cols[j].items() if r == i}, _trusted=True)

    def column(self, j: int) -> list[Polynomial]:
        parts: list[dict] = [{} for _ in range(self.nrows)]
        for (r, e), c in self.cols[j].items():
            parts[r][e] = c
        return [Polynomial(self.ring, p, _trusted=True) for p in parts]

    def rows(self) -> list[list[Polynomial]]:
        cols = [self.column(j) for j in range(self.ncols)]
        return [[cols[j][i] for j in range(self.ncols)] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return not any(self.cols)

    def is_homogeneous(self) -> bool:
        ring = self.ring
        for c, d in zip(self.cols, self.col_degrees):
            for (r, e) in c:
                if self.row_degrees[r] + ring.degree(e) != d:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.nrows == other.nrows
            and self.cols == other.cols
        )

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, {self.format()})"

    def format(self) -> str:
        rows = self.rows()
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in rows) + "]"

    # -- algebra ---------------------------------------------------------
    def _check(self, other: Matrix):
        if other.ring != self.ring:
            raise RingMismatchError("matrices over different rings")

    def transpose(self, row_degrees=None) -> Matrix:
        """Transpose; degrees default to the dual grading (negated)."""
        rows = self.rows()
        t = [[rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        if row_degrees is None:
            row_degrees = tuple(-d for d in self.col_degrees)
            col_degrees = tuple(-d for d in self.row_degrees)
        else:
            col_degrees = None
        out = Matrix.from_rows(self.ring, t, row_degrees, col_degrees) if t else Matrix(self.ring, self.ncols, [{} for _ in range(self.nrows)], row_degrees, col_degrees)
        if not t:
            return out
        if out.nrows != self.ncols:
            return Matrix(self.ring, self.ncols, out.cols, row_degrees, col_degrees)
        return out

    def __mul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise InputError(f"shape mismatch {self.shape} * {other.shape}")
        mod = self.ring.field.modulus
        out = []
        for col in other.cols:
            acc: dict = {}
            for (k, e2), c2 in col.items():
                for (i, e1), c1 in self.cols[k].items():
                    m = (i, tuple(map(add, e1, e2)))
                    acc[m] = acc.get(m, 0) + c1 * c2
            if mod:
                acc = {m: v % mod for m, v in acc.items() if v % mod}
            else:
                acc = {m: v for m, v in acc.items() if v}
            out.append(acc)
        return Matrix(self.ring, self.nrows, out, self.row_degrees, other.col_degrees)

    def hstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if other.nrows != self.nrows:
            raise InputError("row count mismatch in hstack")
        return Matrix(self.ring, self.nrows, self.cols + other.cols, self.row_degrees, self.col_degrees + other.col_degrees)

    def submatrix(self, rows=None, cols=None) -> Matrix:
        rows = list(range(self.nrows)) if rows is None else list(rows)
        cols = list(range(self.ncols)) if cols is None else list(cols)
        pos = {r: i for i, r in enumerate(rows)}
        new = []
        for j in cols:
            new.append({(pos[r], e): c for (r, e), c in self.cols[j].items() if r in pos})
        return Matrix(self.ring, len(rows), new, [self.row_degrees[r] for r in rows], [self.col_degrees[j] for j in cols])

    def map_entries(self, fn) -> Matrix:
        rows = [[fn(x) for x in row] for row in self.rows()]
        return Matrix.from_rows(self.ring, rows, self.row_degrees, self.col_degrees) if rows else self

    def change_ring(self, ring: PolyRing) -> Matrix:
        if ring == self.ring:
            return self
        rows = [[ring.convert(x) for x in row] for row in self.rows()]
        if not rows:
            return Matrix(ring, 0, [{} for _ in self.cols], (), self.col_degrees)
        if not self.cols:
            return Matrix(ring, self.nrows, [], self.row_degrees, ())
        return Matrix.from_rows(ring, rows, self.row_degrees, self.col_degrees)

    def constant_part(self) -> list[list]:
        """Matrix of constant terms (the map tensored with the residue field)."""
        z = (0,) * self.ring.nvars
        zero = self.ring.field.zero
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for (r, e), c in col.items():
                if e == z:
                    out[r][j] = c
        return out

    def minors(self, t: int) -> list[Polynomial]:
        """All nonzero t x t minors (t <= 0 gives the unit, t too large gives none)."""
        if t <= 0:
            return [self.ring.one()]
        if t > self.nrows or t > self.ncols:
            return []
        rows = self.rows()
        out = []
        seen = set()
        for rs in combinations(range(self.nrows), t):
            sub = [rows[i] for i in rs]
            cache: dict = {}
            for cs in combinations(range(self.ncols), t):
                d = _det(sub, cs, 0, cache)
                if d and d not in seen:
                    seen.add(d)
                    out.append(d)
        return out


def _det(rows, cols, r, cache):
    """Laplace expansion along rows, memoised on the remaining column set."""
    if r == len(rows):
        return rows[0][0].ring.one() if rows else None
    key = (r, cols)
    if key in cache:
        return cache[key]
    total = None
    for k, c in enumerate(cols):
        a = rows[r][c]
        if not a:
            continue
        rest = cols[:k] + cols[k + 1:]
        sub = _det(rows, rest, r + 1, cache)
        if not sub:
            continue
        term = a * sub
        if k % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        total = rows[0][0].ring.zero()
    cache[key] = total
    return total


def _as_poly(ring: PolyRing, x) -> Polynomial:
    if isinstance(x, Polynomial):
        return ring.convert(x)
    if isinstance(x, str):
        return ring.parse(x)
    return ring.const(x)


def _infer_row_degrees(ring: PolyRing, rows) -> tuple[int, ...]:
    """Row degrees making a homogeneous matrix degree-consistent.

    Columns are given degree max over rows of (entry degree); rows get
    degree 0 when every entry is homogeneous of a common per-column degree,
    otherwise a best-effort assignment.  Non-homogeneous matrices fall back
    to zero row degrees.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    # solve row_deg[i] + deg(a_ij) = col_deg[j] by propagation
    rdeg: list[int | None] = [None] * nrows
    cdeg: list[int | None] = [None] * ncols
    for start in range(nrows):
        if rdeg[start] is not None:
            continue
        rdeg[start] = 0
        stack = [("r", start)]
        while stack:
            kind, k = stack.pop()
            if kind == "r":
                for j in range(ncols):
                    a = rows[k][j]
                    if a and a.is_homogeneous() and cdeg[j] is None:
                        cdeg[j] = rdeg[k] + a.degree()
                        stack.append(("c", j))
            else:
                for i in range(nrows):
                    a = rows[i][k]
                    if a and a.is_homogeneous() and rdeg[i] is None:
                        rdeg[i] = cdeg[k] - a.degree()
                        stack.append(("r", i))
    low = min(rdeg) if rdeg else 0
    return tuple(d - low for d in rdeg)
