"""Exact linear algebra over the rationals.

Matrices are sparse maps ``(row, col) -> Fraction``. Elimination is plain
Gauss-Jordan on sparse rows with deterministic pivoting: columns are scanned
left to right and the first remaining row with a nonzero entry is chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted: %r" % (x,))
    return Fraction(x)


class RatMatrix:
    """Sparse rational matrix. Treat instances as immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError("entry %r outside %dx%d" % ((i, j), rows, cols))
                v = as_rational(v)
                if v:
                    clean[i, j] = v
        self.entries = clean

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[i, j] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int):
        entries = {}
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if v:
                    entries[i, j] = v
        return cls(rows, len(columns), entries)

    def __getitem__(self, ij):
        return self.entries.get(ij, Fraction(0))

    def to_rows(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def column(self, j):
        return [self.entries.get((i, j), Fraction(0)) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        return not self.entries

    def transpose(self):
        return RatMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %r vs %r" % (self.shape, other.shape))
        e = dict(self.entries)
        for k, v in other.entries.items():
            e[k] = e.get(k, 0) + v
        return RatMatrix(self.rows, self.cols, e)

    def __neg__(self):
        return RatMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rational(c)
        return RatMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    __rmul__ = scale

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch %r @ %r" % (self.shape, other.shape))
            right = other.row_dicts()
            out = {}
            for (i, k), v in self.entries.items():
                for j, w in right[k].items():
                    out[i, j] = out.get((i, j), 0) + v * w
            return RatMatrix(self.rows, other.cols, out)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vec), self.cols))
        res = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                res[i] += v * vec[j]
        return res

    def trace(self):
        return sum((v for (i, j), v in self.entries.items() if i == j), Fraction(0))

    def __repr__(self):
        return "RatMatrix(%d, %d, %r)" % (self.rows, self.cols, self.entries)


def _rref_rows(rows: list[dict], ncols: int):
    """In-place Gauss-Jordan on sparse rows. Returns (reduced rows, pivot columns)."""
    rows = [dict(r) for r in rows if r]
    pivots = []
    reduced = []
    for col in range(ncols):
        pick = None
        for idx, r in enumerate(rows):
            if r.get(col):
                pick = idx
                break
        if pick is None:
            continue
        prow = rows.pop(pick)
        inv = 1 / prow[col]
        prow = {j: v * inv for j, v in prow.items()}
        for r in rows + reduced:
            f = r.get(col)
            if f:
                for j, v in prow.items():
                    w = r.get(j, 0) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
        rows = [r for r in rows if r]
        reduced.append(prow)
        pivots.append(col)
        if not rows:
            break
    return reduced, pivots


def rref(M: RatMatrix):
    return _rref_rows(M.row_dicts(), M.cols)


def rank(M: RatMatrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: RatMatrix) -> list[list[Fraction]]:
    reduced, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for prow, pc in zip(reduced, pivots):
            c = prow.get(free)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def solve(M: RatMatrix, b: Sequence) -> list[Fraction] | None:
    """Some x with M x = b (free variables set to zero), or None."""
    if len(b) != M.rows:
        raise ValueError("right-hand side has length %d, expected %d" % (len(b), M.rows))
    rows = M.row_dicts()
    for i, v in enumerate(b):
        v = as_rational(v)
        if v:
            rows[i][M.cols] = v
    reduced, pivots = _rref_rows(rows, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for prow, pc in zip(reduced, pivots):
        x[pc] = prow.get(M.cols, Fraction(0))
    return x


@dataclass(frozen=True)
class QuotientSpace:
    ambient_dim: int
    relation_basis: tuple  # reduced relation rows, as tuples
    pivots: tuple
    free: tuple  # ambient coordinates kept as quotient coordinates
    projection: RatMatrix  # dim x ambient_dim
    section: RatMatrix  # ambient_dim x dim

    @property
    def dim(self):
        return len(self.free)

    def project(self, v: Sequence) -> list[Fraction]:
        return self.projection @ v

    def lift(self, w: Sequence) -> list[Fraction]:
        return self.section @ w


def quotient(ambient_dim: int, relations: Iterable[Sequence]) -> QuotientSpace:
    rows = []
    for r in relations:
        if len(r) != ambient_dim:
            raise ValueError("relation of length %d in ambient dimension %d" % (len(r), ambient_dim))
        rows.append({j: as_rational(v) for j, v in enumerate(r) if v})
    reduced, pivots = _rref_rows(rows, ambient_dim)
    pivset = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivset]
    pos = {j: k for k, j in enumerate(free)}
    # x ~ x - sum_r x[pivot_r] * row_r ; read off the free coordinates
    proj = {}
    for j in range(ambient_dim):
        if j in pos:
            proj[pos[j], j] = 1
    for prow, pc in zip(reduced, pivots):
        for j, v in prow.items():
            if j in pos:
                proj[pos[j], pc] = proj.get((pos[j], pc), 0) - v
    projection = RatMatrix(len(free), ambient_dim, proj)
    section = RatMatrix(ambient_dim, len(free), {(j, k): 1 for k, j in enumerate(free)})
    relation_basis = tuple(tuple(prow.get(j, Fraction(0)) for j in range(ambient_dim)) for prow in reduced)
    return QuotientSpace(ambient_dim, relation_basis, tuple(pivots), tuple(free), projection, section)
