"""Matrices over a polynomial ring.

Matrices act on column vectors: an m x n matrix is a map A^n -> A^m and its
columns are the images of the standard basis.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

from .ring import DoesNotDivide, Polynomial, PolyRing, exact_div

MAX_MINOR_SIZE = 8


class DimensionMismatch(ValueError):
    pass


class RingMatrix:
    """Immutable m x n matrix of polynomials (m or n may be zero)."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence], ncols: int = None):
        rows = tuple(tuple(ring(e) for e in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    # constructors

    @classmethod
    def zeros(cls, ring: PolyRing, m: int, n: int) -> "RingMatrix":
        z = ring.zero()
        return cls(ring, [[z] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "RingMatrix":
        return cls.diag(ring, [ring.one()] * n)

    @classmethod
    def diag(cls, ring: PolyRing, entries: Sequence) -> "RingMatrix":
        n = len(entries)
        z = ring.zero()
        return cls(ring, [[entries[i] if i == j else z for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence], nrows: int) -> "RingMatrix":
        columns = [tuple(c) for c in columns]
        if any(len(c) != nrows for c in columns):
            raise DimensionMismatch("column length differs from %d" % nrows)
        return cls(ring, [[c[i] for c in columns] for i in range(nrows)], ncols=len(columns))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[Polynomial, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> List[Tuple[Polynomial, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.columns(), ncols=self.nrows)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other):
        return (isinstance(other, RingMatrix) and self.ring == other.ring
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return "RingMatrix(%s)" % [[str(e) for e in r] for r in self.rows]

    def to_strings(self) -> List[List[str]]:
        return [[str(e) for e in r] for r in self.rows]

    # arithmetic

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return compose(self, other)

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shapes %s and %s" % (self.shape, other.shape))
        return RingMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          ncols=self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def scale(self, c) -> "RingMatrix":
        return RingMatrix(self.ring, [[e * c for e in r] for r in self.rows], ncols=self.ncols)

    def apply(self, v: Sequence[Polynomial]) -> Tuple[Polynomial, ...]:
        if len(v) != self.ncols:
            raise DimensionMismatch("vector of length %d for %d columns" % (len(v), self.ncols))
        z = self.ring.zero()
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RingMatrix":
        return RingMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def map_entries(self, fn) -> "RingMatrix":
        return RingMatrix(self.ring, [[fn(e) for e in r] for r in self.rows], ncols=self.ncols)

    def max_degree(self) -> int:
        return max((e.total_degree() for r in self.rows for e in r), default=-1)


def compose(B: RingMatrix, A: RingMatrix) -> RingMatrix:
    """B . A (apply A first)."""
    if B.ncols != A.nrows:
        raise DimensionMismatch("cannot compose %s after %s" % (B.shape, A.shape))
    R = B.ring
    z = R.zero()
    cols = A.columns()
    out = []
    for r in B.rows:
        row = []
        for c in cols:
            s = z
            for a, b in zip(r, c):
                if a and b:
                    s = s + a * b
            row.append(s)
        out.append(row)
    return RingMatrix(R, out, ncols=A.ncols)


def hstack(ring: PolyRing, mats: Sequence[RingMatrix], nrows: int = None) -> RingMatrix:
    if nrows is None:
        nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise DimensionMismatch("hstack needs equal row counts")
    rows = [[] for _ in range(nrows)]
    for m in mats:
        for i in range(nrows):
            rows[i].extend(m.rows[i])
    return RingMatrix(ring, rows, ncols=sum(m.ncols for m in mats))


def vstack(ring: PolyRing, mats: Sequence[RingMatrix], ncols: int = None) -> RingMatrix:
    if ncols is None:
        ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise DimensionMismatch("vstack needs equal column counts")
    return RingMatrix(ring, [r for m in mats for r in m.rows], ncols=ncols)


def block(blocks: Sequence[Sequence[RingMatrix]]) -> RingMatrix:
    """Assemble a block matrix from a grid of blocks with consistent shapes."""
    ring = blocks[0][0].ring
    heights = [row[0].nrows for row in blocks]
    widths = [b.ncols for b in blocks[0]]
    for i, row in enumerate(blocks):
        if len(row) != len(widths):
            raise DimensionMismatch("block row %d has %d blocks" % (i, len(row)))
        for j, b in enumerate(row):
            if b.shape != (heights[i], widths[j]):
                raise DimensionMismatch("block (%d,%d) has shape %s, expected %s"
                                        % (i, j, b.shape, (heights[i], widths[j])))
    return vstack(ring, [hstack(ring, row, nrows=heights[i]) for i, row in enumerate(blocks)],
                  ncols=sum(widths))


def block_diag(ring: PolyRing, mats: Sequence[RingMatrix]) -> RingMatrix:
    total_c = sum(m.ncols for m in mats)
    rows = []
    offset = 0
    z = ring.zero()
    for m in mats:
        for r in m.rows:
            rows.append([z] * offset + list(r) + [z] * (total_c - offset - m.ncols))
        offset += m.ncols
    return RingMatrix(ring, rows, ncols=total_c)


def _cofactor_det(rows: List[List[Polynomial]], ring: PolyRing) -> Polynomial:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _cofactor_det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def cofactor_determinant(A: RingMatrix) -> Polynomial:
    if not A.is_square():
        raise DimensionMismatch("determinant of a %dx%d matrix" % A.shape)
    return _cofactor_det([list(r) for r in A.rows], A.ring)


def _bareiss_det(rows: List[List[Polynomial]], ring: PolyRing) -> Polynomial:
    n = len(rows)
    M = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            for p in range(k + 1, n):
                if not M[p][k].is_zero():
                    M[k], M[p] = M[p], M[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(pivot * M[i][j] - M[i][k] * M[k][j], prev)
            M[i][k] = ring.zero()
        prev = pivot
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


def determinant(A: RingMatrix) -> Polynomial:
    """Exact determinant: cofactor expansion up to 3x3, Bareiss elimination beyond."""
    if not A.is_square():
        raise DimensionMismatch("determinant of a %dx%d matrix" % A.shape)
    if A.nrows <= 3:
        return cofactor_determinant(A)
    return _bareiss_det([list(r) for r in A.rows], A.ring)


def minors(A: RingMatrix, t: int) -> List[Polynomial]:
    """All t x t minors, rows then columns in lexicographic index order."""
    if t > MAX_MINOR_SIZE and min(A.shape) > MAX_MINOR_SIZE:
        raise ValueError("minor enumeration is capped at size %d" % MAX_MINOR_SIZE)
    out = []
    for rs in combinations(range(A.nrows), t):
        for cs in combinations(range(A.ncols), t):
            out.append(determinant(A.submatrix(rs, cs)))
    return out


def minors_ideal(A: RingMatrix, t: int):
    """Ideal of t-minors; (1) when t <= 0 and (0) when t exceeds both dimensions."""
    from .gb import IdealBasis

    R = A.ring
    if t <= 0:
        return IdealBasis(R, [R.one()])
    if t > min(A.nrows, A.ncols):
        return IdealBasis(R, [])
    return IdealBasis(R, [m for m in minors(A, t) if not m.is_zero()])


def rank_ff(A: RingMatrix) -> int:
    """Rank over the fraction field by fraction-free (Bareiss) row echelon."""
    M = [list(r) for r in A.rows]
    m, n = A.shape
    R = A.ring
    prev = R.one()
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if not M[i][c].is_zero()), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pivot = M[r][c]
        for i in range(r + 1, m):
            a = M[i][c]
            for j in range(c + 1, n):
                try:
                    M[i][j] = exact_div(pivot * M[i][j] - a * M[r][j], prev)
                except DoesNotDivide:  # pragma: no cover - Bareiss division is exact
                    raise AssertionError("Bareiss step not exact")
            M[i][c] = R.zero()
        prev = pivot
        r += 1
    return r


def is_injective(A: RingMatrix) -> bool:
    """Injectivity of A^n -> A^m; the base ring is a domain, so this is full column rank."""
    if A.ncols == 0:
        return True
    if A.is_square():
        return not determinant(A).is_zero()
    return rank_ff(A) == A.ncols


def bareiss_vs_cofactor(A: RingMatrix) -> bool:
    return _bareiss_det([list(r) for r in A.rows], A.ring) == cofactor_determinant(A)


def matrix_from_strings(ring: PolyRing, rows: Iterable[Iterable[str]]) -> RingMatrix:
    return RingMatrix(ring, [[ring(e) for e in r] for r in rows])
