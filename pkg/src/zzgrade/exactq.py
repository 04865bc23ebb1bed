"""Exact rational arithmetic and dense linear algebra.

Everything downstream (root systems, structure constants, eigenspace
splittings) relies on these routines being exact: there are no floats
anywhere, and elimination uses fraction-free (Bareiss-style) pivoting with a
deterministic pivot rule so that kernels are reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction

# The scalar type used throughout.  Fraction already enforces the invariants
# we need: always reduced, denominator > 0, zero is 0/1.
Rational = Fraction

Vector = tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce an int/str/Fraction to an exact rational."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries) -> Vector:
    return tuple(rat(x) for x in entries)


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Vector) -> Vector:
    c = rat(c)
    return tuple(c * x for x in a)


def vec_dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def vec_is_zero(a) -> bool:
    return all(x == 0 for x in a)


class QMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(rat(x) for x in row) for row in entries)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")
        self.entries = rows

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        return QMatrix([[0] * cols for _ in range(rows)])

    @staticmethod
    def from_columns(columns) -> "QMatrix":
        cols = [tuple(c) for c in columns]
        if not cols:
            return QMatrix.zeros(0, 0)
        n = len(cols[0])
        return QMatrix([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.entries[i][j] for i in range(self.rows)]
                        for j in range(self.cols)])

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix([[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries, strict=True)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix([[a - b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries, strict=True)])

    def scale(self, c) -> "QMatrix":
        c = rat(c)
        return QMatrix([[c * a for a in row] for row in self.entries])

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        ot = other.transpose().entries
        return QMatrix([[vec_dot(row, col) for col in ot] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            return self.matmul(other)
        return self.matvec(other)

    def matvec(self, v) -> Vector:
        v = vec(v)
        if self.cols != len(v):
            raise ValueError("dimension mismatch in matvec")
        return tuple(vec_dot(row, v) for row in self.entries)

    def vstack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("dimension mismatch in vstack")
        return QMatrix(list(self.entries) + list(other.entries))


def _echelon(entries):
    """Fraction-free forward elimination.

    Returns (rows, pivot_cols).  Pivot choice is deterministic: scan columns
    left to right, take the first row with a nonzero entry.  The Bareiss
    update keeps intermediate values as exact products/quotients, which for
    integer input never leaves the integers.
    """
    m = [list(row) for row in entries]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    prev = Fraction(1)
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            if mic == 0 and prev == 1:
                continue
            row_i = m[i]
            row_r = m[r]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) / prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def _rref(entries):
    """Reduced row echelon form (pivots normalised to 1, zeros above)."""
    m, pivots = _echelon(entries)
    ncols = len(m[0]) if m else 0
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        inv = 1 / m[k][c]
        m[k] = [x * inv for x in m[k]]
        for i in range(k):
            f = m[i][c]
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return [m[k] for k in range(len(pivots))], pivots


def rank(m: QMatrix) -> int:
    """Exact rank over the rationals."""
    return rank_rows(m.entries)


def rank_rows(rows) -> int:
    """Exact rank of a row iterable; integer elimination with gcd stripping
    to keep intermediate entries small."""
    from math import gcd, lcm
    m = []
    for row in rows:
        vals = [rat(x) for x in row]
        den = 1
        for x in vals:
            den = lcm(den, x.denominator)
        r = [int(x * den) for x in vals]
        g = 0
        for x in r:
            g = gcd(g, x)
        if g:
            m.append([x // g for x in r])
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for c in range(ncols):
        piv = None
        for i in range(rk, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][c]
        for i in range(rk + 1, len(m)):
            q = m[i][c]
            if q:
                row = [p * x - q * y for x, y in zip(m[i], m[rk])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g else row
        rk += 1
        if rk == len(m):
            break
    return rk


def kernel(m: QMatrix) -> QMatrix:
    """Basis of the right null space, as matrix columns.

    The number of columns is cols(m) - rank(m) and m * kernel(m) == 0
    exactly.  Free variables are set to 1 one at a time in column order,
    which makes the basis deterministic.
    """
    rows, pivots = _rref(m.entries)
    ncols = m.cols
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            v[c] = -sum(rows[k][j] * v[j] for j in range(c + 1, ncols))
        basis.append(tuple(v))
    return QMatrix.from_columns(basis) if basis else QMatrix.zeros(ncols, 0)


def solve(m: QMatrix, b) -> Vector | None:
    """Some exact solution x of m x = b, or None if inconsistent."""
    b = vec(b)
    if len(b) != m.rows:
        raise ValueError("dimension mismatch in solve")
    aug = [list(row) + [bb] for row, bb in zip(m.entries, b)]
    rows, pivots = _rref(aug)
    ncols = m.cols
    for row in rows:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for k, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = rows[k][ncols] - sum(rows[k][j] * x[j] for j in range(c + 1, ncols))
    return tuple(x)


def inverse(m: QMatrix) -> QMatrix:
    """Exact inverse; raises ValueError if the matrix is singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = [list(row) + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(m.entries)]
    rows, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return QMatrix([row[n:] for row in rows])


Sparse = dict


def sparsify(v) -> dict:
    """Dense sequence or sparse dict -> sparse dict of exact rationals."""
    if isinstance(v, dict):
        return {i: rat(x) for i, x in v.items() if x}
    return {i: rat(x) for i, x in enumerate(v) if x}


class RowSpace:
    """Incremental row space (RREF, sparse rows) with exact membership.

    Rows are keyed by pivot column and normalised to leading 1; insertion
    order does not affect the resulting space, and reduction is
    deterministic: the pivot of a new row is its least nonzero column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}

    @property
    def dim(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, v) -> dict:
        w = sparsify(v)
        for c in sorted(self.pivot_rows):
            f = w.get(c)
            if f:
                for j, rv in self.pivot_rows[c].items():
                    nv = w.get(j, 0) - f * rv
                    if nv:
                        w[j] = nv
                    elif j in w:
                        del w[j]
        return w

    def reduce_with_coords(self, v):
        """(residue, coordinates over the pivot-sorted basis)."""
        w = sparsify(v)
        coords = []
        for c in sorted(self.pivot_rows):
            f = w.get(c, Fraction(0))
            coords.append(f)
            if f:
                for j, rv in self.pivot_rows[c].items():
                    nv = w.get(j, 0) - f * rv
                    if nv:
                        w[j] = nv
                    elif j in w:
                        del w[j]
        return w, coords

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def add(self, v) -> bool:
        """Insert a vector; returns True if it enlarged the space."""
        w = self.reduce(v)
        if not w:
            return False
        piv = min(w)
        inv = 1 / w[piv]
        row = {j: x * inv for j, x in w.items()}
        for r in self.pivot_rows.values():
            f = r.get(piv)
            if f:
                for j, rv in row.items():
                    nv = r.get(j, 0) - f * rv
                    if nv:
                        r[j] = nv
                    elif j in r:
                        del r[j]
        self.pivot_rows[piv] = row
        return True

    def basis(self) -> list[dict]:
        """Sparse RREF rows in pivot order."""
        return [dict(self.pivot_rows[c]) for c in sorted(self.pivot_rows)]

    def dense_basis(self) -> list[Vector]:
        out = []
        for row in self.basis():
            dense = [Fraction(0)] * self.ncols
            for j, v in row.items():
                dense[j] = v
            out.append(tuple(dense))
        return out
