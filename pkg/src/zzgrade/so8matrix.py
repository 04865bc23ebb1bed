"""Independent oracle: so(8) as 8x8 skew-symmetric rational matrices with
involutions given by explicit matrix conjugation.

This module deliberately shares no code with the Chevalley-basis machinery:
agreement between the two pipelines on overlapping so(8) cases is the
strongest correctness evidence in the package.  Only the exact arithmetic
layer is reused.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .exactq import QMatrix, kernel, rank_rows

N = 8
BASIS = [(i, j) for i in range(N) for j in range(i + 1, N)]  # E_ij - E_ji
BASIS_INDEX = {p: k for k, p in enumerate(BASIS)}


def _zero():
    return [[Fraction(0)] * N for _ in range(N)]


def basis_matrix(k: int):
    i, j = BASIS[k]
    m = _zero()
    m[i][j] = Fraction(1)
    m[j][i] = Fraction(-1)
    return m


def from_coords(v):
    m = _zero()
    for k, c in (v.items() if isinstance(v, dict) else enumerate(v)):
        if c:
            i, j = BASIS[k]
            m[i][j] += c
            m[j][i] -= c
    return m


def to_coords(m) -> dict:
    out = {}
    for k, (i, j) in enumerate(BASIS):
        if m[i][j]:
            out[k] = m[i][j]
    for i in range(N):
        for j in range(N):
            if m[i][j] != -m[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    return out


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(N) if a[i][k])
             for j in range(N)] for i in range(N)]


def mat_sub(a, b):
    return [[a[i][j] - b[i][j] for j in range(N)] for i in range(N)]


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


@dataclass(frozen=True)
class ConjInvolution:
    """Conjugation X -> M X M^{-1} with M^2 = +-identity.

    The action has order two on so(8) even when M^2 = -identity.
    """

    m: tuple
    m_inv: tuple

    @staticmethod
    def from_matrix(m) -> "ConjInvolution":
        mm = tuple(tuple(Fraction(x) for x in row) for row in m)
        sq = mat_mul(mm, mm)
        sign = sq[0][0]
        if sign not in (1, -1) or any(
                sq[i][j] != (sign if i == j else 0)
                for i in range(N) for j in range(N)):
            raise ValueError("matrix squared is not +-identity")
        inv = tuple(tuple(x / sign for x in row)
                    for row in mm)  # M^{ -1 } = M / (M^2 scalar)
        return ConjInvolution(mm, inv)

    def act(self, x):
        return mat_mul(mat_mul(list(self.m), x), list(self.m_inv))

    def action_columns(self):
        cols = []
        for k in range(len(BASIS)):
            img = to_coords(self.act(basis_matrix(k)))
            cols.append(img)
        return cols

    def action_qmatrix(self) -> QMatrix:
        nb = len(BASIS)
        cols = self.action_columns()
        return QMatrix([[cols[j].get(i, Fraction(0)) for j in range(nb)]
                        for i in range(nb)])

    def fixed_dim(self) -> int:
        return fixed_space(self).cols

    def commutes_with(self, other: "ConjInvolution") -> bool:
        a = mat_mul(list(self.m), list(other.m))
        b = mat_mul(list(other.m), list(self.m))
        scale = None
        for i in range(N):
            for j in range(N):
                if b[i][j]:
                    s = a[i][j] / b[i][j]
                    if scale is None:
                        scale = s
                    elif s != scale:
                        return False
                elif a[i][j]:
                    return False
        return scale in (1, -1)


def fixed_space(inv: ConjInvolution) -> QMatrix:
    """Columns spanning the fixed subalgebra, in so(8) coordinates."""
    nb = len(BASIS)
    return kernel(inv.action_qmatrix() - QMatrix.identity(nb))


def diag_involution(signs) -> ConjInvolution:
    """Conjugation by diag(+-1, ..., +-1); rejected when all signs agree."""
    signs = tuple(signs)
    if len(signs) != N or any(s not in (1, -1) for s in signs):
        raise ValueError("need 8 signs +-1")
    if len(set(signs)) == 1:
        raise ValueError("all signs equal: the action is the identity")
    m = _zero()
    for i, s in enumerate(signs):
        m[i][i] = Fraction(s)
    return ConjInvolution.from_matrix(m)


def j_involution() -> ConjInvolution:
    """Conjugation by J = ((0, -I), (I, 0)); fixed algebra is u(4)."""
    m = _zero()
    half = N // 2
    for i in range(half):
        m[i][half + i] = Fraction(-1)
        m[half + i][i] = Fraction(1)
    return ConjInvolution.from_matrix(m)


@dataclass(frozen=True)
class OracleLabel:
    dim: int
    rank: int
    center_dim: int
    derived_dim: int

    def key(self):
        return (self.dim, self.rank, self.center_dim, self.derived_dim)


@dataclass
class OraclePair:
    kind: str                       # "diag-diag" or "J-diag"
    blocks: tuple[int, ...] | None  # sign-block sizes for diagonal pairs
    fixed_dims: tuple[int, int, int]
    label: OracleLabel


def _joint_fixed(a: ConjInvolution, b: ConjInvolution) -> list[dict]:
    nb = len(BASIS)
    stacked = (a.action_qmatrix() - QMatrix.identity(nb)).vstack(
        b.action_qmatrix() - QMatrix.identity(nb))
    cols = kernel(stacked).columns()
    return [{i: v for i, v in enumerate(col) if v} for col in cols]


def label_subspace(coords: list[dict], seed: int = 1729) -> OracleLabel:
    """(dim, rank, center, derived) of a bracket-closed subspace, by direct
    matrix computations."""
    d = len(coords)
    if d == 0:
        return OracleLabel(0, 0, 0, 0)
    mats = [from_coords(c) for c in coords]
    # derived subalgebra
    rows = []
    for i in range(d):
        for j in range(i + 1, d):
            v = to_coords(commutator(mats[i], mats[j]))
            if v:
                rows.append([v.get(k, Fraction(0)) for k in range(len(BASIS))])
    derived = rank_rows(rows) if rows else 0
    # echelon coordinates inside the subspace for ad computations
    space_rows = [[c.get(k, Fraction(0)) for k in range(len(BASIS))]
                  for c in coords]
    space = QMatrix(space_rows).transpose()  # 28 x d

    def in_coords(mat):
        from .exactq import solve
        v = to_coords(mat)
        rhs = [v.get(k, Fraction(0)) for k in range(len(BASIS))]
        x = solve(space, rhs)
        if x is None:
            raise ValueError("vector escapes the subspace")
        return list(x)

    # centre: [x, y] = 0 for all y in the basis
    crow = []
    for m in mats:
        cols = [to_coords(commutator(x, m)) for x in mats]
        for k in range(len(BASIS)):
            crow.append([cols[t].get(k, Fraction(0)) for t in range(d)])
    center = len(kernel(QMatrix(crow)).columns()) if crow else d
    # generic rank: minimal adjoint kernel over seeded samples
    rng = random.Random(seed)
    best = d
    for _ in range(5):
        x = _zero()
        for m in mats:
            c = rng.randint(-5, 5)
            if c:
                for i in range(N):
                    for j in range(N):
                        x[i][j] += c * m[i][j]
        cols = [in_coords(commutator(x, m)) for m in mats]
        best = min(best, d - rank_rows(cols))
    return OracleLabel(d, best, center, derived)


def _diag_pool():
    """Distinct nontrivial diagonal conjugations, one per +-pair of sign
    vectors (opposite vectors act identically)."""
    out = []
    for signs in itertools.product((1, -1), repeat=N - 1):
        vec = (1,) + signs
        if len(set(vec)) == 1:
            continue
        out.append(vec)
    return out


_BLOCK_LABELS: dict[tuple[int, ...], OracleLabel] = {}


def _blocks_label(blocks: tuple[int, ...]) -> OracleLabel:
    """so(b1)+...+so(bm) invariants for a sign-block partition, computed once
    per partition by explicit matrices."""
    key = tuple(sorted((b for b in blocks if b), reverse=True))
    if key not in _BLOCK_LABELS:
        coords = []
        offset = 0
        for b in key:
            for i in range(offset, offset + b):
                for j in range(i + 1, offset + b):
                    coords.append({BASIS_INDEX[(i, j)]: Fraction(1)})
            offset += b
        _BLOCK_LABELS[key] = label_subspace(coords)
    return _BLOCK_LABELS[key]


def oracle_pairs() -> list[OraclePair]:
    """All commuting pairs in {diagonal conjugations} union {J}: exact fixed
    intersections labelled by (dim, rank, center, derived)."""
    diags = _diag_pool()
    out = []
    for a, b in itertools.combinations(diags, 2):
        blocks_map = {}
        for sa, sb in zip(a, b):
            blocks_map[(sa, sb)] = blocks_map.get((sa, sb), 0) + 1
        blocks = tuple(sorted(blocks_map.values(), reverse=True))
        pa = sum(v for (sa, _), v in blocks_map.items() if sa == -1)
        pb = sum(v for (_, sb), v in blocks_map.items() if sb == -1)
        pab = sum(v for (sa, sb), v in blocks_map.items() if sa != sb)
        fixed = tuple(_so_pq_dim(p) for p in (pa, pb, pab))
        out.append(OraclePair("diag-diag", blocks, fixed,
                              _blocks_label(blocks)))
    jmat = j_involution()
    for vec in diags:
        d = diag_involution(vec)
        if not jmat.commutes_with(d):
            continue
        joint = _joint_fixed(jmat, d)
        prod = ConjInvolution.from_matrix(
            mat_mul(list(jmat.m), list(d.m)))
        fixed = (jmat.fixed_dim(), d.fixed_dim(), prod.fixed_dim())
        out.append(OraclePair("J-diag", None, fixed, label_subspace(joint)))
    return out


def _so_pq_dim(p: int) -> int:
    q = N - p
    return p * (p - 1) // 2 + q * (q - 1) // 2
