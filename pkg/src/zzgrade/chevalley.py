"""Split Lie algebras over Q in a Chevalley basis with exact integer
structure constants.

Simply-laced types get their signs from a bimultiplicative cocycle on the
root lattice determined by an orientation of the Dynkin diagram; the
orientation is chosen invariant under the diagram symmetries so that the
naive generator permutation extends to an automorphism.  Multiply-laced
types (B, C, F4, G2) are built as the fixed subalgebra of a diagram
automorphism of a simply-laced parent, re-expressed in their own root
system; this keeps every constant exact and machine-checkable.

Basis order is global: simple coroots h_1..h_r, then e_alpha for positive
roots (height, then lex), then e_{-alpha} mirrored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactq import QMatrix, RowSpace, kernel, rat, solve
from .rootsys import RootSystem

Sparse = dict[int, Fraction]


# -- sign cocycle ----------------------------------------------------------

_CUSTOM_ORIENTATION = {
    # flip-invariant for E6 (1<->5, 2<->4 in display numbering)
    "E6": [(0, 1), (1, 2), (3, 2), (4, 3), (2, 5)],
    # all outer nodes point at the centre; invariant under triality
    "D4": [(0, 1), (2, 1), (3, 1)],
}


def _orientation(rs: RootSystem) -> list[tuple[int, int]]:
    if rs.type_label in _CUSTOM_ORIENTATION:
        return _CUSTOM_ORIENTATION[rs.type_label]
    from .rootsys import _diagram_data
    edges, _ = _diagram_data(rs.letter, rs.rank)
    if rs.letter == "A":
        # symmetric under the order-reversing flip: orient toward the middle
        n = rs.rank
        return [(i, i + 1) if i <= (n - 2) // 2 else (i + 1, i)
                for i, _, _ in edges]
    return [(i, j) for i, j, _ in edges]


def _cocycle_exponents(rs: RootSystem, flipped: bool) -> list[list[int]]:
    n = rs.rank
    ex = [[0] * n for _ in range(n)]
    for i in range(n):
        ex[i][i] = 1
    for i, j in _orientation(rs):
        if flipped:
            i, j = j, i
        ex[i][j] = 1
    return ex


# -- the algebra -----------------------------------------------------------

@dataclass
class LieAlgebra:
    """Exact structure constants over a fixed Chevalley basis."""

    rs: RootSystem
    convention: str
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]]
    words: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        rs = self.rs
        self.rank = rs.rank
        self.npos = rs.num_positive
        self.dim = rs.dimension
        self._root_base = self.rank

    # basis indexing -------------------------------------------------------

    def root_of_index(self, i: int):
        return self.rs.roots[i - self.rank]

    def index_of_root(self, root) -> int:
        return self.rank + self.rs.root_index[tuple(root)]

    def is_cartan_index(self, i: int) -> bool:
        return i < self.rank

    def basis_vector(self, i: int) -> Sparse:
        return {i: Fraction(1)}

    def basis_labels(self) -> list[str]:
        out = [f"h{i + 1}" for i in range(self.rank)]
        out += [f"e{r}" for r in self.rs.roots]
        return out

    # brackets -------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        if i == j:
            return ()
        if i < j:
            return self.table.get((i, j), ())
        return tuple((k, -c) for k, c in self.table.get((j, i), ()))

    def bracket(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for i, xi in x.items():
            if xi == 0:
                continue
            for j, yj in y.items():
                if yj == 0:
                    continue
                coeff = xi * yj
                for k, c in self.bracket_basis(i, j):
                    v = out.get(k, 0) + coeff * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def bracket_dense(self, x, y):
        sx = {i: rat(v) for i, v in enumerate(x) if v}
        sy = {i: rat(v) for i, v in enumerate(y) if v}
        return self.to_dense(self.bracket(sx, sy))

    def to_dense(self, x: Sparse):
        out = [Fraction(0)] * self.dim
        for i, v in x.items():
            out[i] = v
        return tuple(out)

    def to_sparse(self, x) -> Sparse:
        return {i: rat(v) for i, v in enumerate(x) if v}

    def jacobi_triple(self, i: int, j: int, k: int) -> bool:
        """Exact Jacobi test on one ordered basis triple."""
        acc: Sparse = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, cm in self.bracket_basis(a, b):
                for t, ct in self.bracket_basis(m, c):
                    v = acc.get(t, 0) + cm * ct
                    if v:
                        acc[t] = v
                    elif t in acc:
                        del acc[t]
        return not acc

    # structure-constant views ----------------------------------------------

    def n_constant(self, alpha, beta) -> int:
        """N(alpha, beta) for roots with alpha+beta a root."""
        i, j = self.index_of_root(alpha), self.index_of_root(beta)
        entries = self.bracket_basis(i, j)
        assert len(entries) == 1
        return entries[0][1]

    def coroot_vector(self, alpha) -> Sparse:
        cc = self.rs.coroot_coords(tuple(alpha))
        return {i: Fraction(c) for i, c in enumerate(cc) if c}


# -- construction ----------------------------------------------------------

def _folding_data(letter: str, n: int) -> tuple[str, list[tuple[int, ...]]]:
    """Parent type and parent-node orbits listed in child-node order."""
    if letter == "B":
        return f"D{n + 1}", [(i,) for i in range(n - 1)] + [(n - 1, n)]
    if letter == "C":
        m = 2 * n - 2
        return f"A{2 * n - 1}", [(i, m - i) for i in range(n - 1)] + [(n - 1,)]
    if letter == "F":
        return "E6", [(5,), (2,), (1, 3), (0, 4)]
    if letter == "G":
        return "D4", [(0, 2, 3), (1,)]
    raise ValueError(letter)


def build_chevalley(rs: RootSystem, convention: str = "standard") -> LieAlgebra:
    """Structure constants for any supported type.

    convention: "standard" or "flipped" (reversed edge orientations in the
    sign cocycle).  Both pass the Jacobi suite; classification output does
    not depend on the choice.
    """
    if convention not in ("standard", "flipped"):
        raise ValueError(f"unknown convention {convention!r}")
    if rs.letter in ("A", "D", "E"):
        alg = _build_simply_laced(rs, convention)
    else:
        alg = _build_folded(rs, convention)
    _sanity_check(alg)
    alg.words = _construction_words(alg)
    return alg


def _build_simply_laced(rs: RootSystem, convention: str) -> LieAlgebra:
    n = rs.rank
    ex = _cocycle_exponents(rs, flipped=(convention == "flipped"))
    roots = rs.roots
    nroots = len(roots)
    npos = rs.num_positive

    # parity row a @ ex (mod 2) per root, so each sign is an O(rank) dot
    rows = []
    for r in roots:
        rows.append(tuple(sum(r[i] * ex[i][j] for i in range(n)) % 2
                          for j in range(n)))

    def sign(ia: int, ib: int) -> int:
        row = rows[ia]
        b = roots[ib]
        e = sum(row[j] * b[j] for j in range(n)) % 2
        return -1 if e else 1

    def s(ia: int) -> int:
        return 1 if ia < npos else -1

    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    # Cartan rows
    for i in range(n):
        for ib, b in enumerate(roots):
            c = rs.pair_simple(b, i)
            if c:
                table[(i, n + ib)] = ((n + ib, c),)
    # root-root rows
    idx = rs.root_index
    for ia in range(nroots):
        a = roots[ia]
        for ib in range(ia + 1, nroots):
            b = roots[ib]
            ssum = tuple(x + y for x, y in zip(a, b))
            if not any(ssum):
                cc = rs.coroot_coords(a if ia < npos else b)
                sgn = 1 if ia < npos else -1
                table[(n + ia, n + ib)] = tuple(
                    (i, sgn * c) for i, c in enumerate(cc) if c)
                continue
            k = idx.get(ssum)
            if k is None:
                continue
            nc = s(ia) * s(ib) * s(k) * sign(ia, ib)
            table[(n + ia, n + ib)] = ((n + k, nc),)
    return LieAlgebra(rs, convention, table)


def _build_folded(rs: RootSystem, convention: str) -> LieAlgebra:
    parent_label, orbits_on_simples = _folding_data(rs.letter, rs.rank)
    parent_rs = RootSystem(parent_label)
    parent = _build_simply_laced(parent_rs, convention)
    perm = list(range(parent_rs.rank))
    for cyc in orbits_on_simples:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b

    # orbits of the induced lattice map on parent roots
    img = {r: tuple(sum(r[i] for i in range(parent_rs.rank)
                        if perm[i] == j) for j in range(parent_rs.rank))
           for r in parent_rs.roots}
    root_orbits = _perm_orbits_map(parent_rs.roots, img)

    # match orbits to child roots through restricted weights
    child_weights = {}
    for beta in rs.roots:
        child_weights[tuple(rs.pair_simple(beta, c) for c in range(rs.rank))] = beta
    orbit_of_child: dict[tuple, list] = {}
    for orbit in root_orbits:
        a = orbit[0]
        t = tuple(sum(parent_rs.pair_simple(a, i) for i in orb)
                  for orb in orbits_on_simples)
        beta = child_weights.get(t)
        if beta is None:
            raise AssertionError("orbit does not restrict to a child root")
        for x in orbit:
            for y in orbit:
                if x != y and parent_rs.inner(x, y) != 0:
                    raise AssertionError("folding orbit is not orthogonal")
        orbit_of_child[beta] = orbit

    if len(orbit_of_child) != len(rs.roots):
        raise AssertionError("folding mismatch between orbits and child roots")

    # child basis vectors inside the parent
    pr = parent_rs.rank
    basis_parent: list[Sparse] = []
    for c, orb in enumerate(orbits_on_simples):
        basis_parent.append({i: Fraction(1) for i in orb})
    for beta in rs.roots:
        basis_parent.append({parent.index_of_root(a): Fraction(1)
                             for a in orbit_of_child[beta]})

    def express(v: Sparse):
        """Coordinates of a parent vector over the child basis; exact."""
        out = {}
        w = dict(v)
        for ci, bp in enumerate(basis_parent):
            keys = list(bp)
            if all(w.get(k, 0) == 0 for k in keys):
                continue
            vals = {w.get(k, Fraction(0)) / bp[k] for k in keys}
            if len(vals) != 1:
                # Cartan components may be a genuine linear combination
                break
            c = vals.pop()
            if c:
                out[ci] = c
                for k in keys:
                    w[k] -= c * bp[k]
        if any(w.values()):
            # fall back to an exact solve on the Cartan block
            out = {}
            w = dict(v)
            for ci in range(rs.rank, len(basis_parent)):
                bp = basis_parent[ci]
                k0 = next(iter(bp))
                c = w.get(k0, Fraction(0)) / bp[k0]
                if c:
                    out[ci] = c
                    for k in bp:
                        w[k] -= c * bp[k]
            cart = [[basis_parent[ci].get(i, Fraction(0)) for ci in range(rs.rank)]
                    for i in range(pr)]
            rhs = [w.get(i, Fraction(0)) for i in range(pr)]
            if any(w.get(i, 0) for i in w if i >= pr):
                raise AssertionError("vector outside the folded subalgebra")
            x = solve(QMatrix(cart), rhs)
            if x is None:
                raise AssertionError("vector outside the folded subalgebra")
            for ci, c in enumerate(x):
                if c:
                    out[ci] = c
        return out

    nb = len(basis_parent)
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for i in range(nb):
        for j in range(i + 1, nb):
            v = parent.bracket(basis_parent[i], basis_parent[j])
            if not v:
                continue
            coords = express(v)
            ent = []
            for k in sorted(coords):
                c = coords[k]
                if c.denominator != 1:
                    raise AssertionError("non-integer folded constant")
                ent.append((k, int(c)))
            if ent:
                table[(i, j)] = tuple(ent)
    return LieAlgebra(rs, convention, table)


def _perm_orbits(perm) -> list[tuple[int, ...]]:
    seen = set()
    orbits = []
    for i in range(len(perm)):
        if i in seen:
            continue
        orb = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            orb.append(j)
            seen.add(j)
            j = perm[j]
        orbits.append(tuple(orb))
    return orbits


def _perm_orbits_map(items, img) -> list[tuple]:
    seen = set()
    orbits = []
    for r in items:
        if r in seen:
            continue
        orb = [r]
        seen.add(r)
        x = img[r]
        while x != r:
            orb.append(x)
            seen.add(x)
            x = img[x]
        orbits.append(tuple(orb))
    return orbits


def _construction_words(alg: LieAlgebra) -> dict[int, tuple[int, int]]:
    """For each positive root of height >= 2, a defining bracket
    e_gamma = [e_i, e_{gamma - alpha_i}] / N recorded as (i, index of gamma')."""
    rs = alg.rs
    words = {}
    for k, gamma in enumerate(rs.positive_roots):
        if sum(gamma) == 1:
            continue
        for i in range(rs.rank):
            gp = tuple(g - (1 if t == i else 0) for t, g in enumerate(gamma))
            if gp in rs.root_index and sum(gp) > 0 and all(c >= 0 for c in gp):
                words[alg.rank + rs.root_index[gamma]] = (
                    i, alg.index_of_root(gp))
                break
        else:
            raise AssertionError("positive root without a simple summand")
    return words


def _sanity_check(alg: LieAlgebra) -> None:
    """Cheap structural checks run on every build."""
    rs = alg.rs
    # sl2 triples and coroot normalisation
    for k, gamma in enumerate(rs.positive_roots):
        i = alg.index_of_root(gamma)
        j = alg.index_of_root(tuple(-c for c in gamma))
        ent = dict(alg.bracket_basis(i, j))
        cc = alg.coroot_vector(gamma)
        if ent != {k: v for k, v in cc.items()}:
            raise AssertionError(f"[e,f] != coroot at {gamma}")
        hent = alg.bracket(cc, {i: Fraction(1)})
        if hent != {i: Fraction(2)}:
            raise AssertionError(f"[h_a, e_a] != 2 e_a at {gamma}")
    # Chevalley magnitudes |N| = p + 1
    for (i, j), ent in alg.table.items():
        if alg.is_cartan_index(i) or len(ent) != 1:
            continue
        k, c = ent[0]
        if alg.is_cartan_index(k):
            continue
        a, b = alg.root_of_index(i), alg.root_of_index(j)
        p = 0
        cur = tuple(x - y for x, y in zip(b, a))
        while cur in rs.root_index:
            p += 1
            cur = tuple(x - y for x, y in zip(cur, a))
        if abs(c) != p + 1:
            raise AssertionError(f"|N| != p+1 at {a}, {b}")


def jacobi_exhaustive(alg: LieAlgebra) -> int:
    """Check Jacobi on all dim^3 ordered basis triples; returns the count."""
    n = alg.dim
    count = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not alg.jacobi_triple(i, j, k):
                    raise AssertionError(f"Jacobi fails at {(i, j, k)}")
                count += 1
    return count


def jacobi_sampled(alg: LieAlgebra, samples: int, seed: int = 1729) -> int:
    rng = random.Random(seed)
    n = alg.dim
    for _ in range(samples):
        i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if not alg.jacobi_triple(i, j, k):
            raise AssertionError(f"Jacobi fails at {(i, j, k)}")
    return samples


# -- subalgebras -----------------------------------------------------------

class Subalgebra:
    """Subspace of a LieAlgebra with exact membership and coordinates.

    The basis is the sparse RREF row basis, in pivot order.
    """

    def __init__(self, alg: LieAlgebra, vectors):
        self.alg = alg
        space = RowSpace(alg.dim)
        for v in vectors:
            space.add(v)
        self.space = space
        self.basis = space.basis()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return self.space.contains(v)

    def coordinates(self, v):
        """Coordinates over self.basis; None if the vector is outside."""
        residue, coords = self.space.reduce_with_coords(v)
        if residue:
            return None
        return coords

    def sparse_basis(self):
        return self.basis

    def dense_basis(self):
        return self.space.dense_basis()

    def is_bracket_closed(self) -> bool:
        sb = self.basis
        for i in range(len(sb)):
            for j in range(i + 1, len(sb)):
                if not self.contains(self.alg.bracket(sb[i], sb[j])):
                    return False
        return True


def subalgebra_closure(alg: LieAlgebra, generators) -> Subalgebra:
    """Smallest bracket-closed subspace containing the generators."""
    space = RowSpace(alg.dim)
    queue = []
    for g in generators:
        g = alg.to_sparse(g) if not isinstance(g, dict) else g
        if space.add(g):
            queue.append(g)
    members = list(queue)
    while queue:
        nxt = []
        for x in queue:
            for y in members:
                v = alg.bracket(x, y)
                if v and space.add(v):
                    nxt.append(v)
        members += nxt
        queue = nxt
    return Subalgebra(alg, space.basis())


def centralizer(alg: LieAlgebra, of: Subalgebra, within: Subalgebra) -> Subalgebra:
    """{x in within : [x, s] = 0 for all s in of}, exact."""
    wb = within.sparse_basis()
    ob = of.sparse_basis()
    if not wb:
        return Subalgebra(alg, [])
    rows = []
    for s in ob:
        cols = [alg.bracket(w, s) for w in wb]
        support = sorted(set().union(*[set(c) for c in cols]) if cols else set())
        for r in support:
            rows.append([cols[k].get(r, Fraction(0)) for k in range(len(wb))])
    ker = kernel(QMatrix(rows)) if rows else QMatrix.identity(len(wb))
    vecs = []
    for col in ker.columns():
        acc: Sparse = {}
        for c, w in zip(col, wb):
            if c:
                for i, v in w.items():
                    acc[i] = acc.get(i, Fraction(0)) + c * v
        vecs.append(acc)
    return Subalgebra(alg, vecs)


def generic_rank(sub: Subalgebra, samples: int = 5, seed: int = 1729) -> int:
    """Reductive rank as the minimal generic adjoint kernel dimension.

    Uses seeded random rational elements; the minimum over five independent
    samples is stable for the reductive subalgebras that occur here.
    """
    alg = sub.alg
    d = sub.dim
    if d == 0:
        return 0
    rng = random.Random(seed)
    sb = sub.sparse_basis()
    best = d
    for _ in range(samples):
        x: Sparse = {}
        for b in sb:
            c = rng.randint(-5, 5)
            if c:
                for i, v in b.items():
                    x[i] = x.get(i, Fraction(0)) + c * v
        cols = []
        for b in sb:
            img = alg.bracket(x, b)
            coords = sub.coordinates(img)
            if coords is None:
                raise AssertionError("subalgebra not ad-invariant")
            cols.append(coords)
        from .exactq import rank_rows
        best = min(best, d - rank_rows(cols))
    return best


def derived_dim(sub: Subalgebra) -> int:
    """Dimension of [S, S]."""
    alg = sub.alg
    sb = sub.sparse_basis()
    space = RowSpace(alg.dim)
    for i in range(len(sb)):
        for j in range(i + 1, len(sb)):
            v = alg.bracket(sb[i], sb[j])
            if v:
                space.add(v)
    return space.dim


# -- structure-constant cache ----------------------------------------------

CACHE_VERSION = "chevalley-cache v1"


def write_cache(alg: LieAlgebra, path) -> None:
    """Bit-exact text cache, sorted by (i, j, k)."""
    lines = [f"{CACHE_VERSION} {alg.rs.type_label} {alg.rank} {alg.dim}"]
    ents = []
    for (i, j), entries in alg.table.items():
        for k, c in entries:
            ents.append((i, j, k, c))
    for i, j, k, c in sorted(ents):
        lines.append(f"b {i} {j} {k} {c}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_cache(rs: RootSystem, path, convention: str = "standard") -> LieAlgebra:
    with open(path) as fh:
        header = fh.readline().split()
        if " ".join(header[:2]) != CACHE_VERSION:
            raise ValueError("bad cache header")
        if header[2] != rs.type_label or int(header[3]) != rs.rank \
                or int(header[4]) != rs.dimension:
            raise ValueError("cache does not match the requested type")
        table: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] != "b":
                raise ValueError(f"bad cache line: {line!r}")
            i, j, k, c = map(int, parts[1:])
            table.setdefault((i, j), []).append((k, c))
    fixed = {k: tuple(v) for k, v in table.items()}
    alg = LieAlgebra(rs, convention, fixed)
    _sanity_check(alg)
    alg.words = _construction_words(alg)
    return alg


# -- cached algebra factory --------------------------------------------------

_ALGEBRAS: dict[tuple[str, str], LieAlgebra] = {}


def algebra(type_label: str, convention: str = "standard") -> LieAlgebra:
    """Shared immutable algebra instance per (type, convention)."""
    key = (type_label.upper(), convention)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = build_chevalley(RootSystem(key[0]), convention)
    return _ALGEBRAS[key]


def algebra_cached(type_label: str, cache_dir, convention: str = "standard") -> LieAlgebra:
    """Like algebra(), but backed by the on-disk structure-constant cache."""
    from pathlib import Path
    key = (type_label.upper(), convention)
    path = Path(cache_dir) / f"{key[0].lower()}-{convention}.chv"
    if key in _ALGEBRAS:
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            write_cache(_ALGEBRAS[key], path)
        return _ALGEBRAS[key]
    rs = RootSystem(key[0])
    if path.exists():
        alg = read_cache(rs, path, convention)
    else:
        alg = build_chevalley(rs, convention)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_cache(alg, path)
    _ALGEBRAS[key] = alg
    return alg
