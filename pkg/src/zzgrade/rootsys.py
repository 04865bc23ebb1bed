"""Root systems, Weyl machinery and subsystem typing.

Roots are integer coordinate vectors over the simple-root basis.  Node
numbering: E6 uses the line-plus-branch numbering with line nodes 1..5 and
branch node 6 attached to node 3 (so the diagram flip is 1<->5, 2<->4);
all other types use Bourbaki numbering.  Indices are 0-based internally.

All pairings are exact integers.  The symmetric form is normalised so that
short roots have squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactq import QMatrix, rank as qrank
from .labels import AlgebraLabel

Root = tuple[int, ...]


def _chain_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def _diagram_data(letter: str, n: int):
    """Edges (0-based) with symmetric-form value, and d_i = |alpha_i|^2 / 2."""
    if letter == "A":
        return [(i, j, -1) for i, j in _chain_edges(n)], [1] * n
    if letter == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        edges = [(i, i + 1, -2) for i in range(n - 1)]
        return edges, [2] * (n - 1) + [1]
    if letter == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        edges = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 2, n - 1, -2)]
        return edges, [1] * (n - 1) + [2]
    if letter == "D":
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        edges = [(i, j, -1) for i, j in _chain_edges(n - 1)]
        edges.append((n - 3, n - 1, -1))
        return edges, [1] * n
    if letter == "E":
        if n == 6:
            edges = [(0, 1, -1), (1, 2, -1), (2, 3, -1), (3, 4, -1), (2, 5, -1)]
        elif n == 7:
            edges = [(0, 2, -1), (2, 3, -1), (3, 4, -1), (4, 5, -1), (5, 6, -1),
                     (1, 3, -1)]
        elif n == 8:
            edges = [(0, 2, -1), (2, 3, -1), (3, 4, -1), (4, 5, -1), (5, 6, -1),
                     (6, 7, -1), (1, 3, -1)]
        else:
            raise ValueError("E_n needs n in {6,7,8}")
        return edges, [1] * n
    if letter == "F":
        if n != 4:
            raise ValueError("only F4")
        return [(0, 1, -2), (1, 2, -2), (2, 3, -1)], [2, 2, 1, 1]
    if letter == "G":
        if n != 2:
            raise ValueError("only G2")
        return [(0, 1, -3)], [1, 3]
    raise ValueError(f"unknown type {letter}{n}")


def parse_type(label: str) -> tuple[str, int]:
    label = label.strip().upper()
    letter, num = label[0], label[1:]
    if letter not in "ABCDEFG" or not num.isdigit():
        raise ValueError(f"unsupported type label {label!r}")
    return letter, int(num)


class RootSystem:
    """Complete root system of a simple type, with Weyl helpers."""

    def __init__(self, type_label: str):
        letter, n = parse_type(type_label)
        self.letter = letter
        self.rank = n
        self.type_label = f"{letter}{n}"
        edges, d = _diagram_data(letter, n)
        self.d = tuple(d)
        bil = [[0] * n for _ in range(n)]
        for i in range(n):
            bil[i][i] = 2 * d[i]
        for i, j, v in edges:
            bil[i][j] = v
            bil[j][i] = v
        self.bilinear = tuple(tuple(row) for row in bil)
        # cartan[i][j] = <alpha_i, alpha_j^vee> = (alpha_i, alpha_j) / d_j
        self.cartan = tuple(tuple(Fraction(bil[i][j], d[j]) for j in range(n))
                            for i in range(n))
        if any(x.denominator != 1 for row in self.cartan for x in row):
            raise ValueError("non-integral Cartan matrix")
        self.cartan = tuple(tuple(int(x) for x in row) for row in self.cartan)
        self._generate_roots()

    # -- generation ------------------------------------------------------

    def _generate_roots(self):
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for j in range(n):
                    img = self.reflect_simple(j, beta)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        pos = sorted((r for r in seen if sum(r) > 0),
                     key=lambda r: (sum(r), r))
        self.positive_roots: tuple[Root, ...] = tuple(pos)
        self.roots: tuple[Root, ...] = tuple(pos) + tuple(
            tuple(-c for c in r) for r in pos)
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        self.highest_root = pos[-1]
        if sum(self.highest_root) != max(sum(r) for r in pos):
            raise AssertionError("height ordering broken")

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def dimension(self) -> int:
        """Dimension of the corresponding Lie algebra."""
        return self.rank + len(self.roots)

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    # -- pairings --------------------------------------------------------

    def inner(self, a: Root, b: Root) -> int:
        bil = self.bilinear
        return sum(a[i] * b[j] * bil[i][j]
                   for i in range(self.rank) for j in range(self.rank)
                   if a[i] and b[j])

    def norm_half(self, a: Root) -> int:
        """(a, a) / 2; equals 1 for short roots."""
        v = self.inner(a, a)
        assert v % 2 == 0
        return v // 2

    def pair_with_coroot(self, beta: Root, alpha: Root) -> int:
        """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
        num = self.inner(beta, alpha)
        den = self.norm_half(alpha)
        assert num % den == 0
        return num // den

    def pair_simple(self, beta: Root, j: int) -> int:
        """<beta, alpha_j^vee> via the Cartan matrix."""
        return sum(beta[i] * self.cartan[i][j] for i in range(self.rank) if beta[i])

    def coroot_coords(self, alpha: Root) -> tuple[int, ...]:
        """alpha^vee as integer coordinates over the simple coroots."""
        da = self.norm_half(alpha)
        out = []
        for i in range(self.rank):
            num = alpha[i] * self.d[i]
            assert num % da == 0
            out.append(num // da)
        return tuple(out)

    def reflect_simple(self, j: int, beta: Root) -> Root:
        c = self.pair_simple(beta, j)
        if c == 0:
            return beta
        return tuple(b - c if i == j else b for i, b in enumerate(beta))

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_index

    # -- Weyl elements ---------------------------------------------------

    def simple_reflection_matrix(self, j: int):
        n = self.rank
        rows = [[1 if k == i else 0 for i in range(n)] for k in range(n)]
        for i in range(n):
            rows[j][i] -= self.cartan[i][j]
        return tuple(tuple(r) for r in rows)

    def weyl_from_word(self, word) -> "WeylElement":
        m = _identity(self.rank)
        for j in word:
            m = _matmul(m, self.simple_reflection_matrix(j))
        return WeylElement(self, m, tuple(word))

    def longest_element(self, subset=None) -> "WeylElement":
        """Longest element of the full Weyl group or a parabolic subgroup.

        Greedy construction: repeatedly multiply by the first simple
        reflection (in index order) whose simple root is still sent to a
        positive root.
        """
        subset = tuple(range(self.rank)) if subset is None else tuple(subset)
        m = _identity(self.rank)
        word = []
        while True:
            for j in subset:
                img = _apply(m, self.simple_root(j))
                if sum(img) > 0:
                    m = _matmul(m, self.simple_reflection_matrix(j))
                    word.append(j)
                    break
            else:
                return WeylElement(self, m, tuple(word))

    def decompose_lattice_auto(self, m) -> tuple["WeylElement", tuple[int, ...]]:
        """Factor a lattice automorphism as (Weyl element, diagram symmetry).

        Left-multiplies by simple reflections until the simple system is
        restored; the factorisation m = w * gamma is unique and recomposing
        reproduces the input exactly.
        """
        m = tuple(tuple(row) for row in m)
        self._check_lattice_auto(m)
        u = m
        u_inv = _int_inverse(m)
        word_rev = []
        while True:
            for j in range(self.rank):
                pre = _apply(u_inv, self.simple_root(j))
                if sum(pre) < 0:
                    s = self.simple_reflection_matrix(j)
                    u = _matmul(s, u)
                    u_inv = _matmul(u_inv, s)
                    word_rev.append(j)
                    break
            else:
                break
        perm = []
        for i in range(self.rank):
            img = _apply(u, self.simple_root(i))
            if img not in self.root_index or sum(img) != 1:
                raise ValueError("residual map is not a diagram symmetry")
            perm.append(img.index(1))
        perm = tuple(perm)
        for i in range(self.rank):
            for j in range(self.rank):
                if self.cartan[perm[i]][perm[j]] != self.cartan[i][j]:
                    raise ValueError("residual map does not preserve the diagram")
        w = self.weyl_from_word(word_rev)
        recomposed = _matmul(w.matrix, _perm_matrix(self.rank, perm))
        if recomposed != m:
            raise AssertionError("w * gamma does not recompose the input")
        return w, perm

    def _check_lattice_auto(self, m):
        for r in self.roots:
            if _apply(m, r) not in self.root_index:
                raise ValueError("matrix does not permute the roots")
        n = self.rank
        for i in range(n):
            for j in range(n):
                a = _apply(m, self.simple_root(i))
                b = _apply(m, self.simple_root(j))
                if self.inner(a, b) != self.bilinear[i][j]:
                    raise ValueError("matrix does not preserve the pairing")

    def diagram_symmetry_matrix(self, perm):
        return _perm_matrix(self.rank, tuple(perm))

    # -- subsystems ------------------------------------------------------

    def check_closed(self, subset) -> None:
        sub = {tuple(r) for r in subset}
        for a in sub:
            if tuple(-x for x in a) not in sub:
                raise ValueError("subset not closed under negation")
            if a not in self.root_index:
                raise ValueError("subset contains non-roots")
        for a in sub:
            for b in sub:
                s = tuple(x + y for x, y in zip(a, b))
                if s in self.root_index and s not in sub:
                    raise ValueError("subset not closed under addition")

    def _generic_positive(self, subset):
        """Split a closed subset into positives under a generic functional."""
        n = self.rank
        for attempt in range(n):
            weights = [2 ** (n - i) + (1 if i == attempt - 1 else 0)
                       for i in range(n)]
            vals = {r: sum(w * c for w, c in zip(weights, r)) for r in subset}
            if all(v != 0 for v in vals.values()):
                return sorted((r for r in subset if vals[r] > 0),
                              key=lambda r: (vals[r], r))
        raise AssertionError("no generic functional found")

    def subsystem_simple_system(self, subset) -> list[Root]:
        """Indecomposable positive elements of a closed subsystem."""
        pos = self._generic_positive(subset)
        posset = set(pos)
        simple = []
        for b in pos:
            decomposable = any(
                tuple(x - y for x, y in zip(b, g)) in posset for g in pos
                if g != b)
            if not decomposable:
                simple.append(b)
        return simple

    def subsystem_type(self, subset) -> AlgebraLabel:
        """Classify a closed subsystem; torus rank fills up the ambient rank."""
        subset = {tuple(r) for r in subset}
        self.check_closed(subset)
        if not subset:
            return AlgebraLabel((), self.rank)
        simple = self.subsystem_simple_system(subset)
        span_rank = qrank(QMatrix(simple))
        assert span_rank == len(simple)
        comps = _classify_simple_system(self, simple)
        return AlgebraLabel.make(comps, self.rank - span_rank)

    def orthogonal_roots(self, subset) -> set[Root]:
        subset = [tuple(r) for r in subset]
        return {b for b in self.roots
                if all(self.inner(b, a) == 0 for a in subset)}

    def orthogonal_subsystem(self, subset) -> AlgebraLabel:
        return self.subsystem_type(self.orthogonal_roots(subset))

    def span_closure(self, generators) -> set[Root]:
        """All roots in the integer span of the given (independent) roots."""
        gens = [tuple(g) for g in generators]
        mat = QMatrix(gens).transpose()
        if qrank(mat) != len(gens):
            raise ValueError("span_closure needs independent generators")
        out = set()
        from .exactq import solve
        for r in self.roots:
            x = solve(mat, r)
            if x is not None and all(c.denominator == 1 for c in x):
                out.add(r)
        return out


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element: integer lattice matrix plus a reduced word."""

    rs: RootSystem
    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...]

    def apply(self, root) -> Root:
        return _apply(self.matrix, tuple(root))

    def compose(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.rs, _matmul(self.matrix, other.matrix),
                           self.word + other.word)

    def inverse(self) -> "WeylElement":
        return WeylElement(self.rs, _int_inverse(self.matrix),
                           tuple(reversed(self.word)))

    def root_permutation(self) -> tuple[int, ...]:
        return tuple(self.rs.root_index[self.apply(r)] for r in self.rs.roots)

    def is_identity(self) -> bool:
        return self.matrix == _identity(self.rs.rank)

    @property
    def length(self) -> int:
        return sum(1 for r in self.rs.positive_roots
                   if sum(self.apply(r)) < 0)


@dataclass(frozen=True)
class ExtendedDiagram:
    """Dynkin diagram plus the affine node for -highest_root."""

    rs: RootSystem
    affine_root: Root                      # = -highest root
    marks: tuple[int, ...]                 # coefficients of the highest root
    edges: tuple[tuple[int, int, int], ...]  # (node, node, bond); node 0 = affine

    def node_root(self, i: int) -> Root:
        return self.affine_root if i == 0 else self.rs.simple_root(i - 1)


def extended_diagram(rs: RootSystem) -> ExtendedDiagram:
    delta = rs.highest_root
    affine = tuple(-c for c in delta)
    nodes = [affine] + [rs.simple_root(i) for i in range(rs.rank)]
    edges = []
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            a = rs.pair_with_coroot(nodes[i], nodes[j])
            b = rs.pair_with_coroot(nodes[j], nodes[i])
            bond = a * b
            if bond:
                edges.append((i, j, bond))
    marks = tuple(delta)
    coxeter = len(rs.roots) // rs.rank
    if 1 + sum(marks) != coxeter:
        raise AssertionError("marks do not sum to the Coxeter number")
    return ExtendedDiagram(rs, affine, marks, tuple(edges))


def ascii_diagram(rs: RootSystem, extended: bool = False) -> str:
    """Small text dump of the (extended) diagram for documentation."""
    lines = [f"{rs.type_label}: nodes 1..{rs.rank}"]
    edges, _ = _diagram_data(rs.letter, rs.rank)
    bond_sym = {-1: "-", -2: "=", -3: "#"}
    for i, j, v in edges:
        lines.append(f"  {i + 1} {bond_sym[v] * 2} {j + 1}")
    if extended:
        ext = extended_diagram(rs)
        for i, j, bond in ext.edges:
            if i == 0:
                sym = {1: "--", 2: "==", 3: "##"}.get(bond, f"x{bond}")
                lines.append(f"  0 {sym} {j}  (affine)")
        lines.append(f"  marks: (1; {', '.join(str(m) for m in ext.marks)})")
    return "\n".join(lines)


# -- helpers -------------------------------------------------------------


@lru_cache(maxsize=None)
def _identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matmul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def _apply(m, v):
    return tuple(sum(row[i] * v[i] for i in range(len(v)) if v[i]) for row in m)


def _perm_matrix(n, perm):
    # column i is e_{perm[i]}
    return tuple(tuple(1 if perm[j] == i else 0 for j in range(n))
                 for i in range(n))


def _int_inverse(m):
    from .exactq import inverse
    inv = inverse(QMatrix(m))
    out = []
    for row in inv.entries:
        assert all(x.denominator == 1 for x in row)
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def _classify_simple_system(rs: RootSystem, simple) -> list[tuple[str, int]]:
    """Type of each connected component of a simple system."""
    k = len(simple)
    pair = [[0] * k for _ in range(k)]
    for s in range(k):
        for t in range(k):
            if s != t:
                pair[s][t] = rs.pair_with_coroot(simple[s], simple[t])
    adj = [[t for t in range(k) if pair[s][t] != 0] for s in range(k)]
    seen = [False] * k
    comps = []
    for s in range(k):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return [_component_type(rs, simple, pair, adj, comp) for comp in comps]


def _component_type(rs, simple, pair, adj, comp) -> tuple[str, int]:
    n = len(comp)
    if n == 1:
        return ("A", 1)
    bonds = [pair[s][t] * pair[t][s] for s in comp for t in comp if s < t
             and pair[s][t] != 0]
    maxbond = max(bonds)
    degrees = {s: sum(1 for t in adj[s] if t in comp) for s in comp}
    if maxbond == 3:
        if n != 2:
            raise ValueError("triple bond outside G2")
        return ("G", 2)
    if maxbond == 2:
        if n == 2:
            return ("B", 2)
        norms = {s: rs.norm_half(simple[s]) for s in comp}
        short = [s for s in comp if norms[s] == min(norms.values())]
        long_ = [s for s in comp if norms[s] == max(norms.values())]
        if len(short) == 2 and len(long_) == 2 and n == 4:
            return ("F", 4)
        if len(short) == 1:
            return ("B", n)
        if len(long_) == 1:
            return ("C", n)
        raise ValueError("unrecognised multiply-laced component")
    branch = [s for s in comp if degrees[s] == 3]
    if not branch:
        return ("A", n)
    if len(branch) != 1:
        raise ValueError("multiple branch nodes")
    arms = sorted(_arm_lengths(adj, comp, branch[0]), reverse=True)
    if arms[1] == 1 and arms[2] == 1:
        return ("D", n)
    if arms[2] == 1 and arms[1] == 2:
        return ("E", {2: 6, 3: 7, 4: 8}[arms[0]])
    raise ValueError(f"unrecognised simply-laced component, arms {arms}")


def _arm_lengths(adj, comp, center) -> list[int]:
    lengths = []
    for start in adj[center]:
        if start not in comp:
            continue
        length = 1
        prev, cur = center, start
        while True:
            nxt = [t for t in adj[cur] if t != prev and t in comp]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths
