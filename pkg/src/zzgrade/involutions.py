"""Involutive automorphisms: characters, the Chevalley involution, diagram
lifts and Tits-style Weyl lifts.

Every constructor produces a Cartan-normalising automorphism: the Cartan
subalgebra maps to itself by an integer matrix and each root vector maps to
a scalar multiple of a single root vector.  That monomial shape keeps
composition, commutation tests and eigenspace computations exact and fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .catalog import InvolutionClassInfo, catalog
from .chevalley import LieAlgebra, Sparse, Subalgebra
from .exactq import QMatrix, kernel, rat


@dataclass(frozen=True)
class Character:
    """Sign character of the root lattice: one sign per simple root,
    extended multiplicatively to every root."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("character signs must be +-1")

    def value(self, root) -> int:
        v = 1
        for s, c in zip(self.signs, root):
            if s == -1 and c % 2:
                v = -v
        return v

    def is_trivial(self) -> bool:
        return all(s == 1 for s in self.signs)

    def __mul__(self, other: "Character") -> "Character":
        return Character(tuple(a * b for a, b in zip(self.signs, other.signs)))


def all_characters(rank: int, include_trivial: bool = False):
    for signs in itertools.product((1, -1), repeat=rank):
        ch = Character(signs)
        if include_trivial or not ch.is_trivial():
            yield ch


class Automorphism:
    """Cartan-normalising algebra automorphism in monomial form.

    cartan: rank x rank integer-matrix columns (image of h_i in the h basis);
    root_map[r] = (image root index, coefficient) for each root index r.
    """

    __slots__ = ("alg", "cartan", "root_map", "provenance", "_hash")

    def __init__(self, alg: LieAlgebra, cartan, root_map, provenance="composite",
                 check: bool = False):
        self.alg = alg
        self.cartan = tuple(tuple(rat(x) for x in row) for row in cartan)
        self.root_map = tuple(root_map)
        self.provenance = provenance
        self._hash = None
        if check:
            self.check_bracket_preservation()

    # -- basics ------------------------------------------------------------

    def key(self):
        return (self.cartan, self.root_map)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"Automorphism({self.alg.rs.type_label}, {self.provenance})"

    def image_of_basis(self, i: int) -> Sparse:
        r = self.alg.rank
        if i < r:
            return {k: self.cartan[k][i] for k in range(r) if self.cartan[k][i]}
        tgt, c = self.root_map[i - r]
        return {r + tgt: c}

    def apply(self, x: Sparse) -> Sparse:
        out: Sparse = {}
        for i, v in x.items():
            for k, c in self.image_of_basis(i).items():
                w = out.get(k, 0) + v * c
                if w:
                    out[k] = w
                elif k in out:
                    del out[k]
        return out

    def inverse(self) -> "Automorphism":
        from .exactq import inverse as qinv
        inv_cart = qinv(QMatrix(self.cartan)).entries
        rm = [None] * len(self.root_map)
        for i, (t, c) in enumerate(self.root_map):
            rm[t] = (i, 1 / c)
        return Automorphism(self.alg, inv_cart, rm, "composite")

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        r = self.alg.rank
        cart = [[Fraction(0)] * r for _ in range(r)]
        for i in range(r):
            img = self.apply(other.image_of_basis(i))
            for k, v in img.items():
                assert k < r
                cart[k][i] = v
        rm = []
        for t, c in other.root_map:
            t2, c2 = self.root_map[t]
            rm.append((t2, c * c2))
        return Automorphism(self.alg, cart, rm, "composite")

    def matrix(self) -> QMatrix:
        cols = []
        for i in range(self.alg.dim):
            img = self.image_of_basis(i)
            col = [Fraction(0)] * self.alg.dim
            for k, v in img.items():
                col[k] = v
            cols.append(col)
        return QMatrix.from_columns(cols)

    # -- structure ----------------------------------------------------------

    def is_identity(self) -> bool:
        r = self.alg.rank
        return (all(self.cartan[i][j] == (1 if i == j else 0)
                    for i in range(r) for j in range(r))
                and all(t == i and c == 1
                        for i, (t, c) in enumerate(self.root_map)))

    def is_involution(self) -> bool:
        return (not self.is_identity()) and self.compose(self).is_identity()

    def order_divides_two(self) -> bool:
        return self.compose(self).is_identity()

    def commutes_with(self, other: "Automorphism") -> bool:
        return self.compose(other) == other.compose(self)

    def trace(self) -> Fraction:
        r = self.alg.rank
        t = sum(self.cartan[i][i] for i in range(r))
        for i, (tgt, c) in enumerate(self.root_map):
            if tgt == i:
                t += c
        return t

    def fixed_dim(self) -> int:
        """Dimension of the fixed space (valid when the square is identity)."""
        t = self.trace()
        val = Fraction(self.alg.dim + t, 2)
        assert val.denominator == 1
        return int(val)

    def fixed_subalgebra(self) -> Subalgebra:
        """Kernel of (a - id), assembled blockwise."""
        alg = self.alg
        r = alg.rank
        vecs = []
        m = QMatrix(self.cartan) - QMatrix.identity(r)
        for col in kernel(m).columns():
            dense = [Fraction(0)] * alg.dim
            for i, v in enumerate(col):
                dense[i] = v
            vecs.append(tuple(dense))
        seen = set()
        for i, (t, c) in enumerate(self.root_map):
            if i in seen:
                continue
            if t == i:
                if c == 1:
                    dense = [Fraction(0)] * alg.dim
                    dense[r + i] = Fraction(1)
                    vecs.append(tuple(dense))
                seen.add(i)
            else:
                seen.add(i)
                seen.add(t)
                t2, c2 = self.root_map[t]
                if t2 == i and c * c2 == 1:
                    dense = [Fraction(0)] * alg.dim
                    dense[r + i] = Fraction(1)
                    dense[r + t] = c
                    vecs.append(tuple(dense))
        return Subalgebra(alg, vecs)

    def lattice_matrix(self):
        """Induced integer matrix on the root lattice (columns = images of
        the simple roots)."""
        alg = self.alg
        rs = alg.rs
        cols = []
        for i in range(alg.rank):
            ri = rs.root_index[rs.simple_root(i)]
            tgt, _ = self.root_map[ri]
            cols.append(rs.roots[tgt])
        n = alg.rank
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def is_inner(self) -> bool:
        """Inner iff the lattice action lies in the Weyl group."""
        _, perm = self.alg.rs.decompose_lattice_auto(self.lattice_matrix())
        return perm == tuple(range(self.alg.rank))

    # -- verification --------------------------------------------------------

    def check_bracket_preservation(self) -> None:
        """Exact check phi[x,y] = [phi x, phi y] on every table entry and on
        a Cartan/root sample grid; raises on the first violation."""
        alg = self.alg
        for (i, j) in alg.table:
            lhs = self.apply(dict(alg.bracket_basis(i, j)))
            rhs = alg.bracket(self.image_of_basis(i), self.image_of_basis(j))
            if lhs != rhs:
                raise ValueError(f"bracket not preserved at basis pair {(i, j)}")
        for i in range(alg.rank):
            for j in range(alg.rank, alg.dim):
                if (i, j) not in alg.table:
                    lhs = self.apply(dict(alg.bracket_basis(i, j)))
                    rhs = alg.bracket(self.image_of_basis(i),
                                      self.image_of_basis(j))
                    if lhs != rhs:
                        raise ValueError(
                            f"bracket not preserved at basis pair {(i, j)}")


# -- constructors -----------------------------------------------------------


def identity_automorphism(alg: LieAlgebra) -> Automorphism:
    eye = [[1 if i == j else 0 for j in range(alg.rank)] for i in range(alg.rank)]
    rm = [(i, Fraction(1)) for i in range(len(alg.rs.roots))]
    return Automorphism(alg, eye, rm, "identity")


def from_character(alg: LieAlgebra, chi: Character) -> Automorphism:
    """Diagonal involution: +1 on the Cartan, chi(alpha) on each root vector."""
    if chi.is_trivial():
        raise ValueError("trivial character gives the identity, not an involution")
    eye = [[1 if i == j else 0 for j in range(alg.rank)] for i in range(alg.rank)]
    rm = [(i, Fraction(chi.value(r))) for i, r in enumerate(alg.rs.roots)]
    return Automorphism(alg, eye, rm, "character")


def chevalley_involution(alg: LieAlgebra) -> Automorphism:
    """omega: -1 on the Cartan, e_alpha -> -e_{-alpha}."""
    rs = alg.rs
    neg = [[-1 if i == j else 0 for j in range(alg.rank)] for i in range(alg.rank)]
    rm = []
    for r in rs.roots:
        t = rs.root_index[tuple(-c for c in r)]
        rm.append((t, Fraction(-1)))
    return Automorphism(alg, neg, rm, "chevalley-involution")


def diagram_lift(alg: LieAlgebra, perm, twist: Character | None = None,
                 expected_order: int | None = 2) -> Automorphism:
    """Lift of a Dynkin-diagram symmetry, defined on generators by
    e_i -> e_{perm(i)} (then composed with a diagonal twist) and extended to
    the whole basis by replaying the construction words.

    Raises if the extension fails bracket preservation or the requested
    order.
    """
    rs = alg.rs
    perm = tuple(perm)
    n = alg.rank
    for i in range(n):
        for j in range(n):
            if rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j]:
                raise ValueError("not a diagram symmetry")
    images: dict[int, Sparse] = {}
    cart = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        cart[perm[i]][i] = Fraction(1)
        pos = alg.index_of_root(rs.simple_root(i))
        neg = alg.index_of_root(tuple(-c for c in rs.simple_root(i)))
        tpos = alg.index_of_root(rs.simple_root(perm[i]))
        tneg = alg.index_of_root(tuple(-c for c in rs.simple_root(perm[i])))
        images[pos] = {tpos: Fraction(1)}
        images[neg] = {tneg: Fraction(1)}

    def image(idx: int) -> Sparse:
        if idx in images:
            return images[idx]
        i, gp = alg.words[idx if idx - alg.rank < alg.npos
                          else idx - alg.npos]
        if idx - alg.rank < alg.npos:
            gen = alg.index_of_root(rs.simple_root(i))
            other = gp
            nconst = dict(alg.bracket_basis(gen, other))
        else:
            gen = alg.index_of_root(tuple(-c for c in rs.simple_root(i)))
            other = gp + alg.npos
            nconst = dict(alg.bracket_basis(gen, other))
        (tgt, nc), = nconst.items()
        assert tgt == idx
        v = alg.bracket(image(gen), image(other))
        images[idx] = {k: c / nc for k, c in v.items()}
        return images[idx]

    rm = []
    for ridx in range(len(rs.roots)):
        img = image(alg.rank + ridx)
        if len(img) != 1:
            raise ValueError("diagram lift is not monomial")
        (k, c), = img.items()
        rm.append((k - alg.rank, c))
    out = Automorphism(alg, cart, rm, "diagram-lift")
    if twist is not None:
        out = from_character_diag(alg, twist).compose(out)
        out = Automorphism(alg, out.cartan, out.root_map, "diagram-lift")
    out.check_bracket_preservation()
    if expected_order is not None:
        if expected_order == 2 and not out.is_involution():
            raise ValueError("diagram lift does not have order 2")
        if expected_order == 3:
            sq = out.compose(out)
            if sq.compose(out).is_identity() is False or out.is_identity():
                raise ValueError("diagram lift does not have order 3")
    return out


def from_character_diag(alg: LieAlgebra, chi: Character) -> Automorphism:
    """Diagonal map for a possibly trivial character (used as a twist)."""
    eye = [[1 if i == j else 0 for j in range(alg.rank)] for i in range(alg.rank)]
    rm = [(i, Fraction(chi.value(r))) for i, r in enumerate(alg.rs.roots)]
    return Automorphism(alg, eye, rm, "character")


def _exp_ad(alg: LieAlgebra, x: Sparse, v: Sparse) -> Sparse:
    """exp(ad x) v for ad-nilpotent x; terminates because the bracket raises
    height strictly."""
    out = dict(v)
    term = v
    k = 1
    while term:
        term = {i: c / k for i, c in alg.bracket(x, term).items()}
        k += 1
        for i, c in term.items():
            w = out.get(i, 0) + c
            if w:
                out[i] = w
            elif i in out:
                del out[i]
        if term and k > alg.dim:
            raise AssertionError("ad x is not nilpotent")
    return out


_REFLECTION_LIFTS: dict[tuple[int, int, str], Automorphism] = {}


def reflection_lift(alg: LieAlgebra, i: int) -> Automorphism:
    """Tits lift n_i = exp(ad e_i) exp(ad -f_i) exp(ad e_i)."""
    key = (id(alg), i, alg.rs.type_label)
    if key in _REFLECTION_LIFTS:
        return _REFLECTION_LIFTS[key]
    rs = alg.rs
    e = {alg.index_of_root(rs.simple_root(i)): Fraction(1)}
    f = {alg.index_of_root(tuple(-c for c in rs.simple_root(i))): Fraction(-1)}
    n = alg.rank
    cart = [[Fraction(0)] * n for _ in range(n)]
    rm = [None] * len(rs.roots)
    for b in range(alg.dim):
        v = _exp_ad(alg, e, _exp_ad(alg, f, _exp_ad(alg, e, {b: Fraction(1)})))
        if b < n:
            for k, c in v.items():
                assert k < n
                cart[k][b] = c
        else:
            if len(v) != 1:
                raise AssertionError("reflection lift is not monomial")
            (k, c), = v.items()
            rm[b - n] = (k - n, c)
    out = Automorphism(alg, cart, rm, "weyl-lift")
    _REFLECTION_LIFTS[key] = out
    return out


def weyl_lift(alg: LieAlgebra, word, twist: Character | None = None) -> Automorphism:
    """Product of Tits lifts along a reduced word, optionally composed with a
    diagonal twist.  The lattice action of the result equals the Weyl element
    of the word."""
    out = identity_automorphism(alg)
    for i in word:
        out = out.compose(reflection_lift(alg, i))
    w = alg.rs.weyl_from_word(word)
    for ridx, r in enumerate(alg.rs.roots):
        tgt, _ = out.root_map[ridx]
        if alg.rs.roots[tgt] != w.apply(r):
            raise AssertionError("lift lattice action mismatch")
    if twist is not None:
        out = from_character_diag(alg, twist).compose(out)
    out = Automorphism(alg, out.cartan, out.root_map, "weyl-lift")
    return out


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    return a.compose(b)


def commutes(a: Automorphism, b: Automorphism) -> bool:
    return a.commutes_with(b)


def is_involution(a: Automorphism) -> bool:
    return a.is_involution()


def fixed_subalgebra(a: Automorphism) -> Subalgebra:
    return a.fixed_subalgebra()


def involution_class(a: Automorphism) -> InvolutionClassInfo:
    """Conjugacy class via (inner/outer, fixed dimension); well-defined
    because fixed dimensions are pairwise distinct within each algebra."""
    if not a.order_divides_two() or a.is_identity():
        raise ValueError("not an involution")
    g = a.alg.rs.type_label.lower()
    g = {"d4": "so8"}.get(g, g)
    outer = None
    if g != "so8":
        outer = not a.is_inner()
    return catalog().class_by_fixed_dim(g, a.fixed_dim(), outer)
