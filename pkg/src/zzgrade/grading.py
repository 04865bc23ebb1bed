"""Z2 x Z2 gradings: eigenspace splitting, axiom verification, and
identification of the common fixed subalgebra.

The split is computed by exact kernel intersections.  For the monomial
automorphisms produced by this package the joint eigenspaces decompose over
small index blocks (the Cartan block plus orbits of the root permutations),
so the kernels involved never exceed a few rows; a generic dense path is
kept for cross-checking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import InvolutionClassInfo, SubSymmetricEntry, catalog
from .chevalley import LieAlgebra, Subalgebra, centralizer, derived_dim, generic_rank
from .exactq import QMatrix, kernel
from .involutions import Automorphism, involution_class
from .labels import AlgebraLabel

SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


class GradingError(ValueError):
    pass


class NotInvolutive(GradingError):
    pass


class EqualInvolutions(GradingError):
    pass


class NonCommuting(GradingError):
    pass


@dataclass
class Z2Z2Grading:
    """The four joint eigenspaces of a commuting involution pair.

    pieces is keyed by the eigenvalue pair (sigma, tau); (1,1) is the common
    fixed subalgebra g1.
    """

    alg: LieAlgebra
    sigma: Automorphism
    tau: Automorphism
    sigma_tau: Automorphism
    pieces: dict[tuple[int, int], Subalgebra]
    k_label: AlgebraLabel | None = None

    @property
    def dims(self) -> dict[tuple[int, int], int]:
        return {s: p.dim for s, p in self.pieces.items()}

    @property
    def dim_tuple(self) -> tuple[int, int, int, int]:
        """(g1, g_sigma, g_tau, g_sigma_tau)."""
        return (self.pieces[(1, 1)].dim, self.pieces[(1, -1)].dim,
                self.pieces[(-1, 1)].dim, self.pieces[(-1, -1)].dim)

    @property
    def fixed_dims(self) -> tuple[int, int, int]:
        d = self.dims
        return (d[(1, 1)] + d[(1, -1)], d[(1, 1)] + d[(-1, 1)],
                d[(1, 1)] + d[(-1, -1)])

    def classes(self) -> tuple[InvolutionClassInfo, ...]:
        return (involution_class(self.sigma), involution_class(self.tau),
                involution_class(self.sigma_tau))

    def class_triple(self) -> tuple[InvolutionClassInfo, ...]:
        return tuple(sorted(self.classes(), key=lambda c: c.index))

    def triple_token(self) -> str:
        return triple_token(self.class_triple())

    def eq2_holds(self) -> bool:
        fs, ft, fst = self.fixed_dims
        return self.alg.dim - fs - ft == fst - 2 * self.pieces[(1, 1)].dim


def triple_token(triple) -> str:
    """Compact id like 'EI-II-IV' or 'G'; so8 uses full class tokens."""
    tokens = [c.token for c in triple]
    if tokens[0].startswith("Spin"):
        return "-".join(tokens)
    if tokens == ["G", "G", "G"]:
        return "G"
    head = tokens[0]
    tails = [t[1:] for t in tokens[1:]]
    return "-".join([head] + tails)


def triple_display(triple) -> str:
    tokens = [c.token for c in triple]
    if tokens[0].startswith("Spin"):
        return "-".join(c.display for c in triple)
    if tokens == ["G", "G", "G"]:
        return "G"
    head = triple[0].display
    tails = [t.token[1:] for t in triple[1:]]
    return "-".join([head] + tails)


def split(alg: LieAlgebra, sigma: Automorphism, tau: Automorphism) -> Z2Z2Grading:
    """Joint eigenspace decomposition with all grading invariants checked."""
    if not sigma.order_divides_two() or sigma.is_identity():
        raise NotInvolutive("sigma is not an involution")
    if not tau.order_divides_two() or tau.is_identity():
        raise NotInvolutive("tau is not an involution")
    if sigma == tau:
        raise EqualInvolutions("sigma equals tau")
    if not sigma.commutes_with(tau):
        raise NonCommuting("sigma and tau do not commute")
    pieces = {s: [] for s in SIGNS}
    _split_cartan_block(alg, sigma, tau, pieces)
    _split_root_blocks(alg, sigma, tau, pieces)
    sub = {s: Subalgebra(alg, vecs) for s, vecs in pieces.items()}
    grading = Z2Z2Grading(alg, sigma, tau, sigma.compose(tau), sub)
    if sum(grading.dims.values()) != alg.dim:
        raise AssertionError("eigenspace dimensions do not sum to dim g")
    if not grading.eq2_holds():
        raise AssertionError("dimension identity violated")
    return grading


def _split_cartan_block(alg, sigma, tau, pieces):
    r = alg.rank
    ms = QMatrix(sigma.cartan)
    mt = QMatrix(tau.cartan)
    eye = QMatrix.identity(r)
    for es, et in SIGNS:
        stacked = (ms - eye.scale(es)).vstack(mt - eye.scale(et))
        for col in kernel(stacked).columns():
            dense = [Fraction(0)] * alg.dim
            for i, v in enumerate(col):
                dense[i] = v
            pieces[(es, et)].append(tuple(dense))


def _split_root_blocks(alg, sigma, tau, pieces):
    r = alg.rank
    nroots = len(alg.rs.roots)
    seen = [False] * nroots
    for start in range(nroots):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            nxt = []
            for i in frontier:
                for mapping in (sigma.root_map, tau.root_map):
                    t, _ = mapping[i]
                    if not seen[t]:
                        seen[t] = True
                        orbit.append(t)
                        nxt.append(t)
            frontier = nxt
        orbit.sort()
        pos = {g: i for i, g in enumerate(orbit)}
        m = len(orbit)
        ms = [[Fraction(0)] * m for _ in range(m)]
        mt = [[Fraction(0)] * m for _ in range(m)]
        for i in orbit:
            ts, cs = sigma.root_map[i]
            tt, ct = tau.root_map[i]
            ms[pos[ts]][pos[i]] = cs
            mt[pos[tt]][pos[i]] = ct
        qs, qt = QMatrix(ms), QMatrix(mt)
        eye = QMatrix.identity(m)
        for es, et in SIGNS:
            stacked = (qs - eye.scale(es)).vstack(qt - eye.scale(et))
            for col in kernel(stacked).columns():
                dense = [Fraction(0)] * alg.dim
                for j, v in enumerate(col):
                    dense[r + orbit[j]] = v
                pieces[(es, et)].append(tuple(dense))


def split_generic(alg: LieAlgebra, sigma: Automorphism,
                  tau: Automorphism) -> dict[tuple[int, int], Subalgebra]:
    """Dense definitional path: kernel of the stacked (M - eps I) blocks.

    Used to cross-check the blockwise split on small algebras.
    """
    ms, mt = sigma.matrix(), tau.matrix()
    eye = QMatrix.identity(alg.dim)
    out = {}
    for es, et in SIGNS:
        stacked = (ms - eye.scale(es)).vstack(mt - eye.scale(et))
        out[(es, et)] = Subalgebra(alg, kernel(stacked).columns())
    return out


# -- verification -------------------------------------------------------------


@dataclass
class GradingReport:
    ok: bool
    inclusion_violations: list = field(default_factory=list)
    closure_failures: list = field(default_factory=list)
    eq2_ok: bool = True
    piece_dims: dict = field(default_factory=dict)

    def summary(self) -> str:
        if self.ok:
            return "grading verified: 9 inclusions, 3 fixed-algebra checks, dims"
        parts = []
        if self.inclusion_violations:
            phi, psi, i, j = self.inclusion_violations[0]
            parts.append(f"inclusion [g_{phi}, g_{psi}] violated at pair {(i, j)}")
        parts += self.closure_failures
        if not self.eq2_ok:
            parts.append("dimension identity fails")
        return "; ".join(parts)


_KLEIN = {"sigma": (1, -1), "tau": (-1, 1), "sigmatau": (-1, -1)}


def verify_grading(grading: Z2Z2Grading) -> GradingReport:
    """Check the nine bracket inclusions, the three symmetric-subalgebra
    closures, and the dimension identity, all exactly."""
    alg = grading.alg
    report = GradingReport(ok=True, piece_dims=dict(grading.dims))
    sparse = {name: grading.pieces[s].basis for name, s in _KLEIN.items()}
    for phi, sp in _KLEIN.items():
        for psi, st in _KLEIN.items():
            target_sign = (sp[0] * st[0], sp[1] * st[1])
            target = grading.pieces[target_sign]
            for i, x in enumerate(sparse[phi]):
                for j, y in enumerate(sparse[psi]):
                    v = alg.bracket(x, y)
                    if v and not target.contains(v):
                        report.ok = False
                        report.inclusion_violations.append((phi, psi, i, j))
    # g1 + g_phi must be bracket-closed and equal the fixed algebra
    autos = {"sigma": grading.sigma, "tau": grading.tau,
             "sigmatau": grading.sigma_tau}
    g1 = grading.pieces[(1, 1)]
    for phi, sp in _KLEIN.items():
        fixed = autos[phi].fixed_subalgebra()
        expect = g1.dim + grading.pieces[sp].dim
        if fixed.dim != expect:
            report.ok = False
            report.closure_failures.append(
                f"fixed({phi}) dim {fixed.dim} != g1+g_{phi} dim {expect}")
            continue
        for b in g1.basis + grading.pieces[sp].basis:
            if not fixed.contains(b):
                report.ok = False
                report.closure_failures.append(
                    f"g1+g_{phi} not inside fixed({phi})")
                break
        sub = Subalgebra(alg, list(g1.basis) + list(grading.pieces[sp].basis))
        if not sub.is_bracket_closed():
            report.ok = False
            report.closure_failures.append(f"g1+g_{phi} not bracket-closed")
    if not grading.eq2_holds():
        report.ok = False
        report.eq2_ok = False
    return report


# -- fingerprints and identification ------------------------------------------


@dataclass(frozen=True)
class TypeFingerprint:
    dim: int
    rank: int
    center_dim: int
    derived_dim: int
    module_dims: tuple[int, ...]
    module_kernels: tuple[int, ...]

    def matches_label(self, label: AlgebraLabel) -> bool:
        return (self.dim == label.dim and self.rank == label.rank
                and self.center_dim == label.center_dim
                and self.derived_dim == label.derived_dim)


def fingerprint(grading: Z2Z2Grading, seed: int = 1729,
                with_modules: bool = True) -> TypeFingerprint:
    """Exact invariants of k = g1: dimensions, reductive rank, center and
    derived dimensions, plus generic adjoint kernels on the graded pieces.

    The module kernels are tie-breakers only; with_modules=False skips them.
    """
    alg = grading.alg
    k = grading.pieces[(1, 1)]
    rk = generic_rank(k, seed=seed)
    der = derived_dim(k)
    if k.dim <= 40:
        center = centralizer(alg, k, k).dim
    else:
        # reductive k: centre is the complement of the derived subalgebra
        center = k.dim - der
    mdims, mkers = [], []
    rng = random.Random(seed)
    kb = k.sparse_basis()
    for s in ((1, -1), (-1, 1), (-1, -1)):
        piece = grading.pieces[s]
        mdims.append(piece.dim)
        if not with_modules:
            continue
        if piece.dim == 0 or k.dim == 0:
            mkers.append(piece.dim)
            continue
        best = piece.dim
        for _ in range(5):
            x = {}
            for b in kb:
                c = rng.randint(-5, 5)
                if c:
                    for i, v in b.items():
                        x[i] = x.get(i, Fraction(0)) + c * v
            cols = []
            for b in piece.basis:
                img = alg.bracket(x, b)
                coords = piece.coordinates(img)
                if coords is None:
                    raise AssertionError("piece is not ad(k)-invariant")
                cols.append(coords)
            from .exactq import rank_rows
            best = min(best, piece.dim - rank_rows(cols))
        mkers.append(best)
    return TypeFingerprint(k.dim, rk, center, der, tuple(mdims), tuple(mkers))


@dataclass
class ComponentIdentification:
    label: AlgebraLabel | None
    display: str | None
    decided_by: str                      # full-rank | fingerprint | containment-fact
    candidates: list[SubSymmetricEntry] = field(default_factory=list)
    ambiguous: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.label is not None and not self.ambiguous


def identify_component(grading: Z2Z2Grading, seed: int = 1729,
                       force_fingerprint: bool = False) -> ComponentIdentification:
    """Type of k = g1.

    Full-rank case: direct subsystem typing.  Otherwise: catalog shortlist
    (c = d under the sigma*tau fixed algebra) narrowed by the fingerprint;
    surviving ambiguity is reported, never silently resolved.
    force_fingerprint skips the full-rank shortcut (used for cross-checks).
    """
    alg = grading.alg
    k = grading.pieces[(1, 1)]
    full_rank = all(k.contains(alg.basis_vector(i)) for i in range(alg.rank))
    if full_rank and not force_fingerprint:
        roots = []
        for i, r in enumerate(alg.rs.roots):
            if k.contains(alg.basis_vector(alg.rank + i)):
                roots.append(r)
        if alg.rank + len(roots) == k.dim:
            label = alg.rs.subsystem_type(roots)
            grading.k_label = label
            return ComponentIdentification(label, str(label), "full-rank")
    g = alg.rs.type_label.lower()
    g = {"d4": "so8"}.get(g, g)
    cs, ct, cst = grading.classes()
    survivors, rejected = catalog().candidates_under_h(
        g, cs.token, ct.token, cst.token)
    notes = [reason for _, reason in rejected]
    if not survivors:
        return ComponentIdentification(
            None, None, "fingerprint", [], False,
            notes + ["empty candidate shortlist"])
    fp = fingerprint(grading, seed=seed, with_modules=False)
    matching = [row for row in survivors if fp.matches_label(row.k_label)]
    distinct = {row.k_label for row in matching}
    if len(distinct) == 1:
        label = next(iter(distinct))
        grading.k_label = label
        return ComponentIdentification(
            label, matching[0].k_display, "fingerprint", matching, False, notes)
    if not matching:
        return ComponentIdentification(
            None, None, "fingerprint", survivors, False,
            notes + [f"no candidate matches fingerprint {fp}"])
    # more than one abstract type survives: try containment facts
    cat = catalog()
    refuted = set()
    for row in matching:
        for side in (cs, ct, cst):
            fact = cat.refuting_fact(row.k_label, side.fixed_label)
            if fact is not None:
                refuted.add(row.k_label)
                notes.append(f"{row.k_display}: {fact.note}")
    remaining = [row for row in matching if row.k_label not in refuted]
    distinct = {row.k_label for row in remaining}
    if len(distinct) == 1:
        label = next(iter(distinct))
        grading.k_label = label
        return ComponentIdentification(
            label, remaining[0].k_display, "containment-fact",
            remaining, False, notes)
    return ComponentIdentification(None, None, "containment-fact",
                                   remaining, True,
                                   notes + ["ambiguous shortlist"])
