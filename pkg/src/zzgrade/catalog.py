"""Knowledge base of symmetric pairs and sub-symmetric pairs.

Loads the line-oriented data files (grammar below), exposes d and c values,
the candidate filter used by the classification, and regenerates the
reference tables from dimension formulas alone.

Data grammar (one record per line, '#' starts a comment):

    pair   <g> <class-token> <h-label> <inner|outer|mixed>
    subsym <g> <h-label> <k-label>
    fact   <k-label> <h-label> <yes|no> "<justification>"

Labels use classical notation (su6+sp1, so10+R, f4, ...).  Parse errors
report the line number.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .labels import AlgebraLabel, parse_label

ALGEBRA_DIMS = {"e6": 78, "e7": 133, "e8": 248, "f4": 52, "g2": 14, "so8": 28}
ALGEBRA_RANKS = {"e6": 6, "e7": 7, "e8": 8, "f4": 4, "g2": 2, "so8": 4}
EXCEPTIONAL = ("e6", "e7", "e8", "f4", "g2")


@dataclass(frozen=True)
class InvolutionClassInfo:
    """Conjugacy class of involutions, named after its symmetric space."""

    algebra: str
    token: str            # e.g. "EII", "Spin7"
    display: str          # e.g. "E II"
    fixed_label: AlgebraLabel
    fixed_display: str
    outer: bool | None    # None when the class mixes inner and outer members
    index: int

    @property
    def fixed_dim(self) -> int:
        return self.fixed_label.dim


@dataclass(frozen=True)
class SubSymmetricEntry:
    algebra: str
    h_label: AlgebraLabel
    k_label: AlgebraLabel
    h_display: str
    k_display: str

    @property
    def c_value(self) -> int:
        return self.h_label.dim - 2 * self.k_label.dim


@dataclass(frozen=True)
class ContainmentFact:
    k_display: str
    h_display: str
    k_label: AlgebraLabel
    h_label: AlgebraLabel
    holds: bool
    note: str


def _display_from_token(token: str) -> str:
    m = re.fullmatch(r"([EFG])([IVX]*)", token)
    if m:
        return (m.group(1) + " " + m.group(2)).strip()
    return token


class Catalog:
    """Read-only tables; safe for shared access after construction."""

    def __init__(self, data_dir: Path | None = None):
        if data_dir is None:
            data_dir = Path(str(resources.files("zzgrade"))) / "data" / "catalog"
        self.data_dir = Path(data_dir)
        self.classes: dict[str, list[InvolutionClassInfo]] = {}
        self.subsym: dict[str, list[SubSymmetricEntry]] = {}
        self.facts: list[ContainmentFact] = []
        self._load()
        self._validate()

    # -- loading ----------------------------------------------------------

    def _load(self):
        self._parse(self.data_dir / "pairs.txt")
        self._parse(self.data_dir / "subsym.txt")
        self._parse(self.data_dir / "facts.txt")

    def _parse(self, path: Path):
        for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                parts = shlex.split(line)
                kind = parts[0]
                if kind == "pair":
                    _, g, token, h, flag = parts
                    outer = {"inner": False, "outer": True, "mixed": None}[flag]
                    lst = self.classes.setdefault(g, [])
                    lst.append(InvolutionClassInfo(
                        g, token, _display_from_token(token),
                        parse_label(h), h, outer, len(lst)))
                elif kind == "subsym":
                    _, g, h, k = parts
                    self.subsym.setdefault(g, []).append(SubSymmetricEntry(
                        g, parse_label(h), parse_label(k), h, k))
                elif kind == "fact":
                    _, k, h, yn, note = parts
                    self.facts.append(ContainmentFact(
                        k, h, parse_label(k), parse_label(h),
                        yn == "yes", note))
                else:
                    raise ValueError(f"unknown record kind {kind!r}")
            except Exception as exc:
                raise ValueError(f"{path.name}:{lineno}: {exc}") from exc

    def _validate(self):
        for g, classes in self.classes.items():
            dims = [c.fixed_dim for c in classes]
            if len(set(dims)) != len(dims):
                raise ValueError(f"fixed dims not distinct for {g}: {dims}")
        for g, rows in self.subsym.items():
            hs = {c.fixed_label for c in self.classes[g]}
            for row in rows:
                if row.h_label not in hs:
                    raise ValueError(
                        f"subsym h {row.h_display} is not a fixed algebra of {g}")
        _validate_against_generators(self)

    # -- class lookups ------------------------------------------------------

    def classes_of(self, g: str) -> list[InvolutionClassInfo]:
        return self.classes[g]

    def class_by_token(self, g: str, token: str) -> InvolutionClassInfo:
        for c in self.classes[g]:
            if c.token == token or c.display == token:
                return c
        raise KeyError(f"no class {token!r} on {g}")

    def class_by_fixed_dim(self, g: str, dim: int,
                           outer: bool | None = None) -> InvolutionClassInfo:
        for c in self.classes[g]:
            if c.fixed_dim == dim and (c.outer is None or outer is None
                                       or c.outer == outer):
                return c
        raise KeyError(f"no class on {g} with fixed dim {dim} (outer={outer})")

    # -- numbers ------------------------------------------------------------

    def d_value(self, g: str, token1: str, token2: str) -> int:
        c1 = self.class_by_token(g, token1)
        c2 = self.class_by_token(g, token2)
        return ALGEBRA_DIMS[g] - c1.fixed_dim - c2.fixed_dim

    @staticmethod
    def c_value(h, k) -> int:
        h = parse_label(h) if isinstance(h, str) else h
        k = parse_label(k) if isinstance(k, str) else k
        return h.dim - 2 * k.dim

    # -- candidate machinery --------------------------------------------------

    def symmetric_in(self, g: str, k: AlgebraLabel, h: AlgebraLabel) -> bool:
        """Is k (abstractly) a symmetric subalgebra of h, per the data?"""
        if k == h:
            return True
        return any(r.k_label == k for r in self.subsym[g] if r.h_label == h)

    def refuting_fact(self, k: AlgebraLabel, h: AlgebraLabel):
        for f in self.facts:
            if not f.holds and f.k_label == k and f.h_label == h:
                return f
        return None

    def candidates(self, g: str, token1: str, token2: str):
        """(h-class, entry) pairs with c(h,k) = d and k symmetric in both
        fixed algebras.  An empty list is legitimate non-existence evidence."""
        c1 = self.class_by_token(g, token1)
        c2 = self.class_by_token(g, token2)
        d = ALGEBRA_DIMS[g] - c1.fixed_dim - c2.fixed_dim
        want_outer = None
        if c1.outer is not None and c2.outer is not None:
            want_outer = c1.outer != c2.outer
        out = []
        for hc in self.classes[g]:
            if want_outer is not None and hc.outer is not None \
                    and hc.outer != want_outer:
                continue
            for row in self.subsym[g]:
                if row.h_label != hc.fixed_label or row.c_value != d:
                    continue
                if not self.symmetric_in(g, row.k_label, c1.fixed_label):
                    continue
                if not self.symmetric_in(g, row.k_label, c2.fixed_label):
                    continue
                out.append((hc, row))
        return out

    def candidates_under_h(self, g: str, token1: str, token2: str,
                           h_token: str):
        """Candidate rows for a fixed sigma*tau class, with refutation notes.

        Returns (survivors, rejected) where rejected carries the reason each
        row was filtered out.
        """
        c1 = self.class_by_token(g, token1)
        c2 = self.class_by_token(g, token2)
        hc = self.class_by_token(g, h_token)
        d = ALGEBRA_DIMS[g] - c1.fixed_dim - c2.fixed_dim
        survivors, rejected = [], []
        for row in self.subsym[g]:
            if row.h_label != hc.fixed_label or row.c_value != d:
                continue
            reason = None
            for side in (c1, c2):
                if not self.symmetric_in(g, row.k_label, side.fixed_label):
                    fact = self.refuting_fact(row.k_label, side.fixed_label)
                    if fact is not None:
                        reason = f"{row.k_display} in {side.fixed_display}: {fact.note}"
                    else:
                        reason = (f"{row.k_display} is not a symmetric subalgebra "
                                  f"of {side.fixed_display} (no such row)")
                    break
            if reason is None:
                survivors.append(row)
            else:
                rejected.append((row, reason))
        return survivors, rejected

    # -- table regeneration ----------------------------------------------------

    def table3_rows(self) -> list[tuple[str, int]]:
        """All 23 d values over the exceptional algebras, from dims alone."""
        rows = []
        for g in EXCEPTIONAL:
            cls = self.classes[g]
            for i, a in enumerate(cls):
                for b in cls[i:]:
                    if g == "g2":
                        name = "G"
                    else:
                        suffix = b.display.split(" ")[1]
                        name = f"{a.display}-{suffix}"
                    rows.append((name, ALGEBRA_DIMS[g]
                                 - a.fixed_dim - b.fixed_dim))
        return rows

    def table5_rows(self) -> list[tuple[str, str, int]]:
        rows = []
        cls = self.classes["so8"]
        for i, a in enumerate(cls):
            for b in cls[i:]:
                rows.append((a.display, b.display,
                             28 - a.fixed_dim - b.fixed_dim))
        return rows

    def table4_rows(self) -> list[tuple[str, str, str, int]]:
        rows = []
        for g in EXCEPTIONAL:
            for r in self.subsym[g]:
                rows.append((g, r.h_display, r.k_display, r.c_value))
        return rows

    def table6_rows(self) -> list[tuple[str, str, str, int]]:
        return [("so8", r.h_display, r.k_display, r.c_value)
                for r in self.subsym["so8"]]


def _classical_symmetric_subalgebras(label: AlgebraLabel, display: str):
    """Per-factor generator for the symmetric subalgebras of a reductive h.

    Used only to validate the expanded data rows at load time.  Yields
    canonical AlgebraLabels (identity allowed per factor, excluded overall).
    """
    terms = display.split("+")
    options: list[list[AlgebraLabel]] = []
    for t in terms:
        opts = [parse_label(t)]
        if t == "R":
            opts.append(AlgebraLabel((), 0))
        elif t.startswith("su") or t.startswith("u"):
            n = int(t.lstrip("su"))
            base_torus = 1 if t.startswith("u") else 0
            for p in range(1, n // 2 + 1):
                opts.append(parse_label(f"su{n - p}+su{p}")
                            + AlgebraLabel((), 1 + base_torus))
            if n % 2 == 0:
                opts.append(parse_label(f"sp{n // 2}")
                            + AlgebraLabel((), base_torus))
            opts.append(parse_label(f"so{n}") + AlgebraLabel((), base_torus))
        elif t.startswith("sp"):
            n = int(t[2:])
            for p in range(1, n // 2 + 1):
                opts.append(parse_label(f"sp{n-p}+sp{p}"))
            opts.append(parse_label(f"su{n}") + AlgebraLabel((), 1))
        elif t.startswith("so"):
            n = int(t[2:])
            for p in range(1, n // 2 + 1):
                opts.append(parse_label(f"so{n-p}+so{p}"))
            if n % 2 == 0:
                opts.append(parse_label(f"su{n // 2}") + AlgebraLabel((), 1))
        elif t == "e6":
            for s in ("sp4", "su6+sp1", "so10+R", "f4"):
                opts.append(parse_label(s))
        elif t == "e7":
            for s in ("su8", "so12+sp1", "e6+R"):
                opts.append(parse_label(s))
        elif t == "e8":
            for s in ("so16", "e7+sp1"):
                opts.append(parse_label(s))
        elif t == "f4":
            for s in ("sp3+sp1", "so9"):
                opts.append(parse_label(s))
        elif t == "g2":
            opts.append(parse_label("so4"))
        options.append(opts)
    total = AlgebraLabel((), 0)
    outs = {total}
    for opts in options:
        outs = {acc + o for acc in outs for o in opts}
    outs.discard(label)
    return outs


def _validate_against_generators(cat: Catalog) -> None:
    """Every data row must be produced by the per-factor generators."""
    for g, rows in cat.subsym.items():
        for row in rows:
            gen = _classical_symmetric_subalgebras(row.h_label, row.h_display)
            if row.k_label not in gen:
                raise ValueError(
                    f"subsym row {g}/{row.h_display}/{row.k_display} "
                    "is not generated by any per-factor involution")


_CATALOG: Catalog | None = None


def catalog() -> Catalog:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = Catalog()
    return _CATALOG
