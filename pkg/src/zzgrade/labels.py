"""Canonical labels for compact reductive Lie algebras.

A label is a multiset of simple components (classified by Cartan type and
rank) plus a torus rank.  Labels written in classical notation (su4, so10,
sp3, u6, R, ...) are parsed and normalised so that abstract isomorphism
becomes syntactic equality, e.g. su4 == so6, sp1 == so3, u2+u2 == so4+R+R.

Dimension/rank formulas: dim A_n = n(n+2), B_n = C_n = n(2n+1),
D_n = n(2n-1), E6 = 78, E7 = 133, E8 = 248, F4 = 52, G2 = 14.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

EXC_DIM = {"E6": 78, "E7": 133, "E8": 248, "F4": 52, "G2": 14}


def component_dim(letter: str, n: int) -> int:
    if letter == "A":
        return n * (n + 2)
    if letter in ("B", "C"):
        return n * (2 * n + 1)
    if letter == "D":
        return n * (2 * n - 1)
    return EXC_DIM[letter + str(n)]


def _canonical_component(letter: str, n: int) -> tuple[str, int] | None:
    """Normalise a simple-type component; None means it vanishes (rank 0)."""
    if n == 0:
        return None
    if letter == "A":
        return ("A", n)
    if letter == "B":
        if n == 1:
            return ("A", 1)
        return ("B", n)
    if letter == "C":
        if n == 1:
            return ("A", 1)
        if n == 2:
            return ("B", 2)
        return ("C", n)
    if letter == "D":
        # D1 is a torus, handled by the caller; D2 = A1+A1, D3 = A3.
        if n == 2:
            raise ValueError("D2 must be split by the caller")
        if n == 3:
            return ("A", 3)
        return ("D", n)
    return (letter, n)


@dataclass(frozen=True)
class AlgebraLabel:
    """Multiset of canonical simple components plus a torus rank."""

    components: tuple[tuple[str, int], ...]
    torus: int = 0

    @staticmethod
    def make(components, torus: int = 0) -> "AlgebraLabel":
        comps = []
        extra_torus = 0
        for letter, n in components:
            if letter == "D" and n == 1:
                extra_torus += 1
                continue
            if letter == "D" and n == 2:
                comps += [("A", 1), ("A", 1)]
                continue
            c = _canonical_component(letter, n)
            if c is not None:
                comps.append(c)
        return AlgebraLabel(tuple(sorted(comps)), torus + extra_torus)

    @property
    def dim(self) -> int:
        return sum(component_dim(l, n) for l, n in self.components) + self.torus

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components) + self.torus

    @property
    def center_dim(self) -> int:
        return self.torus

    @property
    def derived_dim(self) -> int:
        return self.dim - self.torus

    def __add__(self, other: "AlgebraLabel") -> "AlgebraLabel":
        return AlgebraLabel.make(self.components + other.components,
                                 self.torus + other.torus)

    def __str__(self) -> str:
        return format_label(self)


_TERM_TO_COMPONENTS = {
    "e6": [("E", 6)], "e7": [("E", 7)], "e8": [("E", 8)],
    "f4": [("F", 4)], "g2": [("G", 2)],
}


def _term_label(term: str) -> AlgebraLabel:
    term = term.strip()
    if term == "R":
        return AlgebraLabel((), 1)
    if term in _TERM_TO_COMPONENTS:
        return AlgebraLabel.make(_TERM_TO_COMPONENTS[term])
    for prefix, conv in (("su", "su"), ("so", "so"), ("sp", "sp"), ("u", "u")):
        if term.startswith(prefix) and term[len(prefix):].isdigit():
            n = int(term[len(prefix):])
            return _classical(conv, n)
    raise ValueError(f"unknown algebra term {term!r}")


def _classical(kind: str, n: int) -> AlgebraLabel:
    if kind == "su":
        if n <= 1:
            return AlgebraLabel((), 0)
        return AlgebraLabel.make([("A", n - 1)])
    if kind == "u":
        if n == 0:
            return AlgebraLabel((), 0)
        return _classical("su", n) + AlgebraLabel((), 1)
    if kind == "sp":
        if n == 0:
            return AlgebraLabel((), 0)
        return AlgebraLabel.make([("C", n)])
    if kind == "so":
        if n <= 1:
            return AlgebraLabel((), 0)
        if n == 2:
            return AlgebraLabel((), 1)
        if n == 3:
            return AlgebraLabel.make([("A", 1)])
        if n % 2 == 0:
            m = n // 2
            if m == 2:
                return AlgebraLabel.make([("A", 1), ("A", 1)])
            return AlgebraLabel.make([("D", m)])
        return AlgebraLabel.make([("B", (n - 1) // 2)])
    raise ValueError(kind)


@lru_cache(maxsize=None)
def parse_label(text: str) -> AlgebraLabel:
    """Parse 'su6+sp1+R' style notation into a canonical label."""
    total = AlgebraLabel((), 0)
    for term in text.split("+"):
        total = total + _term_label(term)
    return total


_COMPONENT_NAMES = {
    ("E", 6): "e6", ("E", 7): "e7", ("E", 8): "e8",
    ("F", 4): "f4", ("G", 2): "g2",
}


def format_component(letter: str, n: int) -> str:
    """Render one canonical component in classical notation."""
    if (letter, n) in _COMPONENT_NAMES:
        return _COMPONENT_NAMES[(letter, n)]
    if letter == "A":
        if n == 1:
            return "sp1"
        return f"su{n + 1}"
    if letter == "B":
        return f"so{2 * n + 1}"
    if letter == "C":
        return f"sp{n}"
    if letter == "D":
        return f"so{2 * n}"
    raise ValueError((letter, n))


def format_label(label: AlgebraLabel) -> str:
    if not label.components and label.torus == 0:
        return "0"
    parts = [format_component(l, n) for l, n in sorted(label.components, reverse=True)]
    parts += ["R"] * label.torus
    return "+".join(parts)
