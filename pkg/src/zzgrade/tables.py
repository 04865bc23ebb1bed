"""Output tables: deterministic rendering (markdown/csv/json) and diffs
against the expected files checked into the package data."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


@dataclass
class OutputTable:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple]

    def render(self, fmt: str = "md") -> str:
        if fmt == "md":
            out = [f"| {' | '.join(self.columns)} |",
                   f"|{'---|' * len(self.columns)}"]
            for row in self.rows:
                out.append(f"| {' | '.join(str(x) for x in row)} |")
            return "\n".join(out) + "\n"
        if fmt == "csv":
            out = [",".join(self.columns)]
            out += [",".join(str(x) for x in row) for row in self.rows]
            return "\n".join(out) + "\n"
        if fmt == "json":
            return json.dumps(
                {"name": self.name, "columns": list(self.columns),
                 "rows": [list(r) for r in self.rows]},
                indent=2, sort_keys=True) + "\n"
        raise ValueError(f"unknown format {fmt!r}")


def parse_markdown_table(text: str) -> list[tuple[str, ...]]:
    """Rows of a pipe table, header and separator dropped."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("|"):
            continue
        cells = [c.strip() for c in line.strip("|").split("|")]
        if all(set(c) <= {"-", ":", " "} and c for c in cells):
            continue
        rows.append(tuple(cells))
    return rows[1:] if rows else []


def expected_dir() -> Path:
    return Path(str(resources.files("zzgrade"))) / "data" / "expected"


def load_expected(name: str, directory: Path | None = None) -> list[tuple[str, ...]]:
    directory = expected_dir() if directory is None else Path(directory)
    return parse_markdown_table((directory / f"{name}.md").read_text())


def diff_rows(generated: list[tuple], expected: list[tuple[str, ...]]) -> list[str]:
    """Row-level differences between a generated table and an expected one."""
    gen = [tuple(str(x) for x in row) for row in generated]
    out = []
    for i, (g, e) in enumerate(zip(gen, expected)):
        if g != e:
            out.append(f"row {i + 1}: generated {g} != expected {e}")
    for i in range(len(expected), len(gen)):
        out.append(f"row {i + 1}: extra generated row {gen[i]}")
    for i in range(len(gen), len(expected)):
        out.append(f"row {i + 1}: missing expected row {expected[i]}")
    return out
