"""Plain-text assignment and coloring files.

Assignment file::

    k 3
    0: 1 2 3
    1: 1 2 4

Coloring file: one ``<vertex>: <color>`` line per vertex.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .errors import InvalidArgument
from .lists import ListAssignment


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def format_assignment(l: ListAssignment) -> str:
    k = l.k
    head = f"k {k}\n" if k is not None else ""
    return head + "".join(f"{v}: {' '.join(map(str, sorted(lst)))}\n" for v, lst in enumerate(l.lists))


def parse_assignment(text: str) -> ListAssignment:
    k = None
    rows: dict[int, frozenset[int]] = {}
    for lineno, line in _data_lines(text):
        try:
            if line.startswith("k "):
                k = int(line[2:])
                continue
            vertex, colors = line.split(":", 1)
            rows[int(vertex)] = frozenset(int(c) for c in colors.split())
        except ValueError:
            raise InvalidArgument(f"line {lineno}: cannot parse {line!r}") from None
    if sorted(rows) != list(range(len(rows))) or not rows:
        raise InvalidArgument("vertices must be numbered 0..n-1 without gaps")
    l = ListAssignment(tuple(rows[v] for v in range(len(rows))))
    if k is not None and l.k != k:
        raise InvalidArgument(f"header says k={k} but list sizes disagree")
    return l


def format_coloring(f: Sequence[int]) -> str:
    return "".join(f"{v}: {c}\n" for v, c in enumerate(f))


def parse_coloring(text: str) -> tuple[int, ...]:
    rows = {}
    for lineno, line in _data_lines(text):
        try:
            vertex, color = line.split(":", 1)
            rows[int(vertex)] = int(color)
        except ValueError:
            raise InvalidArgument(f"line {lineno}: cannot parse {line!r}") from None
    if sorted(rows) != list(range(len(rows))):
        raise InvalidArgument("vertices must be numbered 0..n-1 without gaps")
    return tuple(rows[v] for v in range(len(rows)))


def write_assignment(path: str | Path, l: ListAssignment) -> None:
    Path(path).write_text(format_assignment(l))


def read_assignment(path: str | Path) -> ListAssignment:
    return parse_assignment(Path(path).read_text())


def write_coloring(path: str | Path, f: Sequence[int]) -> None:
    Path(path).write_text(format_coloring(f))


def read_coloring(path: str | Path) -> tuple[int, ...]:
    return parse_coloring(Path(path).read_text())
