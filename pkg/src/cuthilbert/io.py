"""Text formats for graphs and vectors, and JSON encodings of results."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError
from .graph import Cut, Graph, build_graph
from .linalg import format_rat, parse_rat


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_graph(text: str) -> Graph:
    """One ``u v`` pair per line; order gives edge indices, repeats give parallels."""
    edges = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((parts[0], parts[1]))
    return build_graph(edges)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"# {g.n} vertices, {g.m} edges")
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """One rational (``p`` or ``p/q``) per line, '#' comments allowed."""
    out = []
    for lineno, line in _content_lines(text):
        try:
            out.append(parse_rat(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return tuple(out)


def format_vector(x: Sequence) -> str:
    return "".join(format_rat(v) + "\n" for v in x)


def read_vector(path: str | Path) -> tuple[Fraction, ...]:
    return parse_vector(Path(path).read_text())


def parse_int_rows(text: str) -> list[tuple[int, ...]]:
    """Whitespace-separated integer vectors, one per line."""
    rows = []
    for lineno, line in _content_lines(text):
        try:
            rows.append(tuple(int(t) for t in line.replace(",", " ").split()))
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None
    if len({len(r) for r in rows}) > 1:
        raise ParseError("vectors have different lengths")
    return rows


# --------------------------------------------------------------------------
# JSON pieces


def rat_json(x) -> str:
    return format_rat(x)


def vector_json(x: Iterable) -> list[str]:
    return [format_rat(v) for v in x]


def cut_json(c: Cut) -> dict:
    return {"side": list(c.generator), "edges": [i for i, b in enumerate(c.incidence) if b]}


def graph_json(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}
