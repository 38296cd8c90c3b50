from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import List, Tuple

from algebra.matrices import IntMatrix
from graph.signed_graph import InvalidGraphError, SignedGraph, adjacency_matrix

logger = logging.getLogger(__name__)

FORMATS = ("matrix", "edgelist")
_EXTENSIONS = {".mat": "matrix", ".edges": "edgelist"}

_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"[+-]?[0-9]+")


class GraphFormatError(ValueError):
    """Malformed graph text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokenized_lines(text: str) -> List[Tuple[int, List[Tuple[int, str]]]]:
    """Non-blank lines as (line number, [(column, token)]), '#' comments removed."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]
        if tokens:
            out.append((lineno, tokens))
    return out


def _to_int(token: Tuple[int, str], lineno: int) -> int:
    column, word = token
    if not _INT.fullmatch(word):
        raise GraphFormatError(f"expected an integer, got {word!r}", lineno, column)
    return int(word)


def _parse_header(lines, expected: int, label: str) -> List[int]:
    if not lines:
        raise GraphFormatError(f"missing header ({label})", 1)
    lineno, tokens = lines[0]
    if len(tokens) != expected:
        raise GraphFormatError(f"header must be '{label}'", lineno, tokens[0][0])
    values = [_to_int(t, lineno) for t in tokens]
    if values[0] < 1:
        raise GraphFormatError("vertex count must be positive", lineno, tokens[0][0])
    return values


def _parse_matrix(text: str) -> SignedGraph:
    lines = _tokenized_lines(text)
    (n,) = _parse_header(lines, 1, "n")
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (lines[-1][0] + 1)
        raise GraphFormatError(f"expected {n} matrix rows, found {len(body)}", where)
    rows = []
    for lineno, tokens in body:
        if len(tokens) != n:
            column = tokens[n][0] if len(tokens) > n else tokens[-1][0]
            raise GraphFormatError(f"expected {n} entries, found {len(tokens)}", lineno, column)
        row = []
        for token in tokens:
            value = _to_int(token, lineno)
            if value not in (-1, 0, 1):
                raise GraphFormatError(f"entry {value} is outside {{-1, 0, 1}}", lineno, token[0])
            row.append(value)
        rows.append(row)
    return SignedGraph.from_matrix(IntMatrix.from_rows(rows))


def _parse_edgelist(text: str) -> SignedGraph:
    lines = _tokenized_lines(text)
    n, m = _parse_header(lines, 2, "n m")
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (lines[-1][0] + 1)
        raise GraphFormatError(f"expected {m} edges, found {len(body)}", where)
    edges = []
    seen = {}
    for lineno, tokens in body:
        if len(tokens) != 3:
            raise GraphFormatError("edge line must be 'u v s'", lineno, tokens[0][0])
        u, v, s = (_to_int(t, lineno) for t in tokens)
        if s not in (1, -1):
            raise GraphFormatError(f"sign {s} must be +1 or -1", lineno, tokens[2][0])
        for (column, _), vertex in zip(tokens[:2], (u, v)):
            if not 0 <= vertex < n:
                raise GraphFormatError(f"vertex {vertex} out of range 0..{n - 1}", lineno, column)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno, tokens[0][0])
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise GraphFormatError(f"edge {pair} repeats line {seen[pair]}", lineno, tokens[0][0])
        seen[pair] = lineno
        edges.append((u, v, s))
    try:
        return SignedGraph.from_edges(n, edges)
    except InvalidGraphError as exc:
        raise GraphFormatError(str(exc), body[0][0] if body else 1) from exc


def sniff_format(text: str) -> str:
    """Two header integers mean an edge list, one means a matrix."""
    lines = _tokenized_lines(text)
    if lines and len(lines[0][1]) == 2:
        return "edgelist"
    return "matrix"


def parse_signed_graph(text: str, fmt: str = "matrix") -> SignedGraph:
    if fmt == "matrix":
        return _parse_matrix(text)
    if fmt == "edgelist":
        return _parse_edgelist(text)
    raise ValueError(f"unknown graph format {fmt!r}, expected one of {FORMATS}")


def serialize_signed_graph(g: SignedGraph, fmt: str = "matrix") -> str:
    """Canonical text form; parse_signed_graph inverts it."""
    if fmt == "matrix":
        return adjacency_matrix(g).to_text()
    if fmt == "edgelist":
        edges = g.sorted_edges()
        lines = [f"{g.n} {len(edges)}"]
        lines.extend(f"{u} {v} {s:+d}" for u, v, s in edges)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}, expected one of {FORMATS}")


def load_signed_graph(path: Path | str) -> SignedGraph:
    """Read a graph file; the format comes from the extension or the header."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"graph file not found: {path}")
    text = path.read_text(encoding="utf-8")
    fmt = _EXTENSIONS.get(path.suffix.lower()) or sniff_format(text)
    g = parse_signed_graph(text, fmt)
    logger.info("Loaded %s (%s): n=%d, %d edges", path.name, fmt, g.n, len(g.edges))
    return g
