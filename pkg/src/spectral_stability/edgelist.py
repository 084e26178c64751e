"""Plain-text edge lists.

Format: a header line ``n m`` followed by ``m`` lines ``u v`` with
``0 <= u < v < n``, ASCII decimal separated by one space.  Blank lines and
lines starting with ``#`` are skipped.
"""

from __future__ import annotations

import os

from .errors import EdgeListParseError
from .graph import MAX_ORDER, Graph


def _ints(line: str, lineno: int, want: int) -> list[int]:
    fields = line.split(" ")
    if len(fields) != want or not all(f.isdigit() and f.isascii() for f in fields):
        raise EdgeListParseError(f"expected {want} non-negative integers separated by one space, got {line!r}", lineno)
    return [int(f) for f in fields]


def parse_edge_list(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise EdgeListParseError(f"non-ASCII input ({exc.reason})", 1) from None
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        if header is None:
            n, m = _ints(line, lineno, 2)
            if n > MAX_ORDER:
                raise EdgeListParseError(f"n={n} exceeds the supported order {MAX_ORDER}", lineno)
            header = (n, m, lineno)
            continue
        u, v = _ints(line, lineno, 2)
        n = header[0]
        if u == v:
            raise EdgeListParseError(f"self-loop at vertex {u}", lineno)
        if u > v:
            raise EdgeListParseError(f"edge ({u}, {v}) must be written with u < v", lineno)
        if v >= n:
            raise EdgeListParseError(f"vertex {v} out of range for n={n}", lineno)
        if (u, v) in seen:
            raise EdgeListParseError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v))
    if header is None:
        raise EdgeListParseError("missing 'n m' header", 1)
    n, m, hline = header
    if len(edges) != m:
        raise EdgeListParseError(f"header announces {m} edges, found {len(edges)}", hline)
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, "rb") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(g))
