"""Reading and writing graphs as edge lists or minimal undirected DOT."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional

from .errors import GraphError, ParseError
from .graph import Graph, from_edge_list


def parse_edge_list(text: str) -> Graph:
    """One edge per line as "u v" (1-based); '#' starts a comment;
    an optional leading "n <count>" header fixes the vertex count,
    otherwise the largest label wins."""
    n: Optional[int] = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None and not pairs and parts[0] == "n" and len(parts) == 2:
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count")
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: labels must be integers")
        pairs.append((u, v))
    if n is None:
        n = max((max(u, v) for u, v in pairs), default=0)
    try:
        return from_edge_list(pairs, n)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;?\s*$")
_DOT_NODE = re.compile(r"^\s*(\d+)\s*;?\s*$")


def parse_dot(text: str) -> Graph:
    """Minimal undirected DOT: integer node ids and `a -- b` edges only."""
    body = text.strip()
    m = re.match(r"^(?:strict\s+)?graph\b[^{]*\{(.*)\}\s*$", body, re.S)
    if not m:
        raise ParseError("not an undirected DOT graph")
    pairs, nodes = [], set()
    for raw in re.split(r"[;\n]", m.group(1)):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        em = _DOT_EDGE.match(line)
        if em:
            u, v = int(em.group(1)), int(em.group(2))
            pairs.append((u, v))
            nodes |= {u, v}
            continue
        nm = _DOT_NODE.match(line)
        if nm:
            nodes.add(int(nm.group(1)))
            continue
        raise ParseError(f"unsupported DOT statement: {line!r}")
    n = max(nodes, default=0)
    try:
        return from_edge_list(pairs, n)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def write_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def write_dot(g: Graph) -> str:
    lines = ["graph G {"]
    for v in g.vertices():
        lines.append(f"  {v};")
    for u, v in sorted(g.edges):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load(path, fmt: Optional[str] = None) -> Graph:
    """Read a graph file; format auto-detected from the extension
    (.dot/.gv) unless ``fmt`` is "edgelist" or "dot"."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if fmt is None:
        fmt = "dot" if p.suffix.lower() in (".dot", ".gv") else "edgelist"
    if fmt == "dot":
        return parse_dot(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ParseError(f"unknown format {fmt!r}")
