"""Text and JSON (de)serialization for the graph types.

Text formats are line oriented: a header `<kind> <n>` followed by one item
per line, `#` starting a comment anywhere.  Kinds: `digraph` with `<u> <v>`
arcs, `cdigraph` with `<u> <v> <b|r>` colored arcs, `graph` with unordered
`<u> <v>` edges, and `orientation` with `<u> <v> <fwd|bwd|both>` rows where
u < v and the base graph is implied by the listed edges.

JSON mirrors use the same field names under a `kind` discriminator.
Parsing and serialization round-trip exactly; parse errors name the
offending line.
"""

from __future__ import annotations

import json

from .digraph import (
    ArcColor,
    ColoredDigraph,
    Digraph,
    EdgeDirection,
    Orientation,
    UndirectedGraph,
)
from .errors import BoundsError, GraphParseError

__all__ = [
    "parse",
    "parse_json",
    "parse_digraph",
    "parse_colored_digraph",
    "parse_graph",
    "parse_orientation",
    "serialize",
    "serialize_json",
    "to_json_obj",
    "from_json_obj",
    "to_dot",
    "load",
    "dump",
]

_KINDS = ("digraph", "cdigraph", "graph", "orientation")


def _content_lines(text: str):
    """Yield (line_number, tokens) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _parse_header(lines, expected_kind=None):
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise GraphParseError("empty input, expected a header line") from None
    if len(tokens) != 2:
        raise GraphParseError(f"malformed header {' '.join(tokens)!r}", lineno)
    kind, count = tokens
    if kind not in _KINDS:
        raise GraphParseError(f"unknown kind {kind!r}", lineno)
    if expected_kind is not None and kind != expected_kind:
        raise GraphParseError(f"expected {expected_kind!r} header, got {kind!r}", lineno)
    try:
        n = int(count)
    except ValueError:
        raise GraphParseError(f"vertex count {count!r} is not an integer", lineno) from None
    if n < 0:
        raise GraphParseError(f"vertex count {n} is negative", lineno)
    return kind, n


def _parse_vertex(token: str, n: int, lineno: int) -> int:
    try:
        v = int(token)
    except ValueError:
        raise GraphParseError(f"vertex {token!r} is not an integer", lineno) from None
    if not 0 <= v < n:
        raise GraphParseError(f"vertex {v} outside [0, {n})", lineno)
    return v


def parse_digraph(text: str) -> Digraph:
    lines = _content_lines(text)
    _, n = _parse_header(lines, "digraph")
    arcs = []
    seen = set()
    for lineno, tokens in lines:
        if len(tokens) != 2:
            raise GraphParseError(f"expected '<u> <v>', got {' '.join(tokens)!r}", lineno)
        u = _parse_vertex(tokens[0], n, lineno)
        v = _parse_vertex(tokens[1], n, lineno)
        if u == v:
            raise GraphParseError(f"loop ({u}, {v}) not allowed", lineno)
        if (u, v) in seen:
            raise GraphParseError(f"duplicate arc ({u}, {v})", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    return Digraph(n, arcs)


def parse_colored_digraph(text: str) -> ColoredDigraph:
    lines = _content_lines(text)
    _, n = _parse_header(lines, "cdigraph")
    rows = []
    seen = set()
    for lineno, tokens in lines:
        if len(tokens) == 2:
            raise GraphParseError(f"missing color on arc {' '.join(tokens)!r}", lineno)
        if len(tokens) != 3:
            raise GraphParseError(
                f"expected '<u> <v> <b|r>', got {' '.join(tokens)!r}", lineno
            )
        u = _parse_vertex(tokens[0], n, lineno)
        v = _parse_vertex(tokens[1], n, lineno)
        if u == v:
            raise GraphParseError(f"loop ({u}, {v}) not allowed", lineno)
        if (u, v) in seen:
            raise GraphParseError(f"duplicate arc ({u}, {v})", lineno)
        if tokens[2] not in ("b", "r"):
            raise GraphParseError(f"unknown color {tokens[2]!r}", lineno)
        seen.add((u, v))
        rows.append((u, v, ArcColor(tokens[2])))
    return ColoredDigraph.from_colored_arcs(n, rows)


def parse_graph(text: str) -> UndirectedGraph:
    lines = _content_lines(text)
    _, n = _parse_header(lines, "graph")
    edges = []
    seen = set()
    for lineno, tokens in lines:
        if len(tokens) != 2:
            raise GraphParseError(f"expected '<u> <v>', got {' '.join(tokens)!r}", lineno)
        u = _parse_vertex(tokens[0], n, lineno)
        v = _parse_vertex(tokens[1], n, lineno)
        if u == v:
            raise GraphParseError(f"self-edge ({u}, {v}) not allowed", lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphParseError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    return UndirectedGraph(n, edges)


def parse_orientation(text: str) -> Orientation:
    lines = _content_lines(text)
    _, n = _parse_header(lines, "orientation")
    edges = []
    assignment = {}
    for lineno, tokens in lines:
        if len(tokens) != 3:
            raise GraphParseError(
                f"expected '<u> <v> <fwd|bwd|both>', got {' '.join(tokens)!r}", lineno
            )
        u = _parse_vertex(tokens[0], n, lineno)
        v = _parse_vertex(tokens[1], n, lineno)
        if u >= v:
            raise GraphParseError(f"edge endpoints must satisfy u < v, got ({u}, {v})", lineno)
        if (u, v) in assignment:
            raise GraphParseError(f"duplicate edge ({u}, {v})", lineno)
        try:
            direction = EdgeDirection(tokens[2])
        except ValueError:
            raise GraphParseError(f"unknown direction {tokens[2]!r}", lineno) from None
        edges.append((u, v))
        assignment[(u, v)] = direction
    return Orientation(UndirectedGraph(n, edges), assignment)


_PARSERS = {
    "digraph": parse_digraph,
    "cdigraph": parse_colored_digraph,
    "graph": parse_graph,
    "orientation": parse_orientation,
}


def parse(text: str):
    """Parse any of the four text formats, dispatching on the header kind."""
    kind, _ = _parse_header(_content_lines(text))
    return _PARSERS[kind](text)


# -- serialization -------------------------------------------------------


def serialize(obj) -> str:
    if isinstance(obj, ColoredDigraph):
        rows = [f"{u} {v} {c.value}" for (u, v), c in sorted(obj.color.items())]
        return "\n".join([f"cdigraph {obj.vertex_count}"] + rows) + "\n"
    if isinstance(obj, Digraph):
        rows = [f"{u} {v}" for (u, v) in sorted(obj.arcs)]
        return "\n".join([f"digraph {obj.vertex_count}"] + rows) + "\n"
    if isinstance(obj, Orientation):
        rows = [
            f"{u} {v} {obj.assignment[(u, v)].value}"
            for (u, v) in obj.base.sorted_edges()
        ]
        return "\n".join([f"orientation {obj.base.vertex_count}"] + rows) + "\n"
    if isinstance(obj, UndirectedGraph):
        rows = [f"{u} {v}" for (u, v) in obj.sorted_edges()]
        return "\n".join([f"graph {obj.vertex_count}"] + rows) + "\n"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json_obj(obj) -> dict:
    if isinstance(obj, ColoredDigraph):
        return {
            "kind": "cdigraph",
            "vertex_count": obj.vertex_count,
            "arcs": [[u, v, c.value] for (u, v), c in sorted(obj.color.items())],
        }
    if isinstance(obj, Digraph):
        return {
            "kind": "digraph",
            "vertex_count": obj.vertex_count,
            "arcs": [[u, v] for (u, v) in sorted(obj.arcs)],
        }
    if isinstance(obj, Orientation):
        return {
            "kind": "orientation",
            "vertex_count": obj.base.vertex_count,
            "edges": [
                [u, v, obj.assignment[(u, v)].value]
                for (u, v) in obj.base.sorted_edges()
            ],
        }
    if isinstance(obj, UndirectedGraph):
        return {
            "kind": "graph",
            "vertex_count": obj.vertex_count,
            "edges": [[u, v] for (u, v) in obj.sorted_edges()],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json_obj(data: dict):
    if not isinstance(data, dict) or "kind" not in data:
        raise GraphParseError("JSON object must carry a 'kind' field")
    kind = data["kind"]
    try:
        n = int(data["vertex_count"])
        if kind == "digraph":
            return Digraph(n, [tuple(a) for a in data.get("arcs", [])])
        if kind == "cdigraph":
            return ColoredDigraph.from_colored_arcs(
                n, [(a[0], a[1], a[2]) for a in data.get("arcs", [])]
            )
        if kind == "graph":
            return UndirectedGraph(n, [tuple(e) for e in data.get("edges", [])])
        if kind == "orientation":
            edges = [(e[0], e[1]) for e in data.get("edges", [])]
            assignment = {(e[0], e[1]): EdgeDirection(e[2]) for e in data.get("edges", [])}
            return Orientation(UndirectedGraph(n, edges), assignment)
    except (KeyError, IndexError, TypeError, ValueError, BoundsError) as exc:
        raise GraphParseError(f"bad {kind!r} JSON object: {exc}") from None
    raise GraphParseError(f"unknown kind {kind!r}")


def parse_json(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from None
    return from_json_obj(data)


def serialize_json(obj, indent=None) -> str:
    return json.dumps(to_json_obj(obj), indent=indent) + "\n"


def load(text: str, fmt: str = "text"):
    """Parse `text` as either the line format or its JSON mirror."""
    if fmt == "json":
        return parse_json(text)
    if fmt == "text":
        return parse(text)
    raise ValueError(f"unknown format {fmt!r}")


def load_auto(text: str):
    """Parse either format, sniffing JSON by its leading brace."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse(text)


def dump(obj, fmt: str = "text") -> str:
    if fmt == "json":
        return serialize_json(obj)
    if fmt == "text":
        return serialize(obj)
    raise ValueError(f"unknown format {fmt!r}")


def to_dot(obj) -> str:
    """DOT text for external rendering; colors and reversibility shown."""
    lines = []
    if isinstance(obj, ColoredDigraph):
        lines.append("digraph G {")
        palette = {ArcColor.BLUE: "blue", ArcColor.RED: "red"}
        for v in range(obj.vertex_count):
            lines.append(f"  {v};")
        for (u, v), c in sorted(obj.color.items()):
            lines.append(f"  {u} -> {v} [color={palette[c]}];")
    elif isinstance(obj, Digraph):
        lines.append("digraph G {")
        for v in range(obj.vertex_count):
            lines.append(f"  {v};")
        for (u, v) in sorted(obj.arcs):
            lines.append(f"  {u} -> {v};")
    elif isinstance(obj, Orientation):
        lines.append("digraph G {")
        for v in range(obj.base.vertex_count):
            lines.append(f"  {v};")
        for (u, v) in obj.base.sorted_edges():
            d = obj.assignment[(u, v)]
            if d is EdgeDirection.FORWARD:
                lines.append(f"  {u} -> {v};")
            elif d is EdgeDirection.BACKWARD:
                lines.append(f"  {v} -> {u};")
            else:
                lines.append(f"  {u} -> {v} [dir=both];")
    elif isinstance(obj, UndirectedGraph):
        lines.append("graph G {")
        for v in range(obj.vertex_count):
            lines.append(f"  {v};")
        for (u, v) in obj.sorted_edges():
            lines.append(f"  {u} -- {v};")
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"
