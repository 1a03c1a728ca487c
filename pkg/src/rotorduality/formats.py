"""Text formats: graph JSON, divisor and tree syntaxes, DOT export."""

import json
from pathlib import Path

from .errors import GraphFormatError
from .ribbon import RibbonGraph, build_ribbon_graph
from .sandpile import Divisor


def parse_graph(text: str, name=None) -> RibbonGraph:
    """Parse a graph JSON document.

    Structural problems raise :class:`GraphFormatError` naming the line or
    field; semantic problems (loops, bad rotations, ...) raise the matching
    validation error from :mod:`rotorduality.errors`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, where=f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise GraphFormatError("top level must be an object", where="line 1")
    for key in ("vertices", "edges", "rotations"):
        if key not in doc:
            raise GraphFormatError("missing field", where=f"field {key!r}")
    if not isinstance(doc["vertices"], list) or not all(isinstance(v, str) for v in doc["vertices"]):
        raise GraphFormatError("expected a list of strings", where="field 'vertices'")
    if not isinstance(doc["edges"], list):
        raise GraphFormatError("expected a list", where="field 'edges'")
    for i, item in enumerate(doc["edges"]):
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(x, str) for x in item)):
            raise GraphFormatError("expected [id, tail, head]", where=f"field 'edges[{i}]'")
    rotations = doc["rotations"]
    if not isinstance(rotations, dict):
        raise GraphFormatError("expected an object", where="field 'rotations'")
    for v, order in rotations.items():
        if not isinstance(order, list) or not all(isinstance(e, str) for e in order):
            raise GraphFormatError("expected a list of edge ids", where=f"field 'rotations.{v}'")
    return build_ribbon_graph(doc, name=name or doc.get("name"))


def load_graph(path) -> RibbonGraph:
    path = Path(path)
    return parse_graph(path.read_text(), name=path.stem)


def graph_to_json(g: RibbonGraph) -> str:
    return json.dumps(g.to_dict(), indent=2) + "\n"


def parse_divisor(text: str, g: RibbonGraph = None) -> Divisor:
    """``"w:1,x:-1"`` -> Divisor; omitted vertices hold zero chips."""
    chips = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        v, sep, n = part.rpartition(":")
        if not sep or not v:
            raise GraphFormatError(f"expected vertex:int, got {part!r}", where="divisor")
        try:
            count = int(n)
        except ValueError:
            raise GraphFormatError(f"bad chip count in {part!r}", where="divisor") from None
        if g is not None:
            g.check_vertex(v)
        chips[v] = chips.get(v, 0) + count
    return Divisor(chips)


def format_divisor(d: Divisor) -> str:
    return str(d) or "0"


def parse_tree(text: str) -> frozenset:
    return frozenset(filter(None, (p.strip() for p in text.split(","))))


def format_tree(t) -> str:
    return ",".join(sorted(t))


def to_dot(g: RibbonGraph, tree=None) -> str:
    """DOT drawing; each vertex is a record whose ports follow its rotation."""
    tree = set(tree or ())
    lines = [f"graph {json.dumps(g.name or 'G')} {{", "  node [shape=record];"]
    port = {}
    for v in g.vertices:
        cells = []
        for i, e in enumerate(g.rotation(v)):
            port[(v, e)] = f"p{i}"
            cells.append(f"<p{i}> {e}")
        label = f"{v}|{{{'|'.join(cells)}}}"
        lines.append(f"  {json.dumps(v)} [label={json.dumps(label)}];")
    for e in g.edges:
        u, w = g.endpoints(e)
        style = ", penwidth=3" if e in tree else ""
        lines.append(
            f"  {json.dumps(u)}:{port[(u, e)]} -- {json.dumps(w)}:{port[(w, e)]} [label={json.dumps(e)}{style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
