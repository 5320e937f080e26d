"""Graph JSON and DOT serialization."""

from __future__ import annotations

import json
from pathlib import Path

from .core_graph import Alphabet, Edge, LabeledGraph
from .errors import InvalidArgument


def graph_to_dict(g: LabeledGraph) -> dict:
    return {
        "alphabet": list(g.alphabet.names),
        "base": g.base,
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "from": e.origin, "to": e.terminus, "label": e.label} for e in g.edges],
    }


def graph_from_dict(data: dict) -> LabeledGraph:
    try:
        alphabet = Alphabet(tuple(data["alphabet"]))
        edges = [Edge(int(e["id"]), int(e["from"]), int(e["to"]), int(e["label"])) for e in data["edges"]]
        vertices = [int(v) for v in data["vertices"]]
        base = data.get("base")
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"malformed graph JSON: {exc}") from None
    return LabeledGraph(alphabet, vertices, edges, None if base is None else int(base))


def dumps(obj) -> str:
    """Compact, key-order-preserving JSON used for every file this package writes."""
    return json.dumps(obj, separators=(",", ":"))


def graph_to_json(g: LabeledGraph) -> str:
    return dumps(graph_to_dict(g))


def graph_from_json(text: str) -> LabeledGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"invalid JSON: {exc}") from None
    return graph_from_dict(data)


def load_graph(path) -> LabeledGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror}") from None
    try:
        return graph_from_json(text)
    except InvalidArgument as exc:
        raise InvalidArgument(f"{path}: {exc}") from None


def save_text(path, text: str):
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise InvalidArgument(f"cannot write {path}: {exc.strerror}") from None


def export_dot(g: LabeledGraph, name: str = "G") -> str:
    """DOT digraph; the base vertex is drawn as a double circle."""
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        shape = "doublecircle" if v == g.base else "circle"
        lines.append(f"  {v} [shape={shape}];")
    for e in g.edges:
        label = g.alphabet.names[e.label].replace('"', '\\"')
        lines.append(f'  {e.origin} -> {e.terminus} [label="{label}", id="e{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
