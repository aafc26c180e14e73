"""JSON encodings of graphs, path witnesses and history files."""

from __future__ import annotations

import json

from . import names
from .portgraph import DEFAULT_SIGMA, PORT_INDEX, GraphError, PortGraph, validate


class MalformedInput(GraphError):
    pass


def slot_to_json(slot):
    return [names.to_json(slot[0]), slot[1]]


def graph_to_json(g: PortGraph, sigma=None) -> dict:
    if sigma is None:
        sigma = sorted({lab for lab in g.labels.values() if lab is not None} | set(DEFAULT_SIGMA))
    return {
        "sigma": list(sigma),
        "vertices": [{"name": names.to_json(v), "label": g.label(v)} for v in g.vertices()],
        "edges": [[slot_to_json(a), slot_to_json(b)] for a, b in g.sorted_edges()],
    }


def graph_from_json(obj, partial_labels: bool = False) -> PortGraph:
    """Parse a graph document; raises :class:`MalformedInput` on any invariant violation.

    ``partial_labels`` admits ``null`` labels, as found in rule outputs.
    """
    try:
        sigma = obj.get("sigma", list(DEFAULT_SIGMA))
        labels = {}
        for entry in obj["vertices"]:
            name = names.from_json(entry["name"])
            if name in labels:
                raise MalformedInput(f"duplicate vertex {names.format_name(name)}")
            labels[name] = entry.get("label", sigma[0])
        edges = []
        for edge in obj.get("edges", []):
            if len(edge) != 2:
                raise MalformedInput(f"edge must have two slots: {edge!r}")
            slots = []
            for name, port in edge:
                if port not in PORT_INDEX:
                    raise MalformedInput(f"unknown port {port!r}")
                slots.append((names.from_json(name), port))
            edges.append(tuple(slots))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"malformed graph document: {exc}") from exc
    g = PortGraph(labels, edges)
    if len(g.edges) != len(edges):
        raise MalformedInput("duplicate edge")
    problems = validate(g, list(sigma) + [None] if partial_labels else sigma)
    if problems:
        raise MalformedInput("; ".join(problems))
    return g


def dumps_graph(g: PortGraph, sigma=None) -> str:
    return json.dumps(graph_to_json(g, sigma))


def loads_graph(text: str) -> PortGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    return graph_from_json(obj)


def load_graph(path) -> PortGraph:
    with open(path) as fh:
        return loads_graph(fh.read())


def save_graph(g: PortGraph, path, sigma=None) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json(g, sigma), fh, indent=1)
        fh.write("\n")


def witness_to_json(w) -> dict:
    return {"vertices": [names.to_json(v) for v in w.vertices],
            "pairs": [list(pair) for pair in w.pairs]}
