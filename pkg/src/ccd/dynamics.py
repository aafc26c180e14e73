"""Global dynamics induced by a local rule: ``F(G)`` is the union of ``f`` over all disks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .io import graph_to_json
from .names import format_name, to_json
from .portgraph import (GraphError, PortGraph, apply_rotations, disk, flatten_names,
                        make_edge, rotation_equivalent)
from .rules import LocalRule, evaluate


class InconsistentImagesError(GraphError):
    """The images of two disks disagree on a slot or a label."""

    def __init__(self, centers, message):
        super().__init__(f"images of {format_name(centers[0])} and {format_name(centers[1])} "
                         f"are inconsistent: {message}")
        self.centers = centers


class StepError(GraphError):
    def __init__(self, index, cause):
        super().__init__(f"step {index}: {cause}")
        self.index = index
        self.cause = cause


def step(f: LocalRule, g: PortGraph) -> PortGraph:
    """One application of the global map, unioning images in canonical vertex order."""
    labels = {}
    label_owner = {}
    partner = {}
    owner = {}
    edges = set()
    for v in g.vertices():
        img = evaluate(f, disk(g, v, f.radius))
        for s1, s2 in img.edges:
            for a, b in ((s1, s2), (s2, s1)):
                old = partner.get(a)
                if old is not None and old != b:
                    raise InconsistentImagesError(
                        (owner[a], v), f"slot {format_name(a[0])}:{a[1]} wired to "
                                       f"{format_name(old[0])}:{old[1]} and {format_name(b[0])}:{b[1]}")
        for s1, s2 in img.edges:
            if s1 not in partner:
                owner[s1] = owner[s2] = v
            partner[s1], partner[s2] = s2, s1
            edges.add(make_edge(s1, s2))
        for x, lab in img.labels.items():
            old = labels.get(x)
            if old is None:
                labels[x] = lab
                if lab is not None:
                    label_owner[x] = v
            elif lab is not None and lab != old:
                raise InconsistentImagesError((label_owner[x], v),
                                              f"vertex {format_name(x)} labelled {old!r} and {lab!r}")
    missing = [format_name(x) for x, lab in labels.items() if lab is None]
    if missing:
        raise GraphError(f"no image assigns a label to {', '.join(sorted(missing))}")
    return PortGraph(labels, edges)


@dataclass
class RunConfig:
    rule: LocalRule
    steps: int = 1
    canonicalize_names: bool = True
    record_history: bool = False

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be non-negative")


def run(cfg: RunConfig, g: PortGraph):
    """Iterate :func:`step`; returns ``(final_graph, history)``.

    With ``canonicalize_names`` each intermediate graph's derived names are
    flattened to strings before the next step.  ``history`` lists the graph
    after each step when ``record_history`` is set, else it is empty.
    """
    history = []
    for i in range(cfg.steps):
        try:
            g = step(cfg.rule, g)
        except GraphError as exc:
            raise StepError(i, exc) from exc
        if cfg.canonicalize_names:
            g = flatten_names(g)
        if cfg.record_history:
            history.append(g)
    return g, history


def write_history(path, cfg: RunConfig, history) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps({"rule": cfg.rule.name, "steps": cfg.steps}) + "\n")
        for g in history:
            fh.write(json.dumps(graph_to_json(g, cfg.rule.sigma)) + "\n")


@dataclass
class OracleVerdict:
    kind: str  # "ConjugateFound" or "NoConjugate"
    conjugate: Optional[dict] = None
    witness: Optional[dict] = None

    @property
    def found(self) -> bool:
        return self.kind == "ConjugateFound"

    def to_json(self) -> dict:
        out = {"verdict": self.kind}
        if self.conjugate is not None:
            out["conjugate"] = [[to_json(v), t] for v, t in sorted(self.conjugate.items(), key=lambda i: repr(i[0]))]
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def commutation_oracle(f: LocalRule, g: PortGraph, m: dict) -> OracleVerdict:
    """Is there a rotation multiset taking ``F(G)`` to ``F(mG)``?

    The search in :func:`rotation_equivalent` is exhaustive (each connected
    component's exponents are fixed by one seed), so there is no
    inconclusive outcome.
    """
    rotated = step(f, apply_rotations(g, m))
    plain = step(f, g)
    rho = rotation_equivalent(plain, rotated)
    if rho is not None:
        return OracleVerdict("ConjugateFound", conjugate=rho)
    return OracleVerdict("NoConjugate", witness={
        "graph": graph_to_json(g, f.sigma),
        "rotation": [[to_json(v), t] for v, t in sorted(m.items(), key=lambda i: repr(i[0]))],
        "image": graph_to_json(plain, f.sigma),
        "rotated_image": graph_to_json(rotated, f.sigma),
    })
