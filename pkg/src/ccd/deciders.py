"""Decision procedures over local rules.

``decide_rotation_commuting`` sweeps every canonical disk and every
single-vertex rotation of it and asks whether the two outputs differ by a
rotation multiset.

``decide_bounded_star_preserving`` answers positively only with a proof
and negatively only with a replayable host graph:

* if every image of a bounded-star disk is an ``{x.e}``-renamed subgraph
  of its disk (same ports), then ``F(G)`` is a renamed subgraph of ``G``;
  monotonous walks in a subgraph are prefixes (or the same cycles) of walks
  in ``G``, so the bound carries over;
* otherwise bounded-star host graphs are searched, smallest first, for
  one whose image breaks the bound.

Anything else is reported as inconclusive, never guessed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .dynamics import step
from .enumeration import (RadiusTooLarge, StateSpaceExceeded, connected_graphs, default_max_states,
                          enumerate_disks, random_graph)
from .io import graph_from_json, graph_to_json, witness_to_json
from .names import Derived, EPSILON, from_json, to_json
from .paths import is_bounded_star
from .portgraph import Disk, PortGraph, disk, rotate, rotation_equivalent
from .rules import LocalRule, evaluate

POSITIVE = {"Commuting", "Preserving"}
NEGATIVE = {"NotCommuting", "NotPreserving"}


@dataclass
class DeciderVerdict:
    verdict: str
    witness: Optional[dict] = None
    reason: Optional[str] = None
    bound: Optional[int] = None
    stats: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if self.verdict in POSITIVE:
            return 0
        if self.verdict in NEGATIVE:
            return 1
        return 2

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        if self.stats:
            out["stats"] = self.stats
        return out


def _disk_json(d: Disk, sigma) -> dict:
    obj = graph_to_json(d.graph, sigma)
    obj["center"] = to_json(d.center)
    obj["radius"] = d.radius
    return obj


def _disk_from_json(obj) -> Disk:
    return Disk(graph_from_json(obj), from_json(obj["center"]), int(obj["radius"]))


# -- rotation commutation --------------------------------------------------------

def decide_rotation_commuting(f: LocalRule, max_states: Optional[int] = None) -> DeciderVerdict:
    if max_states is None:
        max_states = default_max_states()
    checked = 0
    try:
        for d in enumerate_disks(f.radius, f.sigma, max_states=max_states):
            image = evaluate(f, d)
            for u in d.graph.vertices():
                rotated = evaluate(f, Disk(rotate(d.graph, u), d.center, d.radius))
                checked += 1
                if rotation_equivalent(image, rotated) is None:
                    return DeciderVerdict("NotCommuting", witness={
                        "disk": _disk_json(d, f.sigma),
                        "rotated_vertex": to_json(u),
                        "image": graph_to_json(image, f.sigma),
                        "rotated_image": graph_to_json(rotated, f.sigma),
                    }, stats={"checked": checked})
    except (StateSpaceExceeded, RadiusTooLarge) as exc:
        return DeciderVerdict("Inconclusive", reason=str(exc), stats={"checked": checked})
    return DeciderVerdict("Commuting", stats={"checked": checked})


def replay_commutation_witness(f: LocalRule, witness: dict) -> bool:
    """True when the witness really is a disk and rotation with no conjugate."""
    d = _disk_from_json(witness["disk"])
    u = from_json(witness["rotated_vertex"])
    image = evaluate(f, d)
    rotated = evaluate(f, Disk(rotate(d.graph, u), d.center, d.radius))
    return rotation_equivalent(image, rotated) is None


# -- bounded-star preservation ---------------------------------------------------

def embeds_into_disk(image: PortGraph, d: Disk) -> bool:
    """Is ``image`` an ``{x.e}``-renamed subgraph of ``d`` with ports kept?"""
    for v in image.vertices():
        if not (isinstance(v, Derived) and len(v) == 1):
            return False
        (x, s), = v
        if s != EPSILON or x not in d.graph:
            return False
    for (a, p), (b, q) in image.edges:
        (x, _), = a
        (y, _), = b
        if d.graph.partner(x, p) != (y, q):
            return False
    return True


def _violation_witness(f: LocalRule, host: PortGraph, s: int):
    image = step(f, host)
    ok, path = is_bounded_star(image, s)
    if ok:
        return None
    first = ((path.vertices[0], path.pairs[0][0]), (path.vertices[1], path.pairs[0][1]))
    center = None
    for v in host.vertices():
        img = evaluate(f, disk(host, v, f.radius))
        if img.partner(*first[0]) == first[1]:
            center = v
            break
    return {
        "disk": _disk_json(disk(host, center, f.radius), f.sigma),
        "H": graph_to_json(host, f.sigma),
        "image": graph_to_json(image, f.sigma),
        "path": witness_to_json(path),
    }


def decide_bounded_star_preserving(f: LocalRule, s: int, mode="exhaustive", seed: int = 0,
                                   max_states: Optional[int] = None,
                                   max_host_vertices: int = 4) -> DeciderVerdict:
    """Decide whether ``F`` maps bounded-star(``s``) graphs to bounded-star(``s``) graphs.

    ``mode`` is ``"exhaustive"`` or ``("sampled", n)`` / ``"sampled:n"``.
    Exhaustive mode searches every connected bounded-star host with at most
    ``max_host_vertices`` vertices; sampled mode draws ``n`` random hosts.
    """
    if s < 1:
        raise ValueError("bound must be at least 1")
    if max_states is None:
        max_states = default_max_states()
    samples = None
    if isinstance(mode, str) and mode.startswith("sampled"):
        samples = int(mode.split(":", 1)[1]) if ":" in mode else 200
    elif isinstance(mode, tuple):
        samples = int(mode[1])
    elif mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")

    stats = {"disks": 0, "hosts": 0}
    certified = True
    try:
        for d in enumerate_disks(f.radius, f.sigma, bounded_star=s, max_states=max_states):
            stats["disks"] += 1
            image = evaluate(f, d)
            if not is_bounded_star(image, s)[0]:
                witness = _violation_witness(f, d.graph, s)
                if witness is not None:
                    return DeciderVerdict("NotPreserving", witness=witness, bound=s, stats=stats)
            if certified and not embeds_into_disk(image, d):
                certified = False
    except (StateSpaceExceeded, RadiusTooLarge) as exc:
        certified = False
        stats["disk_enumeration"] = str(exc)
    if certified:
        return DeciderVerdict("Preserving", bound=s, stats=stats,
                              reason="every image of a bounded-star disk embeds into the disk")

    if samples is None:
        hosts = (g for n in range(1, max_host_vertices + 1)
                 for g in connected_graphs(n, f.sigma, min_vertices=n))
        scope = f"all connected bounded-star hosts with <= {max_host_vertices} vertices"
    else:
        rng = random.Random(seed)
        hosts = (random_graph(rng.randint(1, 8), rng, rng.random(), f.sigma) for _ in range(samples))
        scope = f"{samples} random hosts (seed {seed})"
    for host in hosts:
        if not is_bounded_star(host, s)[0]:
            continue
        stats["hosts"] += 1
        if stats["hosts"] > max_states:
            return DeciderVerdict("Inconclusive", bound=s, stats=stats,
                                  reason=f"host search exceeded {max_states} states")
        witness = _violation_witness(f, host, s)
        if witness is not None:
            return DeciderVerdict("NotPreserving", witness=witness, bound=s, stats=stats)
    return DeciderVerdict("Inconclusive", bound=s, stats=stats,
                          reason=f"no embedding certificate and no counterexample among {scope}")


def replay_bsp_witness(f: LocalRule, verdict: DeciderVerdict) -> bool:
    """True when the witness host is bounded-star and its image is not."""
    s = verdict.bound
    host = graph_from_json(verdict.witness["H"])
    return is_bounded_star(host, s)[0] and not is_bounded_star(step(f, host), s)[0]
