"""The CW-complex a port graph stands for.

Triangles are the vertices.  Segments are slots glued by edges.  Points
are corners: slot ``u:p`` also names the corner of ``u`` opposite side
``p``, and gluing side ``p`` of ``u`` to side ``q`` of ``v`` identifies
corner ``u:p-1`` with ``v:q+1`` and ``u:p+1`` with ``v:q-1``.  Both
quotients are closed under transitivity with a union-find.

The defining clause for segments, read literally, relates ``u:p`` and
``v:q`` whenever ``u`` has a self-edge ``{u:p, u:q}``.  That reading is
kept behind ``literal_segments=True`` for comparison; the default relates
the two slots of each edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .portgraph import PORTS, PortGraph, pred, shift, slot_key, succ
from .names import to_json


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def classes(self) -> List[tuple]:
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        out = [tuple(sorted(g, key=slot_key)) for g in groups.values()]
        out.sort(key=lambda c: slot_key(c[0]))
        return out


@dataclass(frozen=True)
class Complex:
    triangles: Tuple
    segments: Tuple[tuple, ...]
    points: Tuple[tuple, ...]
    segment_of: Dict
    point_of: Dict

    def segment_points(self, segment: int) -> set:
        u, p = self.segments[segment][0]
        return {self.point_of[(u, succ(p))], self.point_of[(u, pred(p))]}

    def triangle_segments(self, u) -> list:
        return [self.segment_of[(u, p)] for p in PORTS]

    def counts(self) -> Tuple[int, int, int]:
        return len(self.points), len(self.segments), len(self.triangles)


def interpret(g: PortGraph, literal_segments: bool = False) -> Complex:
    vertices = g.vertices()
    slots = [(v, p) for v in vertices for p in PORTS]

    seg = UnionFind(slots)
    if literal_segments:
        for (u, p), (w, q) in g.edges:
            if u == w:
                for v in vertices:
                    seg.union((u, p), (v, q))
                    seg.union((u, q), (v, p))
    else:
        for s1, s2 in g.edges:
            seg.union(s1, s2)

    pts = UnionFind(slots)
    for s1, s2 in g.edges:
        for (u, x), (v, y) in ((s1, s2), (s2, s1)):
            # {u:x, v:y} in E  gives  u:(x-1) ~ v:(y+1)
            pts.union((u, shift(x, -1)), (v, shift(y, 1)))

    segments = seg.classes()
    points = pts.classes()
    return Complex(
        triangles=tuple(vertices),
        segments=tuple(segments),
        points=tuple(points),
        segment_of={s: i for i, c in enumerate(segments) for s in c},
        point_of={s: i for i, c in enumerate(points) for s in c},
    )


def euler_characteristic(c: Complex) -> int:
    k0, k1, k2 = c.counts()
    return k0 - k1 + k2


def boundary_segments(c: Complex) -> list:
    return [s for s in c.segments if len(s) == 1]


def star_size(c: Complex, point: int) -> int:
    """Number of triangle corners identified at point ``point`` (an index into ``c.points``)."""
    if not 0 <= point < len(c.points):
        raise KeyError(f"unknown point class {point}")
    return len(c.points[point])


def corners_meet(c: Complex, u, v) -> bool:
    """True when triangles ``u`` and ``v`` have a corner at a common point."""
    return bool({c.point_of[(u, p)] for p in PORTS} & {c.point_of[(v, p)] for p in PORTS})


def _slots_json(cls):
    return [[to_json(v), p] for v, p in cls]


def report(c: Complex) -> dict:
    k0, k1, k2 = c.counts()
    return {
        "K0": k0,
        "K1": k1,
        "K2": k2,
        "chi": k0 - k1 + k2,
        "boundary": [_slots_json(s) for s in boundary_segments(c)],
        "stars": [{"point": _slots_json(p), "size": len(p)} for p in c.points],
    }
