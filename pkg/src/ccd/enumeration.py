"""Exhaustive and random generation of small port graphs.

The generator grows a graph breadth-first from a root: each slot of the
vertex being processed is either left free, wired to a not-yet-processed
slot, or wired to a brand new vertex.  New vertices are numbered in
discovery order, which is exactly the numbering :func:`canonical_form`
assigns, so every rooted structure comes out once.
"""

from __future__ import annotations

import itertools
import os
import random
from typing import Iterator, Optional

from .paths import is_bounded_star
from .portgraph import (DEFAULT_SIGMA, PORTS, Disk, PortGraph, _bfs_order, _rooted_key,
                        graph_from_key, shift)

MAX_EXHAUSTIVE_RADIUS = 2


class StateSpaceExceeded(RuntimeError):
    def __init__(self, limit, what="states"):
        super().__init__(f"enumeration exceeded {limit} {what}")
        self.limit = limit


class RadiusTooLarge(ValueError):
    pass


def default_max_states() -> int:
    return int(os.environ.get("CCD_MAX_STATES", "200000"))


def _grow(max_vertices: int, radius: Optional[int], oriented: bool = False):
    """Yield rooted structures as ``(n, edges)`` with edges over ``(index, port)`` slots."""
    partner = {}
    dist = [0]

    def next_slot(i, j):
        j += 1
        if j == 3:
            return i + 1, 0
        return i, j

    def rec(i, j):
        n = len(dist)
        if i == n:
            edges = {tuple(sorted((s, t))) for s, t in partner.items()}
            yield n, tuple(sorted(edges))
            return
        slot = (i, PORTS[j])
        ni, nj = next_slot(i, j)
        if slot in partner:
            yield from rec(ni, nj)
            return
        # leave free
        yield from rec(ni, nj)
        # wire to an undecided slot of this or a later vertex
        for k in range(i, n):
            for q in PORTS:
                other = (k, q)
                if other == slot or other in partner:
                    continue
                if k == i and PORTS.index(q) < j:
                    continue
                partner[slot], partner[other] = other, slot
                yield from rec(ni, nj)
                del partner[slot], partner[other]
        # wire to a new vertex
        if n < max_vertices and (radius is None or dist[i] < radius):
            dist.append(dist[i] + 1)
            for q in (("a",) if oriented else PORTS):
                other = (n, q)
                partner[slot], partner[other] = other, slot
                yield from rec(ni, nj)
                del partner[slot], partner[other]
            dist.pop()

    yield from rec(0, 0)


def _labellings(n, sigma):
    return itertools.product(tuple(sigma), repeat=n)


def enumerate_disks(r: int, sigma=DEFAULT_SIGMA, bounded_star: Optional[int] = None,
                    max_states: Optional[int] = None) -> Iterator[Disk]:
    """Every radius-``r`` disk up to center-preserving isomorphism, canonically named.

    ``bounded_star`` drops disks that are not bounded-star with that bound.
    Raises :class:`StateSpaceExceeded` past ``max_states`` disks.
    """
    if r > MAX_EXHAUSTIVE_RADIUS:
        raise RadiusTooLarge(f"exhaustive disk enumeration supports radius <= {MAX_EXHAUSTIVE_RADIUS}")
    if r < 0:
        raise ValueError("radius must be non-negative")
    max_vertices = 1 + 3 * (2 ** r - 1)
    count = 0
    for n, edges in _grow(max_vertices, r):
        for labels in _labellings(n, sigma):
            g = graph_from_key((labels, edges))
            if bounded_star is not None and not is_bounded_star(g, bounded_star)[0]:
                continue
            count += 1
            if max_states is not None and count > max_states:
                raise StateSpaceExceeded(max_states, "disks")
            yield Disk(g, "0", r)


def _min_rooted_key(g):
    return min(_rooted_key(g, *_bfs_order(g, root)) for root in g.labels)


def connected_graphs(max_vertices: int, sigma=DEFAULT_SIGMA, min_vertices: int = 1) -> Iterator[PortGraph]:
    """Connected graphs with at most ``max_vertices`` vertices, one per isomorphism class."""
    for n, edges in _grow(max_vertices, None):
        if n < min_vertices:
            continue
        for labels in _labellings(n, sigma):
            key = (labels, edges)
            g = graph_from_key(key)
            if key == _min_rooted_key(g):
                yield g


def _oriented_key(g: PortGraph, root, t: int):
    """Rooted key after rotating ``root`` by ``t`` and every other vertex so its discovery port is ``a``."""
    rot = {root: t}
    index = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for P in PORTS:
            s = g.partner(v, shift(P, -rot[v]))
            if s is not None and s[0] not in index:
                w, q = s
                rot[w] = (PORTS.index("a") - PORTS.index(q)) % 3
                index[w] = len(order)
                order.append(w)
    labels = tuple(g.label(v) for v in order)
    edges = []
    for (a, p), (b, q) in g.edges:
        s1 = (index[a], shift(p, rot[a]))
        s2 = (index[b], shift(q, rot[b]))
        edges.append((s1, s2) if s1 <= s2 else (s2, s1))
    edges.sort()
    return (labels, tuple(edges))


def oriented_key(g: PortGraph):
    """Key of a connected graph up to renaming and vertex rotations."""
    return min(_oriented_key(g, root, t) for root in g.labels for t in range(3))


def oriented_connected_graphs(max_vertices: int, sigma=DEFAULT_SIGMA) -> Iterator[PortGraph]:
    """Connected graphs with at most ``max_vertices`` vertices, one per class under renaming
    and rotation.  Labels are assumed rotation-invariant (identity label bijection)."""
    for n, edges in _grow(max_vertices, None, oriented=True):
        for labels in _labellings(n, sigma):
            key = (labels, edges)
            g = graph_from_key(key)
            if key == oriented_key(g):
                yield g


def brute_force_disk_keys(r: int, max_vertices: int, sigma=DEFAULT_SIGMA) -> set:
    """Canonical keys of all radius-``r`` disks on at most ``max_vertices`` named vertices,
    found by trying every partial matching of slots.  Slow; an oracle for tests."""
    from .portgraph import bfs_distances, canonical_form

    keys = set()
    for n in range(1, max_vertices + 1):
        slots = [(str(i), p) for i in range(n) for p in PORTS]
        for matching in _partial_matchings(slots):
            g = PortGraph([str(i) for i in range(n)], matching)
            dist = bfs_distances(g, "0")
            if len(dist) != n or max(dist.values()) > r:
                continue
            for labels in _labellings(n, sigma):
                h = PortGraph(dict(zip([str(i) for i in range(n)], labels)), matching)
                keys.add(canonical_form(Disk(h, "0", r))[0])
    return keys


def _partial_matchings(slots):
    if not slots:
        yield []
        return
    first, rest = slots[0], slots[1:]
    yield from _partial_matchings(rest)
    for i, other in enumerate(rest):
        for m in _partial_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + m


def random_graph(n: int, rng: random.Random, density: float = 0.5, sigma=DEFAULT_SIGMA,
                 connected: bool = True, prefix: str = "v") -> PortGraph:
    """A random valid graph on ``n`` vertices named ``prefix0..``.

    With ``connected`` a random spanning tree is laid first (always possible
    at degree three); then each remaining free slot pair is wired with
    probability ``density``.
    """
    names = [f"{prefix}{i}" for i in range(n)]
    free = {(v, p) for v in names for p in PORTS}
    edges = []

    def wire(s1, s2):
        free.discard(s1)
        free.discard(s2)
        edges.append((s1, s2))

    if connected:
        for i in range(1, n):
            candidates = sorted(s for s in free if s[0] in names[:i])
            s1 = rng.choice(candidates)
            wire(s1, (names[i], rng.choice(PORTS)))
    rest = sorted(free)
    rng.shuffle(rest)
    while len(rest) >= 2:
        s1, s2 = rest.pop(), rest.pop()
        if rng.random() < density:
            wire(s1, s2)
    labels = {v: rng.choice(tuple(sigma)) for v in names}
    return PortGraph(labels, edges)


def random_multiset(g: PortGraph, rng: random.Random) -> dict:
    return {v: t for v in g.vertices() if (t := rng.randrange(3))}
