"""Paths, turn directions and the distances they induce.

Travelling along a path, each interior vertex is entered through one port
and left through another.  Leaving through the successor of the entry
port is a ``+1`` turn, through the predecessor a ``-1`` turn.  A path
whose turns all have the same sign winds around a single point of the
complex (it is *monotonous*); each change of sign is an *alternation*.

Lengths count edge traversals.  A monotonous walk around a closed star
could go round forever, so walks stop before traversing the same
directed edge twice: a closed star of ``k`` corners then gives a cycle of
length ``k`` and an open one a path of length ``k - 1``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .portgraph import PortGraph, UnknownVertexError, bfs_distances, pred, slot_key, succ


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class PathWitness:
    """Vertices ``v_0..v_n`` and pairs ``(q_i, p_i)``: edge ``{v_i:q_i, v_{i+1}:p_i}``."""

    vertices: Tuple
    pairs: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if len(self.vertices) != len(self.pairs) + 1:
            raise PathError("a path of n pairs needs n + 1 vertices")

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class AlternationProfile:
    signs: Tuple[int, ...]
    count: int

    @property
    def monotonous(self) -> bool:
        return self.count == 0


def turn(entry: str, exit_: str) -> int:
    if exit_ == succ(entry):
        return 1
    if exit_ == pred(entry):
        return -1
    raise PathError(f"re-exit through entry port {entry!r} is not a turn")


def check_witness(g: PortGraph, w: PathWitness) -> None:
    for i, (q, p) in enumerate(w.pairs):
        if g.partner(w.vertices[i], q) != (w.vertices[i + 1], p):
            raise PathError(f"step {i}: no edge {{{w.vertices[i]}:{q}, {w.vertices[i + 1]}:{p}}}")


def alternations(g: PortGraph, w: PathWitness) -> AlternationProfile:
    check_witness(g, w)
    signs = tuple(turn(w.pairs[i][1], w.pairs[i + 1][0]) for i in range(len(w.pairs) - 1))
    count = sum(1 for x, y in zip(signs, signs[1:]) if x != y)
    return AlternationProfile(signs, count)


# -- monotonous walks --------------------------------------------------------

@dataclass(frozen=True)
class MonotonousReport:
    length: int
    cyclic: bool
    witness: Optional[PathWitness] = field(default=None, compare=False)


def _traversals(g: PortGraph):
    """Every directed edge as ``(from_vertex, exit_port, to_vertex, entry_port)``, sorted."""
    out = []
    for s1, s2 in g.edges:
        out.append((s1, s2))
        if s1 != s2:
            out.append((s2, s1))
    out.sort(key=lambda t: (slot_key(t[0]), slot_key(t[1])))
    return out


def monotonous_walk(g: PortGraph, start, sign: int):
    """Follow the monotonous walk beginning with directed edge ``start``.

    Returns ``(steps, cyclic)`` where ``steps`` is the list of traversed
    directed edges.  With the turn sign fixed, each step determines the
    next one, and the step map is injective, so a walk that repeats a
    directed edge has come back to ``start``.
    """
    steps = [start]
    seen = {start}
    while True:
        (_, _), (w, p) = steps[-1]
        q = succ(p) if sign > 0 else pred(p)
        nxt = g.partner(w, q)
        if nxt is None:
            return steps, False
        step = ((w, q), nxt)
        if step in seen:
            return steps, True
        seen.add(step)
        steps.append(step)


def _witness(steps) -> PathWitness:
    vertices = [steps[0][0][0]] + [s[1][0] for s in steps]
    pairs = [(s[0][1], s[1][1]) for s in steps]
    return PathWitness(vertices, pairs)


def max_monotonous_length(g: PortGraph) -> MonotonousReport:
    """Longest monotonous walk that never repeats a directed edge.

    ``cyclic`` is set when the longest walk closes up on itself; ties go to
    the first walk in canonical order.
    """
    best = MonotonousReport(0, False, None)
    for start in _traversals(g):
        for sign in (1, -1):
            steps, cyclic = monotonous_walk(g, start, sign)
            if len(steps) > best.length:
                best = MonotonousReport(len(steps), cyclic, _witness(steps))
    return best


def is_bounded_star(g: PortGraph, s: int):
    """``(True, None)`` if every monotonous walk has length <= s, else ``(False, witness)``.

    The witness is a monotonous path of length exactly ``s + 1``.
    """
    if s < 0:
        raise ValueError("bound must be non-negative")
    for start in _traversals(g):
        for sign in (1, -1):
            steps, _ = monotonous_walk(g, start, sign)
            if len(steps) > s:
                return False, _witness(steps[: s + 1])
    return True, None


# -- distances ---------------------------------------------------------------

def graph_distance(g: PortGraph, u, v) -> float:
    if v not in g:
        raise UnknownVertexError(v)
    return bfs_distances(g, u).get(v, math.inf)


def geometric_distance(g: PortGraph, u, v) -> float:
    """``1 +`` the fewest alternations on any path from ``u`` to ``v`` (0 if equal).

    0-1 breadth-first search over states ``(vertex, entry port, last turn)``;
    a step costs one when it changes the turn direction.
    """
    for x in (u, v):
        if x not in g:
            raise UnknownVertexError(x)
    if u == v:
        return 0
    best = {}
    queue = deque()
    for _, (w, p) in g.incident(u):
        state = (w, p, 0)
        if state not in best:
            best[state] = 0
            queue.append((0, state))
    while queue:
        cost, state = queue.popleft()
        if cost > best[state]:
            continue
        w, p, last = state
        if w == v:
            return 1 + cost
        for q, (x, p2) in g.incident(w):
            if q == p:
                continue
            sign = turn(p, q)
            step = 1 if last and sign != last else 0
            nxt = (x, p2, sign)
            if best.get(nxt, math.inf) > cost + step:
                best[nxt] = cost + step
                if step:
                    queue.append((cost + 1, nxt))
                else:
                    queue.appendleft((cost, nxt))
    return math.inf


def enumerate_paths(g: PortGraph, u, max_length: int) -> List[PathWitness]:
    """All paths from ``u`` of length 1..max_length without U-turns or repeated directed edges."""
    out = []

    def extend(vertices, pairs, used):
        if pairs:
            out.append(PathWitness(vertices, pairs))
        if len(pairs) == max_length:
            return
        here = vertices[-1]
        for q, (w, p) in g.incident(here):
            if pairs and q == pairs[-1][1]:
                continue
            step = ((here, q), (w, p))
            if step in used:
                continue
            extend(vertices + [w], pairs + [(q, p)], used | {step})

    extend([u], [], frozenset())
    return out
