"""Port graphs: the combinatorial encoding of 2D complexes.

A vertex is a triangle, its three ports ``a``, ``b``, ``c`` are the
triangle's sides, and an edge ``{u:p, v:q}`` glues side ``p`` of ``u``
to side ``q`` of ``v``.  Every ``(vertex, port)`` slot is used by at most
one edge.  Only finite graphs are handled.

Graphs are immutable values; every operation here returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .names import Derived, Name, eps, format_name, name_key, rename_star, sort_names

PORTS = ("a", "b", "c")
PORT_INDEX = {"a": 0, "b": 1, "c": 2}
DEFAULT_LABEL = "0"
DEFAULT_SIGMA = (DEFAULT_LABEL,)

Slot = Tuple[Name, str]
Edge = Tuple[Slot, Slot]


def succ(p: str) -> str:
    return PORTS[(PORT_INDEX[p] + 1) % 3]


def pred(p: str) -> str:
    return PORTS[(PORT_INDEX[p] + 2) % 3]


def shift(p: str, t: int) -> str:
    """Port ``p + t`` in the cyclic order a -> b -> c -> a."""
    return PORTS[(PORT_INDEX[p] + t) % 3]


class GraphError(ValueError):
    pass


class UnknownVertexError(GraphError):
    def __init__(self, name):
        super().__init__(f"unknown vertex {format_name(name)}")
        self.name = name


class InconsistentError(GraphError):
    """Two graphs wire the same slot to different partners."""

    def __init__(self, slot, first, second):
        super().__init__(
            f"slot {_fmt_slot(slot)} is wired to {_fmt_slot(first)} and to {_fmt_slot(second)}")
        self.slot = slot
        self.partners = (first, second)


class LabelConflictError(GraphError):
    def __init__(self, name, first, second):
        super().__init__(f"vertex {format_name(name)} carries labels {first!r} and {second!r}")
        self.name = name
        self.labels = (first, second)


class PartialRenamingError(GraphError):
    pass


def slot_key(slot: Slot):
    return (name_key(slot[0]), slot[1])


def make_edge(s1: Slot, s2: Slot) -> Edge:
    return (s1, s2) if slot_key(s1) <= slot_key(s2) else (s2, s1)


def _fmt_slot(slot) -> str:
    if slot is None:
        return "nothing"
    return f"{format_name(slot[0])}:{slot[1]}"


class PortGraph:
    """A finite labelled port graph.

    ``labels`` maps each vertex name to its label; a plain iterable of names
    gives every vertex :data:`DEFAULT_LABEL`.  A label of ``None`` means
    "unspecified" and only occurs in local-rule images, where the union
    with another image supplies it.

    The constructor does not enforce slot uniqueness so that
    :func:`validate` can diagnose bad input; all operations in this package
    map valid graphs to valid graphs.
    """

    __slots__ = ("_labels", "_edges", "_partner", "_hash")

    def __init__(self, labels: Mapping[Name, Optional[str]] | Iterable[Name] = (), edges: Iterable = ()):
        if isinstance(labels, Mapping):
            self._labels = dict(labels)
        else:
            self._labels = {v: DEFAULT_LABEL for v in labels}
        self._edges = frozenset(make_edge(tuple(s1), tuple(s2)) for s1, s2 in edges)
        self._partner = None
        self._hash = None

    @property
    def labels(self) -> Dict[Name, Optional[str]]:
        return dict(self._labels)

    @property
    def edges(self) -> frozenset:
        return self._edges

    def vertices(self) -> list:
        """Vertex names in canonical order."""
        return sort_names(self._labels)

    def sorted_edges(self) -> list:
        return sorted(self._edges, key=lambda e: (slot_key(e[0]), slot_key(e[1])))

    def label(self, v: Name):
        try:
            return self._labels[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def __contains__(self, v) -> bool:
        return v in self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def _partners(self) -> dict:
        if self._partner is None:
            partner = {}
            for s1, s2 in self._edges:
                partner[s1] = s2
                partner[s2] = s1
            self._partner = partner
        return self._partner

    def partner(self, v: Name, p: str) -> Optional[Slot]:
        return self._partners().get((v, p))

    def incident(self, v: Name):
        """``(port, partner_slot)`` for each wired port of ``v``, in port order."""
        partners = self._partners()
        return [(p, partners[(v, p)]) for p in PORTS if (v, p) in partners]

    def neighbours(self, v: Name) -> set:
        return {w for _, (w, _) in self.incident(v)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PortGraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._labels.items()), self._edges))
        return self._hash

    def __repr__(self) -> str:
        vs = ", ".join(format_name(v) if self._labels[v] == DEFAULT_LABEL
                       else f"{format_name(v)}={self._labels[v]}" for v in self.vertices())
        es = ", ".join(f"{{{_fmt_slot(a)}, {_fmt_slot(b)}}}" for a, b in self.sorted_edges())
        return f"PortGraph([{vs}], [{es}])"


EMPTY = PortGraph()


@dataclass(frozen=True)
class Disk:
    """A pointed graph: the closed ball of some radius around ``center``."""

    graph: PortGraph
    center: Name
    radius: int


def validate(g: PortGraph, sigma: Optional[Iterable[str]] = None) -> list:
    """Return the list of violations of the port-graph invariants; empty means valid."""
    problems = []
    seen = {}
    for s1, s2 in g.sorted_edges():
        if s1 == s2:
            problems.append(f"edge joins slot {_fmt_slot(s1)} to itself")
        for s in (s1, s2):
            if s[1] not in PORT_INDEX:
                problems.append(f"unknown port {s[1]!r} in slot {_fmt_slot(s)}")
            if s[0] not in g:
                problems.append(f"edge endpoint {format_name(s[0])} is not a vertex")
            seen[s] = seen.get(s, 0) + 1
    for s in sorted(seen, key=slot_key):
        if seen[s] > 1:
            problems.append(f"slot {_fmt_slot(s)} used {seen[s]} times")
    if sigma is not None:
        sigma = set(sigma)
        for v in g.vertices():
            if g.label(v) not in sigma:
                problems.append(f"label {g.label(v)!r} of {format_name(v)} is outside sigma")
    return problems


def check(g: PortGraph, sigma=None) -> PortGraph:
    problems = validate(g, sigma)
    if problems:
        raise GraphError("; ".join(problems))
    return g


def first_conflict(g: PortGraph, h: PortGraph):
    """The first slot wired to different partners in ``g`` and ``h``, or None."""
    small, large = (g, h) if len(g.edges) <= len(h.edges) else (h, g)
    for s1, s2 in small.sorted_edges():
        for s, other in ((s1, s2), (s2, s1)):
            q = large.partner(*s)
            if q is not None and q != other:
                return s, other, q
    return None


def consistent(g: PortGraph, h: PortGraph) -> bool:
    return first_conflict(g, h) is None


def union(g: PortGraph, h: PortGraph) -> PortGraph:
    """Union of two consistent graphs.

    Raises :class:`InconsistentError` on a slot conflict and
    :class:`LabelConflictError` when a shared vertex carries two different
    (specified) labels.
    """
    conflict = first_conflict(g, h)
    if conflict is not None:
        raise InconsistentError(*conflict)
    labels = dict(g._labels)
    for v, lab in h._labels.items():
        old = labels.get(v)
        if v not in labels or old is None:
            labels[v] = lab
        elif lab is not None and lab != old:
            raise LabelConflictError(v, old, lab)
    out = PortGraph(labels)
    out._edges = g._edges | h._edges
    return out


def union_all(graphs: Iterable[PortGraph]) -> PortGraph:
    out = EMPTY
    for h in graphs:
        out = union(out, h)
    return out


@dataclass(frozen=True)
class RotationConfig:
    """The port cycle and label bijection used by vertex rotations.

    ``label_map`` must satisfy ``label_map^3 = id``; ``None`` is the identity.
    """

    port_cycle: Tuple[str, str, str] = ("a", "b", "c")
    label_map: Optional[Mapping[str, str]] = None

    def port(self, p: str, t: int) -> str:
        i = self.port_cycle.index(p)
        return self.port_cycle[(i + t) % 3]

    def label(self, lab, t: int):
        if self.label_map is None or lab is None:
            return lab
        for _ in range(t % 3):
            lab = self.label_map[lab]
        return lab


DEFAULT_ROTATION = RotationConfig()


def normalize_multiset(m: Mapping[Name, int]) -> dict:
    """Reduce exponents mod 3 and drop zeros."""
    return {v: t % 3 for v, t in m.items() if t % 3}


def combine(m1: Mapping[Name, int], m2: Mapping[Name, int]) -> dict:
    """Multiset union of two rotation sequences (exponents add mod 3)."""
    out = dict(m1)
    for v, t in m2.items():
        out[v] = out.get(v, 0) + t
    return normalize_multiset(out)


def invert(m: Mapping[Name, int]) -> dict:
    return normalize_multiset({v: -t for v, t in m.items()})


def apply_rotations(g: PortGraph, m: Mapping[Name, int], config: RotationConfig = DEFAULT_ROTATION) -> PortGraph:
    """Apply ``r_v^m[v]`` for every ``v``; rotations commute so order is irrelevant."""
    m = normalize_multiset(m)
    for v in m:
        if v not in g:
            raise UnknownVertexError(v)
    if not m:
        return g

    def move(slot):
        t = m.get(slot[0])
        return slot if t is None else (slot[0], config.port(slot[1], t))

    labels = {v: config.label(lab, m.get(v, 0)) for v, lab in g._labels.items()}
    return PortGraph(labels, ((move(s1), move(s2)) for s1, s2 in g.edges))


def rotate(g: PortGraph, u: Name, config: RotationConfig = DEFAULT_ROTATION) -> PortGraph:
    """The vertex rotation ``r_u``."""
    return apply_rotations(g, {u: 1}, config)


def apply_isomorphism(rename: Mapping[Name, Name], g: PortGraph) -> PortGraph:
    """Rename every vertex of ``g`` through the injective map ``rename``."""
    missing = [v for v in g.vertices() if v not in rename]
    if missing:
        raise PartialRenamingError(f"renaming undefined on {', '.join(map(format_name, missing))}")
    images = [rename[v] for v in g._labels]
    if len(set(images)) != len(images):
        raise PartialRenamingError("renaming is not injective on the vertex set")
    return PortGraph({rename[v]: lab for v, lab in g._labels.items()},
                     (((rename[a], p), (rename[b], q)) for (a, p), (b, q) in g.edges))


def apply_r_star(rename: Mapping[Name, Name], g: PortGraph) -> PortGraph:
    """``R*``: rename the names inside derived vertex names, keeping suffixes."""

    def lookup(a):
        try:
            return rename[a]
        except KeyError:
            raise PartialRenamingError(f"renaming undefined on {format_name(a)}") from None

    table = {v: rename_star(v, lookup) for v in g._labels}
    return apply_isomorphism(table, g)


def epsilon_embedding(g: PortGraph) -> PortGraph:
    """Rename every vertex ``v`` to ``{v.e}``; this is what the identity rule produces."""
    return apply_isomorphism({v: eps(v) for v in g._labels}, g)


def flatten_names(g: PortGraph) -> PortGraph:
    """Replace every name by its canonical string serialization."""
    return apply_isomorphism({v: format_name(v) for v in g._labels}, g)


def induced_subgraph(g: PortGraph, names: Iterable[Name]) -> PortGraph:
    keep = set(names)
    return PortGraph({v: g._labels[v] for v in keep},
                     (e for e in g.edges if e[0][0] in keep and e[1][0] in keep))


def bfs_distances(g: PortGraph, source: Name, limit: Optional[int] = None) -> dict:
    """Graph distances (edge traversals) from ``source``, optionally capped at ``limit``."""
    if source not in g:
        raise UnknownVertexError(source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for _, (w, _) in g.incident(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def disk(g: PortGraph, v: Name, r: int) -> Disk:
    """The closed ball of radius ``r`` around ``v`` with all its internal edges."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    return Disk(induced_subgraph(g, bfs_distances(g, v, r)), v, r)


def components(g: PortGraph) -> list:
    """Connected components as lists of names, in canonical order."""
    seen = set()
    out = []
    for v in g.vertices():
        if v in seen:
            continue
        comp = bfs_distances(g, v)
        seen.update(comp)
        out.append(sort_names(comp))
    return out


# -- canonical forms -------------------------------------------------------

def _bfs_order(g: PortGraph, root: Name):
    index = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for _, (w, _) in g.incident(v):
            if w not in index:
                index[w] = len(order)
                order.append(w)
    return order, index


def _rooted_key(g: PortGraph, order, index):
    labels = tuple(g._labels[v] for v in order)
    edges = []
    for (a, p), (b, q) in g.edges:
        if a in index:
            s1, s2 = (index[a], p), (index[b], q)
            edges.append((s1, s2) if s1 <= s2 else (s2, s1))
    edges.sort()
    return (labels, tuple(edges))


def canonical_form(d: Disk):
    """Canonical key of a disk and the renaming from canonical names to its names.

    Vertices are numbered in breadth-first order from the center, visiting
    ports in the order a, b, c.  Since the center is fixed and ports are
    distinguishable, that numbering is determined by the structure alone,
    so two disks get equal keys iff a center-preserving renaming maps one
    onto the other.  Canonical names are the strings ``"0"``, ``"1"``, ...
    with ``"0"`` the center.
    """
    g = d.graph
    order, index = _bfs_order(g, d.center)
    if len(order) != len(g):
        raise GraphError("disk is not connected through its center")
    key = _rooted_key(g, order, index)
    return key, {str(i): v for i, v in enumerate(order)}


def graph_from_key(key) -> PortGraph:
    """Rebuild the canonically named graph a key describes."""
    labels, edges = key
    return PortGraph({str(i): lab for i, lab in enumerate(labels)},
                     (((str(a), p), (str(b), q)) for (a, p), (b, q) in edges))


def canonical_disk(d: Disk):
    """``(key, renaming, canonical Disk)`` with the canonical disk centered at ``"0"``."""
    key, renaming = canonical_form(d)
    return key, renaming, Disk(graph_from_key(key), "0", d.radius)


def _label_order(labels):
    return tuple((lab is None, lab or "") for lab in labels)


def graph_key(g: PortGraph):
    """Isomorphism-invariant key of a whole (possibly disconnected) graph."""
    comps = []
    for comp in components(g):
        best = None
        for root in comp:
            order, index = _bfs_order(g, root)
            labels, edges = _rooted_key(g, order, index)
            cand = (_label_order(labels), edges, labels)
            if best is None or cand[:2] < best[:2]:
                best = cand
        comps.append(best)
    comps.sort(key=lambda c: (len(c[0]), c[:2]))
    return tuple((c[2], c[1]) for c in comps)


def isomorphic(g: PortGraph, h: PortGraph) -> bool:
    return len(g) == len(h) and len(g.edges) == len(h.edges) and graph_key(g) == graph_key(h)


# -- rotation equivalence ----------------------------------------------------

def rotation_equivalent(g: PortGraph, h: PortGraph, config: RotationConfig = DEFAULT_ROTATION) -> Optional[dict]:
    """A rotation multiset ``m`` with ``apply_rotations(g, m) == h``, or None.

    Within a connected component the exponent of one vertex fixes all the
    others (each edge of ``g`` pins the exponent difference of its ends), so
    trying the three exponents of one seed per component is exhaustive.
    """
    if g._labels.keys() != h._labels.keys() or len(g.edges) != len(h.edges):
        return None
    m = {}
    for comp in components(g):
        found = [t for t0 in range(3) if (t := _propagate(g, h, comp[0], t0, config)) is not None]
        if not found:
            return None
        # prefer the fewest rotated vertices, then the smallest exponents
        m.update(min(found, key=lambda t: (sum(1 for e in t.values() if e), sum(t.values()))))
    m = normalize_multiset(m)
    return m if apply_rotations(g, m, config) == h else None


def _propagate(g, h, seed, t0, config):
    t = {seed: t0}
    stack = [seed]
    while stack:
        x = stack.pop()
        if config.label(g._labels[x], t[x]) != h._labels[x]:
            return None
        for p, (y, q) in g.incident(x):
            image = h.partner(x, config.port(p, t[x]))
            if image is None or image[0] != y:
                return None
            ty = (config.port_cycle.index(image[1]) - config.port_cycle.index(q)) % 3
            if y in t:
                if t[y] != ty:
                    return None
            else:
                t[y] = ty
                stack.append(y)
    return t
