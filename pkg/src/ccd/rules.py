"""Local rules.

A rule maps each radius-``r`` disk to an output graph whose vertex names
are derived from the disk's names (``{v.e}``, ``{v.1}``, ...).  Rules are
stored against canonical disks: the disk is canonicalized, the template
for its key is looked up, and the template's canonical atoms are renamed
back to the disk's names.  Renaming-equivariance therefore holds by
construction.

A template comes from, in order: the explicit table, the rule's
``generator`` (a function of the canonical disk), or the default clause.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from . import names as nm
from .io import graph_from_json, graph_to_json
from .names import Derived, eps
from .portgraph import (DEFAULT_ROTATION, DEFAULT_SIGMA, PORTS, Disk, GraphError, PortGraph,
                        apply_r_star, apply_rotations, canonical_disk, canonical_form, check,
                        graph_from_key, shift, union, validate)


class RuleError(ValueError):
    pass


class NoMatchError(RuleError):
    pass


class NoConjugateError(RuleError):
    """No rotation of an image is consistent with the images collected so far."""

    def __init__(self, disk: Disk, rotation: dict):
        super().__init__(f"no conjugate for rotation {rotation} of disk {disk.graph!r}")
        self.disk = disk
        self.rotation = rotation


@dataclass(eq=False)
class LocalRule:
    name: str
    radius: int
    bound: int
    sigma: tuple = DEFAULT_SIGMA
    table: Dict = field(default_factory=dict)
    default: str = "identity"
    generator: Optional[Callable[[Disk], PortGraph]] = None
    _cache: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.default not in ("identity", "reject"):
            raise RuleError(f"unknown default clause {self.default!r}")
        self.sigma = tuple(self.sigma)

    def template(self, key) -> PortGraph:
        """Output for the canonical disk with this key, in canonical names."""
        if key in self.table:
            return self.table[key]
        try:
            return self._cache[key]
        except KeyError:
            pass
        d = Disk(graph_from_key(key), "0", self.radius)
        if self.generator is not None:
            out = self.generator(d)
        elif self.default == "identity":
            out = identity_template(d)
        else:
            raise NoMatchError(f"rule {self.name!r} has no entry for disk {d.graph!r}")
        self._cache[key] = out
        return out


def evaluate(f: LocalRule, d: Disk) -> PortGraph:
    if d.radius != f.radius:
        raise RuleError(f"rule {f.name!r} has radius {f.radius}, disk has radius {d.radius}")
    key, renaming = canonical_form(d)
    return apply_r_star(renaming, f.template(key))


# -- templates ---------------------------------------------------------------

def identity_template(d: Disk) -> PortGraph:
    """The center, its edges, and the far ends of those edges, all ``{x.e}``-renamed."""
    g, c = d.graph, d.center
    labels = {eps(c): g.label(c)}
    edges = []
    for p, (w, q) in g.incident(c):
        labels[eps(w)] = g.label(w)
        edges.append(((eps(c), p), (eps(w), q)))
    return PortGraph(labels, edges)


def _twisted_identity(d: Disk) -> PortGraph:
    out = identity_template(d)
    far = d.graph.partner(d.center, "a")
    if far is None or far[0] == d.center:
        return out
    w = far[0]
    labels = out.labels
    edges = list(out.edges)
    for p, (x, q) in d.graph.incident(w):
        labels[eps(x)] = d.graph.label(x)
        edges.append(((eps(w), p), (eps(x), q)))
    return PortGraph(labels, edges)


def _majority(d: Disk) -> PortGraph:
    g, c = d.graph, d.center
    out = identity_template(d)
    labels = {v: None for v in out.labels}
    votes = {}
    for w in g.neighbours(c) - {c}:
        votes[g.label(w)] = votes.get(g.label(w), 0) + 1
    new = g.label(c)
    if votes:
        top = max(votes.values())
        winners = [lab for lab, n in votes.items() if n == top]
        if len(winners) == 1:
            new = winners[0]
    labels[eps(c)] = new
    return PortGraph(labels, out.edges)


def _unglue(d: Disk) -> PortGraph:
    return PortGraph({eps(d.center): d.graph.label(d.center)})


def child(v, p: str) -> Derived:
    """The subdivision child of triangle ``v`` that keeps side ``p``."""
    return Derived([(v, PORTS.index(p) + 1)])


def _subdivision(d: Disk) -> PortGraph:
    # Child of side p keeps that side on port a; its corner a is the
    # barycenter.  Child(p):b is glued to child(p+1):c around the barycenter.
    g, c = d.graph, d.center
    labels = {child(c, p): g.label(c) for p in PORTS}
    edges = [((child(c, p), "b"), (child(c, shift(p, 1)), "c")) for p in PORTS]
    for p, (w, q) in g.incident(c):
        labels.setdefault(child(w, q), g.label(w))
        edges.append(((child(c, p), "a"), (child(w, q), "a")))
    return PortGraph(labels, edges)


BUILTINS = {
    "identity": dict(radius=1, bound=1, generator=None),
    "twisted_identity": dict(radius=1, bound=1, generator=_twisted_identity),
    "majority": dict(radius=1, bound=1, sigma=("0", "1"), generator=_majority),
    "unglue": dict(radius=1, bound=1, generator=_unglue),
    "subdivision": dict(radius=1, bound=3, generator=_subdivision),
}


def builtin(name: str) -> LocalRule:
    try:
        params = BUILTINS[name]
    except KeyError:
        raise RuleError(f"unknown built-in rule {name!r}; choose from {', '.join(BUILTINS)}") from None
    return LocalRule(name=name, **params)


# -- axiom checks --------------------------------------------------------------

def name_bound_violations(template: PortGraph, d: Disk, bound: int) -> list:
    """Output names must be non-empty sets of (disk vertex, suffix <= bound) pairs."""
    out = []
    for v in template.vertices():
        if not isinstance(v, Derived):
            out.append(f"output vertex {nm.format_name(v)} is not a derived name")
            continue
        for a, s in v.sorted_pairs():
            if a not in d.graph:
                out.append(f"output vertex {nm.format_name(v)} refers to {nm.format_name(a)} outside the disk")
            if s > bound:
                out.append(f"output vertex {nm.format_name(v)} exceeds name bound {bound}")
    return out


@dataclass
class RuleReport:
    axiom1: list
    axiom2: list
    axiom3: str
    scope: str

    @property
    def ok(self) -> bool:
        return not self.axiom1 and not self.axiom2

    def to_json(self) -> dict:
        return {"ok": self.ok, "axiom1": self.axiom1, "axiom2": self.axiom2,
                "axiom3": self.axiom3, "scope": self.scope}


def validate_local_rule(f: LocalRule, mode="exhaustive", max_vertices: int = 4,
                        samples: int = 200, seed: int = 0, host_size: int = 8) -> RuleReport:
    """Check the three local-rule axioms.

    Name bounds are checked on every table entry and on every template the
    rule produces for a radius-``r`` disk.  Pairwise consistency of images
    is checked on host graphs: all connected graphs up to ``max_vertices``
    vertices (``mode="exhaustive"``) or ``samples`` random graphs of up to
    ``host_size`` vertices (``mode="sampled"``).  Equivariance needs no
    check since templates are keyed by canonical disks.
    """
    import random

    from .dynamics import InconsistentImagesError, step
    from .enumeration import connected_graphs, enumerate_disks, random_graph

    axiom1 = []
    for key, template in f.table.items():
        d = Disk(graph_from_key(key), "0", f.radius)
        axiom1 += [f"table entry {d.graph!r}: {msg}" for msg in name_bound_violations(template, d, f.bound)]
        axiom1 += [f"table entry {d.graph!r}: {msg}" for msg in validate(template)]
    if f.radius <= 1:
        for d in enumerate_disks(f.radius, f.sigma):
            try:
                template = f.template(canonical_form(d)[0])
            except NoMatchError:
                continue
            axiom1 += [f"disk {d.graph!r}: {msg}" for msg in name_bound_violations(template, d, f.bound)]

    if mode == "exhaustive":
        hosts = connected_graphs(max_vertices, f.sigma)
        scope = f"axiom 2 exhaustive over connected hosts with <= {max_vertices} vertices"
    else:
        rng = random.Random(seed)
        hosts = (random_graph(rng.randint(1, host_size), rng, rng.random(), f.sigma) for _ in range(samples))
        scope = f"axiom 2 sampled on {samples} random hosts (seed {seed})"
    axiom2 = []
    for host in hosts:
        try:
            step(f, host)
        except InconsistentImagesError as exc:
            axiom2.append({"host": graph_to_json(host, f.sigma), "centers": list(map(nm.to_json, exc.centers)),
                           "message": str(exc)})
        except NoMatchError:
            pass
    return RuleReport(axiom1, axiom2, "holds by construction (templates keyed by canonical disk)", scope)


# -- symmetrization ------------------------------------------------------------

def _conjugate_into(img: PortGraph, acc: PortGraph, prefer: dict, config=DEFAULT_ROTATION) -> Optional[dict]:
    """Exponents ``e`` such that ``apply_rotations(img, e)`` is consistent with ``acc``."""
    order = sorted(img.vertices(), key=lambda x: (x not in acc, nm.name_key(x)))
    assigned = {}

    def fits(x, e):
        lab = config.label(img.label(x), e)
        if x in acc and lab is not None and acc.label(x) is not None and lab != acc.label(x):
            return False
        for p, (y, q) in img.incident(x):
            if y != x and y not in assigned:
                continue
            s1 = (x, config.port(p, e))
            s2 = (y, config.port(q, e if y == x else assigned[y]))
            if acc.partner(*s1) not in (None, s2) or acc.partner(*s2) not in (None, s1):
                return False
        return True

    def rec(i):
        if i == len(order):
            return True
        x = order[i]
        first = prefer.get(x, 0) % 3
        for e in (first, (first + 1) % 3, (first + 2) % 3):
            if fits(x, e):
                assigned[x] = e
                if rec(i + 1):
                    return True
                del assigned[x]
        return False

    return dict(assigned) if rec(0) else None


def symmetrized_template(f: LocalRule, d: Disk) -> PortGraph:
    """Union over all rotation multisets ``m`` of the disk of ``f(m D)`` rotated back.

    Each image is rotated back by the first exponent assignment (trying the
    mirror of ``m`` first) that keeps it consistent with the union so far.
    """
    g = d.graph
    vertices = g.vertices()
    acc = evaluate(f, d)
    for exps in itertools.product(range(3), repeat=len(vertices)):
        m = {v: t for v, t in zip(vertices, exps) if t}
        if not m:
            continue
        img = evaluate(f, Disk(apply_rotations(g, m), d.center, d.radius))
        prefer = {}
        for x in img.vertices():
            if isinstance(x, Derived) and len(x) == 1:
                (a, _), = x
                prefer[x] = -m.get(a, 0)
        back = _conjugate_into(img, acc, prefer)
        if back is None:
            raise NoConjugateError(d, m)
        acc = union(acc, apply_rotations(img, back))
    return acc


def symmetrize(f: LocalRule) -> LocalRule:
    """A rule that rotates consistently: each disk's output is the union of the
    back-rotated outputs over all rotations of that disk.  Templates are
    computed lazily; :class:`NoConjugateError` surfaces on first use."""
    return LocalRule(name=f"{f.name}~", radius=f.radius, bound=f.bound, sigma=f.sigma,
                     default=f.default, generator=lambda d: symmetrized_template(f, d))


def materialize(f: LocalRule, max_states: Optional[int] = None) -> LocalRule:
    """Copy of ``f`` whose table lists every radius-``r`` disk explicitly."""
    from .enumeration import enumerate_disks

    table = {}
    for d in enumerate_disks(f.radius, f.sigma, max_states=max_states):
        key = canonical_form(d)[0]
        try:
            table[key] = f.template(key)
        except NoMatchError:
            continue
    return LocalRule(name=f.name, radius=f.radius, bound=f.bound, sigma=f.sigma, table=table,
                     default="reject")


# -- JSON ----------------------------------------------------------------------

def rule_to_json(f: LocalRule) -> dict:
    entries = []
    for key in sorted(f.table, key=repr):
        d = graph_from_key(key)
        disk_json = graph_to_json(d, f.sigma)
        disk_json["center"] = "0"
        entries.append({"disk": disk_json, "output": graph_to_json(f.table[key], f.sigma)})
    return {"name": f.name, "radius": f.radius, "bound": f.bound, "sigma": list(f.sigma),
            "default": f.default, "table": entries}


def rule_from_json(obj) -> LocalRule:
    """Load a rule document; disks are canonicalized and name bounds enforced."""
    try:
        radius = int(obj["radius"])
        bound = int(obj["bound"])
        sigma = tuple(obj.get("sigma", DEFAULT_SIGMA))
        default = obj.get("default", "identity")
        table = {}
        for entry in obj.get("table", []):
            center = nm.from_json(entry["disk"]["center"])
            dgraph = graph_from_json(entry["disk"])
            d = Disk(dgraph, center, radius)
            key, renaming, cd = canonical_disk(d)
            inverse = {v: k for k, v in renaming.items()}
            output = graph_from_json(entry["output"], partial_labels=True)
            problems = name_bound_violations(output, d, bound)
            if problems:
                raise RuleError("; ".join(problems))
            table[key] = check(apply_r_star(inverse, output))
    except (KeyError, TypeError) as exc:
        raise RuleError(f"malformed rule document: {exc}") from exc
    except GraphError as exc:
        raise RuleError(str(exc)) from exc
    return LocalRule(name=obj.get("name", "custom"), radius=radius, bound=bound, sigma=sigma,
                     table=table, default=default)


def load_rule(source: str) -> LocalRule:
    """A built-in name, else a path to a rule JSON file."""
    if source in BUILTINS:
        return builtin(source)
    with open(source) as fh:
        return rule_from_json(json.load(fh))
