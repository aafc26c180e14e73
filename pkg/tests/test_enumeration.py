import itertools
import random

import pytest

from ccd.enumeration import (RadiusTooLarge, StateSpaceExceeded, brute_force_disk_keys, connected_graphs,
                             enumerate_disks, oriented_connected_graphs, oriented_key, random_graph,
                             random_multiset)
from ccd.paths import is_bounded_star
from ccd.portgraph import (PORTS, PortGraph, apply_isomorphism, apply_rotations, canonical_form, components,
                           graph_key, validate)


def test_radius_zero_disks():
    disks = list(enumerate_disks(0))
    assert len(disks) == 4
    assert sum(1 for d in disks if not d.graph.edges) == 1


def test_radius_zero_labelled():
    assert len(list(enumerate_disks(0, sigma=("0", "1")))) == 8


def test_single_edge_pairings():
    # center with one neighbour: 3 x 3 port choices, no other edges
    two = [d for d in enumerate_disks(1) if len(d.graph) == 2 and len(d.graph.edges) == 1]
    assert len(two) == 9
    # rotating the neighbour leaves only the choice of the center's port
    assert len({d.graph.incident("0")[0][0] for d in two}) == 3


def test_disks_match_brute_force():
    got = {canonical_form(d)[0] for d in enumerate_disks(1) if len(d.graph) <= 3}
    assert got == brute_force_disk_keys(1, 3)


@pytest.mark.slow
def test_disks_match_brute_force_four_vertices():
    assert {canonical_form(d)[0] for d in enumerate_disks(1)} == brute_force_disk_keys(1, 4)


def test_disks_are_canonical_and_distinct():
    seen = set()
    for d in enumerate_disks(1):
        key, renaming = canonical_form(d)
        assert renaming == {v: v for v in d.graph.vertices()}
        assert key not in seen
        seen.add(key)


def test_bounded_star_filter():
    all_disks = list(enumerate_disks(1))
    kept = list(enumerate_disks(1, bounded_star=1))
    assert len(kept) == sum(1 for d in all_disks if is_bounded_star(d.graph, 1)[0])


def test_limits():
    with pytest.raises(StateSpaceExceeded):
        list(enumerate_disks(1, max_states=10))
    with pytest.raises(RadiusTooLarge):
        next(enumerate_disks(3))


def _brute_classes(n, rotations=False):
    """Connected graphs on n vertices up to renaming (and rotation), by trying every wiring."""
    names = [str(i) for i in range(n)]
    slots = [(v, p) for v in names for p in PORTS]
    classes = set()

    def matchings(rest):
        if not rest:
            yield []
            return
        first, rest = rest[0], rest[1:]
        yield from matchings(rest)
        for i, other in enumerate(rest):
            for m in matchings(rest[:i] + rest[i + 1:]):
                yield [(first, other)] + m

    for m in matchings(slots):
        g = PortGraph(names, m)
        if len(components(g)) != 1:
            continue
        forms = []
        for perm in itertools.permutations(names):
            h = apply_isomorphism(dict(zip(names, perm)), g)
            exps = itertools.product(range(3), repeat=n) if rotations else [()]
            for e in exps:
                k = apply_rotations(h, dict(zip(names, e)))
                forms.append(tuple(k.sorted_edges()))
        classes.add(min(forms))
    return len(classes)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_connected_graph_counts(n):
    assert sum(1 for _ in connected_graphs(n, min_vertices=n)) == _brute_classes(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_oriented_graph_counts(n):
    got = [g for g in oriented_connected_graphs(n) if len(g) == n]
    assert len(got) == _brute_classes(n, rotations=True)


def test_connected_graphs_distinct(corpus4):
    keys = [graph_key(g) for g in corpus4]
    assert len(set(keys)) == len(keys)
    assert all(not validate(g) and len(components(g)) == 1 for g in corpus4)


def test_oriented_covers_corpus(corpus4):
    reps = {oriented_key(g) for g in oriented_connected_graphs(4)}
    rng = random.Random(1)
    for g in corpus4:
        assert oriented_key(g) in reps
        assert oriented_key(apply_rotations(g, random_multiset(g, rng))) in reps


def test_random_graph():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randint(1, 10)
        g = random_graph(n, rng, rng.random(), sigma=("0", "1"))
        assert len(g) == n and not validate(g, ("0", "1"))
        assert len(components(g)) == 1
