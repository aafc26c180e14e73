import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from ccd.complex import euler_characteristic, interpret, star_size
from ccd.dynamics import InconsistentImagesError, RunConfig, StepError, commutation_oracle, run, step, write_history
from ccd.fixtures import G1, SPHERE2, TORUS2, fan
from ccd.io import graph_from_json
from ccd.names import eps
from ccd.portgraph import (PortGraph, apply_isomorphism, apply_r_star, apply_rotations, disk, epsilon_embedding, graph_key,
                           isomorphic, union_all)
from ccd.rules import BUILTINS, LocalRule, builtin, evaluate, identity_template

from .strategies import multisets, port_graphs


def test_identity_step_on_fan():
    assert step(builtin("identity"), fan(3)) == epsilon_embedding(fan(3))


def test_unglue_step():
    assert step(builtin("unglue"), SPHERE2) == PortGraph([eps("u"), eps("v")])


def test_subdivision_of_lone_triangle():
    out = step(builtin("subdivision"), G1)
    assert len(out) == 3
    c = interpret(out)
    assert c.counts() == (4, 6, 3) and euler_characteristic(c) == 1


def test_run_examples():
    g, _ = run(RunConfig(builtin("identity"), steps=5), TORUS2)
    assert isomorphic(g, TORUS2)
    g, _ = run(RunConfig(builtin("subdivision"), steps=2), G1)
    c = interpret(g)
    assert c.counts()[2] == 9 and euler_characteristic(c) == 1
    once, _ = run(RunConfig(builtin("unglue"), steps=1), TORUS2)
    twice, _ = run(RunConfig(builtin("unglue"), steps=2), TORUS2)
    assert isomorphic(once, twice)


def test_run_keeps_names_and_history(tmp_path):
    cfg = RunConfig(builtin("identity"), steps=2, canonicalize_names=False, record_history=True)
    g, history = run(cfg, G1)
    assert len(history) == 2 and g == history[-1]
    assert eps(eps("u")) in g
    path = tmp_path / "h.jsonl"
    write_history(path, cfg, history)
    lines = path.read_text().splitlines()
    assert json.loads(lines[0]) == {"rule": "identity", "steps": 2}
    assert len(lines) == 3
    assert isomorphic(graph_from_json(json.loads(lines[2])), G1)
    with pytest.raises(ValueError):
        RunConfig(builtin("identity"), steps=-1)


def test_step_equals_union_of_images():
    f = builtin("subdivision")
    for g in (G1, SPHERE2, TORUS2, fan(4)):
        assert step(f, g) == union_all(evaluate(f, disk(g, v, 1)) for v in g.vertices())


def test_union_order_independent():
    rng = random.Random(3)
    f = builtin("subdivision")
    g = fan(5)
    images = [evaluate(f, disk(g, v, 1)) for v in g.vertices()]
    for _ in range(10):
        rng.shuffle(images)
        assert union_all(images) == step(f, g)


def _relabel_neighbours(d):
    out = identity_template(d)
    return PortGraph({v: ("1" if v != eps(d.center) else lab) for v, lab in out.labels.items()}, out.edges)


def test_inconsistent_images_named():
    f = LocalRule("clash", 1, 1, sigma=("0", "1"), generator=_relabel_neighbours)
    g = PortGraph({"u": "0", "v": "0"}, [(("u", "a"), ("v", "a"))])
    with pytest.raises(InconsistentImagesError) as info:
        step(f, g)
    assert set(info.value.centers) == {"u", "v"}
    with pytest.raises(StepError) as info:
        run(RunConfig(f, steps=1), g)
    assert info.value.index == 0


@pytest.mark.parametrize("name", sorted(BUILTINS))
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_step_equivariant(name, data):
    f = builtin(name)
    g = data.draw(port_graphs(max_vertices=7, sigma=f.sigma))
    perm = data.draw(st.permutations(range(len(g))))
    rename = {v: f"w{i}" for v, i in zip(g.vertices(), perm)}
    assert step(f, apply_isomorphism(rename, g)) == apply_r_star(rename, step(f, g))


def test_oracle_examples():
    g = PortGraph(["u", "v"], [(("u", "a"), ("v", "b"))])
    v = commutation_oracle(builtin("identity"), g, {"u": 1})
    assert v.found and v.conjugate == {eps("u"): 1}
    assert commutation_oracle(builtin("twisted_identity"), g, {"u": 1}).found
    v = commutation_oracle(builtin("unglue"), TORUS2, {"u": 2, "v": 1})
    assert v.found and v.conjugate == {}


def _port_a_label(d):
    out = identity_template(d)
    labels = {v: None for v in out.labels}
    labels[eps(d.center)] = "1" if d.graph.partner(d.center, "a") is not None else "0"
    return PortGraph(labels, out.edges)


def test_oracle_no_conjugate():
    f = LocalRule("port_a", 1, 1, sigma=("0", "1"), generator=_port_a_label)
    g = PortGraph({"u": "0", "w": "0"}, [(("u", "a"), ("w", "a"))])
    v = commutation_oracle(f, g, {"u": 1})
    assert not v.found and v.to_json()["verdict"] == "NoConjugate"
    assert v.witness["rotation"] == [["u", 1]]


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_identity_conjugate_mirrors_rotation(data):
    g = data.draw(port_graphs(max_vertices=8))
    m = data.draw(multisets(g))
    v = commutation_oracle(builtin("identity"), g, m)
    assert v.found
    f = builtin("identity")
    assert apply_rotations(step(f, g), v.conjugate) == step(f, apply_rotations(g, m))


def _stars(g):
    c = interpret(g)
    return sorted(star_size(c, i) for i in range(len(c.points)))


@pytest.mark.parametrize("g", [G1, SPHERE2, TORUS2, fan(4)], ids=["G1", "SPHERE2", "TORUS2", "FAN_4"])
def test_subdivision_invariants(g):
    before = interpret(g)
    out = step(builtin("subdivision"), g)
    after = interpret(out)
    assert after.counts()[2] == 3 * before.counts()[2]
    assert euler_characteristic(after) == euler_characteristic(before)
    assert _stars(out) == sorted([2 * s for s in _stars(g)] + [3] * len(g))
