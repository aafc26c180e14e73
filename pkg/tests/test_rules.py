import json

import pytest
from hypothesis import given, settings, strategies as st

from ccd.deciders import embeds_into_disk
from ccd.enumeration import enumerate_disks
from ccd.fixtures import G1, SPHERE2, TORUS2, fan
from ccd.names import Derived, dname, eps
from ccd.portgraph import PortGraph, apply_isomorphism, apply_r_star, disk, union
from ccd.rules import (BUILTINS, LocalRule, NoConjugateError, NoMatchError, RuleError, builtin, evaluate,
                       identity_template, load_rule, materialize, rule_from_json, rule_to_json, symmetrize,
                       validate_local_rule)

from .strategies import port_graphs


def test_identity_on_sphere_disk():
    d = disk(SPHERE2, "u", 1)
    out = evaluate(builtin("identity"), d)
    assert out == PortGraph({eps("u"): "0", eps("v"): "0"},
                            [((eps("u"), "a"), (eps("v"), "a")), ((eps("u"), "b"), (eps("v"), "c")),
                             ((eps("u"), "c"), (eps("v"), "b"))])


def test_identity_on_fan_disk():
    g = fan(4)
    out = evaluate(builtin("identity"), disk(g, "t2", 1))
    assert set(out.vertices()) == {eps("t1"), eps("t2"), eps("t3")}
    assert len(out.edges) == 2


def test_unglue_keeps_only_center():
    out = evaluate(builtin("unglue"), disk(TORUS2, "u", 1))
    assert out == PortGraph({eps("u"): "0"})


def test_majority():
    g = PortGraph({"u": "0", "v": "1", "w": "1"}, [(("u", "a"), ("v", "a")), (("u", "b"), ("w", "a"))])
    out = evaluate(builtin("majority"), disk(g, "u", 1))
    assert out.label(eps("u")) == "1" and out.label(eps("v")) is None
    g = PortGraph({"u": "0", "v": "1"}, [(("u", "a"), ("v", "a"))])
    assert evaluate(builtin("majority"), disk(g, "v", 1)).label(eps("v")) == "0"


def test_subdivision_disk_of_isolated_vertex():
    out = evaluate(builtin("subdivision"), disk(PortGraph(["u"]), "u", 1))
    assert len(out) == 3 and len(out.edges) == 3
    assert set(out.vertices()) == {dname(("u", i)) for i in (1, 2, 3)}


def test_radius_mismatch():
    with pytest.raises(RuleError):
        evaluate(builtin("identity"), disk(G1, "u", 2))


def test_unknown_builtin():
    with pytest.raises(RuleError):
        builtin("nope")


@pytest.mark.parametrize("name", sorted(BUILTINS))
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_builtins_equivariant_under_renaming(name, data):
    f = builtin(name)
    g = data.draw(port_graphs(max_vertices=7, sigma=f.sigma))
    v = data.draw(st.sampled_from(g.vertices()))
    names = data.draw(st.lists(st.text("xyz", min_size=1, max_size=4), min_size=len(g), max_size=len(g),
                               unique=True))
    rename = dict(zip(g.vertices(), names))
    left = evaluate(f, disk(apply_isomorphism(rename, g), rename[v], f.radius))
    right = apply_r_star(rename, evaluate(f, disk(g, v, f.radius)))
    assert left == right


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_satisfy_axioms(name):
    report = validate_local_rule(builtin(name), max_vertices=3)
    assert report.ok, report.to_json()
    sampled = validate_local_rule(builtin(name), mode="sampled", samples=40)
    assert sampled.ok


def _overlong_suffix(d):
    return PortGraph({dname((d.center, 5)): "0"})


def _relabel_neighbours(d):
    out = identity_template(d)
    labels = {v: ("1" if v != eps(d.center) else lab) for v, lab in out.labels.items()}
    return PortGraph(labels, out.edges)


def test_axiom_violations_reported():
    bad = LocalRule("long", 1, 1, generator=_overlong_suffix)
    report = validate_local_rule(bad, max_vertices=2)
    assert report.axiom1 and not report.ok
    clash = LocalRule("clash", 1, 1, sigma=("0", "1"), generator=_relabel_neighbours)
    report = validate_local_rule(clash, max_vertices=2)
    assert report.axiom2 and "labelled" in report.axiom2[0]["message"]


def test_reject_default():
    f = LocalRule("empty", 1, 1, default="reject")
    with pytest.raises(NoMatchError):
        evaluate(f, disk(G1, "u", 1))


def test_symmetrize_identity_is_identity():
    f = symmetrize(builtin("identity"))
    for g in (G1, SPHERE2, TORUS2, fan(4)):
        for v in g.vertices():
            assert evaluate(f, disk(g, v, 1)) == evaluate(builtin("identity"), disk(g, v, 1))


def test_symmetrize_twisted_stays_within_disk():
    # outputs may keep extra disk edges, but always contain the identity output
    f = symmetrize(builtin("twisted_identity"))
    for d in enumerate_disks(1):
        if len(d.graph) > 3:
            continue
        out = evaluate(f, d)
        assert embeds_into_disk(out, d)
        assert union(out, evaluate(builtin("identity"), d)) == out


def _port_a_label(d):
    out = identity_template(d)
    labels = {v: None for v in out.labels}
    labels[eps(d.center)] = "1" if d.graph.partner(d.center, "a") is not None else "0"
    return PortGraph(labels, out.edges)


def test_symmetrize_reports_missing_conjugate():
    f = symmetrize(LocalRule("port_a", 1, 1, sigma=("0", "1"), generator=_port_a_label))
    g = PortGraph({"u": "0", "w": "0"}, [(("u", "a"), ("w", "a"))])
    with pytest.raises(NoConjugateError) as info:
        evaluate(f, disk(g, "u", 1))
    assert info.value.rotation


def test_materialize_and_json_round_trip(tmp_path):
    table = materialize(builtin("subdivision"))
    assert len(table.table) == sum(1 for _ in enumerate_disks(1))
    doc = rule_to_json(table)
    back = rule_from_json(json.loads(json.dumps(doc)))
    assert back.table == table.table and back.default == "reject"
    path = tmp_path / "rule.json"
    path.write_text(json.dumps(doc))
    loaded = load_rule(str(path))
    for g in (G1, SPHERE2, TORUS2):
        for v in g.vertices():
            assert evaluate(loaded, disk(g, v, 1)) == evaluate(builtin("subdivision"), disk(g, v, 1))


def test_json_rule_with_renamed_disk():
    # the stored disk uses arbitrary names; lookups canonicalize it
    doc = {"name": "glue", "radius": 1, "bound": 1, "default": "identity", "table": [{
        "disk": {"vertices": [{"name": "p", "label": "0"}], "edges": [], "center": "p"},
        "output": {"vertices": [{"name": [["p", "e"]], "label": "0"}],
                   "edges": [[[[["p", "e"]], "a"], [[["p", "e"]], "b"]]]},
    }]}
    f = rule_from_json(doc)
    out = evaluate(f, disk(PortGraph(["z"]), "z", 1))
    assert out.partner(eps("z"), "a") == (eps("z"), "b")


def test_json_rule_name_bound_enforced():
    doc = {"radius": 1, "bound": 1, "table": [{
        "disk": {"vertices": [{"name": "p", "label": "0"}], "edges": [], "center": "p"},
        "output": {"vertices": [{"name": [["p", "2"]], "label": "0"}], "edges": []},
    }]}
    with pytest.raises(RuleError):
        rule_from_json(doc)
    with pytest.raises(RuleError):
        rule_from_json({"bound": 1})
