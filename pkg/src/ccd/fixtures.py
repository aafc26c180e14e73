"""Small named graphs used throughout the docs and tests."""

from .portgraph import PortGraph

G1 = PortGraph(["u"])

# Two triangles glued along all three sides.  With matching ports every
# corner ends up at one point (a torus); with b/c crossed, a sphere.
TORUS2 = PortGraph(["u", "v"], [(("u", "a"), ("v", "a")),
                                (("u", "b"), ("v", "b")),
                                (("u", "c"), ("v", "c"))])
SPHERE2 = PortGraph(["u", "v"], [(("u", "a"), ("v", "a")),
                                 (("u", "b"), ("v", "c")),
                                 (("u", "c"), ("v", "b"))])


def fan(k: int) -> PortGraph:
    """``k`` triangles ``t1..tk`` around a common apex, glued ``t_i:c`` to ``t_{i+1}:a``."""
    names = [f"t{i}" for i in range(1, k + 1)]
    return PortGraph(names, [((names[i], "c"), (names[i + 1], "a")) for i in range(k - 1)])


def loop(k: int) -> PortGraph:
    """A fan closed up by gluing ``t_k:c`` to ``t_1:a``."""
    g = fan(k)
    return PortGraph(g.labels, list(g.edges) + [((f"t{k}", "c"), ("t1", "a"))])


def fixture_corpus() -> dict:
    corpus = {"G1": G1, "TORUS2": TORUS2, "SPHERE2": SPHERE2}
    for k in range(2, 9):
        corpus[f"FAN_{k}"] = fan(k)
    for k in range(2, 9):
        corpus[f"LOOP_{k}"] = loop(k)
    return corpus
