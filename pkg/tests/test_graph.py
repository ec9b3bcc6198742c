import pytest

from graphjac.errors import DanglingEndpoint, DuplicateId, EmptyVertexSet, UnknownEdge
from graphjac.graph import (
    Modulus,
    build_graph,
    complete_graph,
    cycle_graph,
    extend_with_modulus,
    triangle_w1_w2_v,
    graph_from_dict,
    path_graph,
    reverse_edges,
    spanning_forest,
)
from graphjac.instances import random_graph


def test_loop_graph_is_valid():
    g = build_graph(["u"], [("l", "u", "u")])
    assert g.edges[0].is_loop and g.is_connected()


def test_build_errors():
    with pytest.raises(DanglingEndpoint):
        build_graph(["a"], [("e", "a", "b")])
    with pytest.raises(DuplicateId):
        build_graph(["a", "a"], [])
    with pytest.raises(DuplicateId):
        build_graph(["a"], [("e", "a", "a"), ("e", "a", "a")])
    with pytest.raises(EmptyVertexSet):
        build_graph([], [])


def test_extend_triangle_at_two_points():
    g = triangle_w1_w2_v()
    ext = extend_with_modulus(g, Modulus(g, ["w1", "w2"]))
    assert ext.graph.n_vertices == 4 and ext.graph.n_edges == 5
    e1, e2 = (ext.graph.edge(x) for x in ext.modulus_edges)
    assert (e1.o, e1.t) == ("⋆", "w1") and (e2.o, e2.t) == ("⋆", "w2")
    assert ext.forget() == g


def test_extend_repeated_and_loop():
    g = cycle_graph(3)
    ext = extend_with_modulus(g, Modulus(g, ["v1", "v1"]))
    new = [ext.graph.edge(x) for x in ext.modulus_edges]
    assert all((e.o, e.t) == ("⋆", "v1") for e in new)
    loop = build_graph(["u"], [("l", "u", "u")])
    ext = extend_with_modulus(loop, Modulus(loop, ["u"]))
    assert (ext.graph.n_vertices, ext.graph.n_edges) == (2, 2)


def test_star_collision():
    g = build_graph(["⋆"], [])
    with pytest.raises(DuplicateId):
        extend_with_modulus(g, Modulus(g, ["⋆"]))


def test_spanning_forest_examples():
    kept, labels = spanning_forest(triangle_w1_w2_v())
    assert kept == ["g", "h"]
    kept, _ = spanning_forest(path_graph(4))
    assert kept == ["e0", "e1", "e2"]
    two = build_graph(["a", "b", "c", "d"], [("x", "a", "b"), ("y", "c", "d")])
    kept, labels = spanning_forest(two)
    assert kept == ["x", "y"] and len(set(labels)) == 2


def test_spanning_forest_random(rng):
    for _ in range(100):
        g = random_graph(rng, max_v=6)
        kept, labels = spanning_forest(g)
        assert len(kept) == g.n_vertices - g.n_components()
        sub = build_graph(g.vertices, [g.edge(e) for e in kept])
        assert sub.n_components() == g.n_components()


def test_reverse_edges():
    g = cycle_graph(3)
    assert reverse_edges(g, []) == g
    r = reverse_edges(g, ["e0"])
    assert (r.edge("e0").o, r.edge("e0").t) == ("v1", "v0")
    with pytest.raises(UnknownEdge):
        reverse_edges(g, ["nope"])


def test_extended_graph_connected(rng):
    for _ in range(50):
        g = random_graph(rng)
        m = Modulus(g, [rng.choice(g.vertices)])
        assert extend_with_modulus(g, m).graph.is_connected()


def test_json_roundtrip():
    g = complete_graph(3)
    data = dict(g.to_dict(), modulus=["v0", "v0"])
    h, m = graph_from_dict(data)
    assert h == g and list(m.points) == ["v0", "v0"]
