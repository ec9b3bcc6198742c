import pytest

from graphjac.errors import IsolatedVertex
from graphjac.graph import Modulus, banana_graph, build_graph, cycle_graph, triangle_w1_w2_v, path_graph
from graphjac.instances import random_graph, random_modulus
from graphjac.linalg import IntMatrix
from graphjac.sheaves import (
    CellularSheaf,
    StandardSheaves,
    build_standard_sheaves,
    cech_cohomology,
    picard_geometric,
    rigidified_picard,
    sheaf_checks,
    verify_sign_law,
    verify_sign_law_m,
)

LOOP = build_graph(["u"], [("l", "u", "u")])


def constant(g):
    one = IntMatrix.identity(1)
    return CellularSheaf(g, [1] * g.n_vertices, [1] * g.n_edges, [one] * g.n_edges, [one] * g.n_edges)


def test_cech_examples():
    h0, h1 = cech_cohomology(constant(cycle_graph(3)))
    assert h0.invariants() == (1, ()) and h1.invariants() == (1, ())
    h0, h1 = cech_cohomology(constant(path_graph(4)))
    assert h0.invariants() == (1, ()) and h1.is_trivial()
    g = path_graph(2)
    sky = CellularSheaf(g, [1, 0], [0], [IntMatrix.zeros(0, 1)], [IntMatrix.zeros(0, 0)])
    h0, h1 = cech_cohomology(sky)
    assert h0.invariants() == (1, ()) and h1.is_trivial()


def test_isolated_vertex_rejected():
    with pytest.raises(IsolatedVertex):
        build_standard_sheaves(build_graph(["a", "b"], [("e", "a", "a")]))


def test_standard_sheaf_identities():
    for g in (cycle_graph(3), triangle_w1_w2_v(), banana_graph(3), LOOP, path_graph(3)):
        r = sheaf_checks(g)
        assert all(ok for ok, _ in r.values()), r


def test_h0_omega_rank_on_c3():
    s = StandardSheaves(cycle_graph(3))
    h0, h1 = cech_cohomology(s.omega)
    assert h0.invariants() == (1, ()) and h1.invariants() == (1, ())


def test_picard_examples():
    for g, pic, pic0 in ((cycle_graph(3), (1, (3,)), (0, (3,))), (path_graph(3), (1, ()), (0, ())), (banana_graph(2), (1, (2,)), (0, (2,)))):
        d = picard_geometric(g)
        assert d.pic.invariants() == pic and d.pic0.invariants() == pic0
        assert d.delta_bar.is_isomorphism()


def test_sign_law_examples():
    for g in (cycle_graph(3), path_graph(2), LOOP):
        r = verify_sign_law(g)
        assert all(ok for ok, _ in r.values())


def test_rigidified_examples():
    g = triangle_w1_w2_v()
    d = rigidified_picard(g, Modulus(g, ["w1", "w2"]))
    assert d.pic.invariants() == (2, ()) and d.pic0.invariants() == (1, ())
    c = cycle_graph(3)
    d = rigidified_picard(c, Modulus(c, ["v0"]))
    assert d.pic0.invariants() == (0, (3,))
    d = rigidified_picard(c, Modulus(c, ["v0", "v0"]))
    assert any("pushout" in k for k in d.extras["report"])
    r = verify_sign_law_m(g, Modulus(g, ["w1", "w2"]))
    assert len(r) == 5 and all(ok for ok, _ in r.values())
    p = path_graph(3)
    assert all(ok for ok, _ in verify_sign_law_m(p, Modulus(p, ["v0"])).values())


def test_orientation_reversal_keeps_cohomology(rng):
    for _ in range(20):
        g = random_graph(rng, max_v=5)
        if g.isolated_vertices():
            continue
        s = StandardSheaves(g)
        subset = [e.id for e in g.edges if rng.random() < 0.5]
        for sheaf in (s.harm, s.pl, s.omega):
            a = cech_cohomology(sheaf)
            b = cech_cohomology(sheaf.reversed(subset))
            assert [x.invariants() for x in a] == [x.invariants() for x in b]


def test_random_sheaf_suites(rng):
    for _ in range(20):
        g = random_graph(rng, max_v=5)
        m = random_modulus(rng, g)
        verify_sign_law(g)
        rigidified_picard(g, m)
        verify_sign_law_m(g, m)
