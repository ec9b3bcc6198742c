import pytest

from graphjac.errors import NotHarmonicAt, PreconditionViolated
from graphjac.graph import Modulus, build_graph, cycle_graph, path_graph
from graphjac.instances import random_cover_instance
from graphjac.linalg import IntMatrix
from graphjac.morphisms import (
    GraphMorphism,
    collapse_b2_k2,
    compose,
    cover_c4_c2,
    cyclic_cover,
    functoriality_checks,
    harmonic_by_stalks,
    harmonic_multiplicities,
    identity_morphism,
    modulus_functoriality,
    pullback_clhat,
    pullback_harmonic,
    pushforward_cl,
)


def all_pass(report):
    return all(ok for ok, _ in report.values())


def test_multiplicity_examples():
    assert set(harmonic_multiplicities(identity_morphism(cycle_graph(3))).values()) == {1}
    assert set(harmonic_multiplicities(cover_c4_c2()).values()) == {1}
    assert harmonic_multiplicities(collapse_b2_k2()) == {"u": 2, "v": 2}


def test_not_harmonic():
    # fold a path a-b-c onto a single edge: b sees two fibres over one half-edge
    p = build_graph(["a", "b", "c"], [("x", "a", "b"), ("y", "c", "b")])
    tgt = build_graph(["s", "t", "r"], [("f", "s", "t"), ("g", "r", "t")])
    f = GraphMorphism(p, tgt, {"a": "s", "b": "t", "c": "s"}, {"x": "f", "y": "f"})
    with pytest.raises(NotHarmonicAt) as exc:
        harmonic_multiplicities(f)
    assert exc.value.vertex == "b"
    assert not harmonic_by_stalks(f)


def test_bad_morphism_rejected():
    with pytest.raises(ValueError):
        GraphMorphism(path_graph(2), path_graph(2), {"v0": "v1", "v1": "v0"}, {"e0": "e0"})


def test_pushforward_examples():
    f = cover_c4_c2()
    push = pushforward_cl(f)
    assert push.source.invariants() == (0, (4,)) and push.target.invariants() == (0, (2,))
    assert push.is_surjective()
    assert pushforward_cl(identity_morphism(cycle_graph(3))).is_isomorphism()
    assert pushforward_cl(collapse_b2_k2()).target.is_trivial()


def test_pullback_clhat_degree():
    f = cover_c4_c2()
    pull = pullback_clhat(f)
    assert pull.source.invariants() == (1, (2,)) and pull.target.invariants() == (1, (4,))
    # on Clhat / Clhat0 = Z the pullback multiplies degree by 2
    u = pull.source.project((1, 0))
    total = sum(pull.target.representative(pull(u)))
    assert total == 2
    assert pullback_clhat(identity_morphism(cycle_graph(3))).is_isomorphism()
    pullback_clhat(collapse_b2_k2())


def test_pullback_harmonic_examples():
    f = cover_c4_c2()
    T = pullback_harmonic(f)
    assert abs(T[0, 0]) == 1
    assert f.edge_matrix.T @ (1, 1) == (1, 1, 1, 1)
    assert pullback_harmonic(identity_morphism(cycle_graph(3))) == IntMatrix.identity(1)
    assert pullback_harmonic(collapse_b2_k2()).cols == 0


def test_fixture_checks():
    for f in (cover_c4_c2(), collapse_b2_k2(), identity_morphism(cycle_graph(4))):
        assert all_pass(functoriality_checks(f))


def test_tower_multiplicities():
    outer, inner = cyclic_cover(2, 2), cyclic_cover(4, 2)
    both = compose(outer, inner)
    mo, mi, mb = outer.multiplicities, inner.multiplicities, both.multiplicities
    for v in inner.source.vertices:
        assert mb[v] == mo[inner(v)] * mi[v]
    assert all_pass(functoriality_checks(both))
    b = compose(collapse_b2_k2(), identity_morphism(collapse_b2_k2().source))
    assert b.multiplicities == {"u": 2, "v": 2}


def test_modulus_fixtures():
    f = cover_c4_c2()
    m, mt = Modulus(f.source, ["v0", "v2"]), Modulus(f.target, ["u"])
    assert all_pass(modulus_functoriality(f, m, mt, "pushforward"))
    assert all_pass(modulus_functoriality(f, m, mt, "pullback"))
    g = cycle_graph(3)
    ident = identity_morphism(g)
    m = Modulus(g, ["v0", "v2"])
    assert all_pass(modulus_functoriality(ident, m, m, "pushforward"))
    assert all_pass(modulus_functoriality(ident, m, m, "pullback"))
    f = collapse_b2_k2()
    for d in ("pushforward", "pullback"):
        assert all_pass(modulus_functoriality(f, Modulus(f.source, ["v"]), Modulus(f.target, ["v"]), d))


def test_modulus_preconditions():
    f = cover_c4_c2()
    with pytest.raises(PreconditionViolated):
        modulus_functoriality(f, Modulus(f.source, ["v0"]), Modulus(f.target, ["u"]), "pushforward")
    with pytest.raises(PreconditionViolated):
        modulus_functoriality(f, Modulus(f.source, ["v0", "v1"]), Modulus(f.target, ["u"]), "pullback")
    with pytest.raises(PreconditionViolated):
        modulus_functoriality(f, Modulus(f.source, ["v0", "v0"]), Modulus(f.target, ["u"]), "pullback")
    # pullback only needs S inside the preimage
    assert all_pass(modulus_functoriality(f, Modulus(f.source, ["v0"]), Modulus(f.target, ["u"]), "pullback"))


def test_random_covers():
    for k in range(10):
        f, m, mt = random_cover_instance(7, k)
        assert harmonic_by_stalks(f)
        assert all_pass(functoriality_checks(f))
        assert all_pass(modulus_functoriality(f, m, mt, "pushforward"))
        assert all_pass(modulus_functoriality(f, m, mt, "pullback"))
