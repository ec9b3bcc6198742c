import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphjac.errors import NotASubgroup, NotWellDefined
from graphjac.groups import format_group, induced_hom, is_exact, subquotient
from graphjac.linalg import IntMatrix


def z2():
    return subquotient(1, IntMatrix.identity(1), IntMatrix.from_rows([[2]]))


def z6():
    return subquotient(2, IntMatrix.identity(2), IntMatrix.diagonal([2, 3]))


def test_subquotient_examples():
    assert z2().invariants() == (0, (2,))
    assert z6().invariants() == (0, (6,))
    free = subquotient(2, IntMatrix.identity(2), IntMatrix.zeros(2, 0))
    assert free.invariants() == (2, ())


def test_not_a_subgroup():
    with pytest.raises(NotASubgroup):
        subquotient(2, IntMatrix.from_columns([(2, 0)]), IntMatrix.from_columns([(1, 0)]))


def test_project_examples():
    assert z2().project((3,)).torsion_coords == (1,)
    assert z2().project((2,)).is_zero()
    assert z6().project((1, 1)).order() == 6


def test_format_group():
    assert format_group(0, ()) == "0"
    assert format_group(2, (2, 4)) == "Z^2 ⊕ Z/2 ⊕ Z/4"
    assert format_group(1, ()) == "Z"
    assert str(z6()) == "Z/6"


def test_induced_hom_examples():
    z4 = subquotient(1, IntMatrix.identity(1), IntMatrix.from_rows([[4]]))
    ident = induced_hom(z4, z4, IntMatrix.identity(1))
    assert ident.is_isomorphism()
    double = induced_hom(z4, z4, IntMatrix.from_rows([[2]]))
    assert not double.is_injective()
    assert double.kernel().order() == 2
    z3 = subquotient(1, IntMatrix.identity(1), IntMatrix.from_rows([[3]]))
    with pytest.raises(NotWellDefined):
        induced_hom(z2(), z3, IntMatrix.identity(1))


def test_exactness_of_multiplication_sequence():
    z = subquotient(1, IntMatrix.identity(1), IntMatrix.zeros(1, 0))
    z3 = subquotient(1, IntMatrix.identity(1), IntMatrix.from_rows([[3]]))
    times3 = induced_hom(z, z, IntMatrix.from_rows([[3]]))
    quot = induced_hom(z, z3, IntMatrix.identity(1))
    assert is_exact(times3, quot)
    assert times3.is_injective() and quot.is_surjective()


def test_compose_and_inverse():
    g = z6()
    swap = induced_hom(g, g, IntMatrix.from_rows([[5, 0], [0, 1]]))
    assert swap.is_isomorphism()
    assert swap.compose(swap.inverse()).equals(induced_hom(g, g, IntMatrix.identity(2)))


small = st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4)


@given(small, st.permutations(range(3)))
def test_invariants_do_not_depend_on_generators(rels, perm):
    rel = IntMatrix.from_rows(rels).T
    g = subquotient(3, IntMatrix.identity(3), rel)
    shuffled = IntMatrix.from_columns([rel.column(i) for i in reversed(range(rel.cols))], 3)
    mixed_cols = shuffled.columns()
    if len(mixed_cols) > 1:
        mixed_cols[0] = tuple(a + 2 * b for a, b in zip(mixed_cols[0], mixed_cols[1]))
    numerator = IntMatrix.from_columns([tuple(int(perm[i] == j) for i in range(3)) for j in range(3)], 3)
    h = subquotient(3, numerator, IntMatrix.from_columns(mixed_cols, 3))
    assert g.invariants() == h.invariants()


@given(small, st.lists(st.integers(-9, 9), min_size=3, max_size=3), st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_project_is_additive(rels, x, y):
    g = subquotient(3, IntMatrix.identity(3), IntMatrix.from_rows(rels).T)
    s = tuple(a + b for a, b in zip(x, y))
    assert g.project(s) == g.project(x) + g.project(y)
