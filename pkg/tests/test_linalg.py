from hypothesis import given
from hypothesis import strategies as st

from graphjac.linalg import (
    IntMatrix,
    SnfSolver,
    det,
    hnf_rows,
    is_unimodular,
    kernel_basis,
    rank,
    same_lattice,
    snf,
    solve_integer,
)

from oracles import sympy_invariant_factors


def matrices(max_dim=8, lo=-9, hi=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_snf_diag_2_3():
    assert snf(IntMatrix.from_rows([[2, 0], [0, 3]])).diagonal == [1, 6]


def test_snf_zero_matrix():
    r = snf(IntMatrix.zeros(2, 3))
    assert r.diagonal == [0, 0]
    assert r.u == IntMatrix.identity(2) and r.v == IntMatrix.identity(3)


def test_snf_4_6_6_10():
    assert snf(IntMatrix.from_rows([[4, 6], [6, 10]])).diagonal == [2, 2]


@given(matrices())
def test_snf_invariants(rows):
    m = IntMatrix.from_rows(rows)
    r = snf(m)
    assert r.u @ m @ r.v == r.d
    assert abs(det(r.u)) == 1 and abs(det(r.v)) == 1
    assert r.u @ r.u_inv == IntMatrix.identity(m.rows)
    assert r.v @ r.v_inv == IntMatrix.identity(m.cols)
    diag = [x for x in r.diagonal if x]
    assert all(x > 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    for i in range(r.d.rows):
        for j in range(r.d.cols):
            if i != j:
                assert r.d[i, j] == 0


@given(matrices(max_dim=6))
def test_snf_matches_sympy(rows):
    ours = sorted(x for x in snf(IntMatrix.from_rows(rows)).diagonal if x)
    assert ours == sympy_invariant_factors(rows)


def test_kernel_examples():
    k = kernel_basis(IntMatrix.from_rows([[1, 1, 1]]))
    assert k.cols == 2
    assert same_lattice(k, IntMatrix.from_columns([(1, -1, 0), (0, 1, -1)]))
    assert kernel_basis(IntMatrix.identity(3)).cols == 0
    k = kernel_basis(IntMatrix.from_rows([[2, 4]]))
    assert k.columns() in ([(-2, 1)], [(2, -1)])


@given(matrices(max_dim=6))
def test_kernel_is_saturated(rows):
    m = IntMatrix.from_rows(rows)
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.cols == m.cols - rank(m)
    if k.cols:
        # a saturated sublattice has all SNF invariants equal to 1
        assert all(x == 1 for x in snf(k).diagonal)


def test_solve_examples():
    assert solve_integer(IntMatrix.from_rows([[2]]), (4,)) == (2,)
    assert solve_integer(IntMatrix.from_rows([[2]]), (3,)) is None
    assert solve_integer(IntMatrix.from_rows([[1, 1], [0, 2]]), (3, 4)) == (1, 2)


@given(matrices(max_dim=5, lo=-5, hi=5), st.lists(st.integers(-20, 20), min_size=5, max_size=5))
def test_solve_sound_and_complete(rows, rhs):
    m = IntMatrix.from_rows(rows)
    b = tuple(rhs[: m.rows])
    x = SnfSolver(m).solve(b)
    if x is not None:
        assert m @ x == b
    else:
        r = snf(m)
        c = r.u @ b
        diag = r.diagonal
        blocked = any((diag[i] == 0 and c[i] != 0) or (diag[i] and c[i] % diag[i]) for i in range(len(diag)))
        blocked = blocked or any(c[i] for i in range(len(diag), m.rows))
        assert blocked


@given(matrices(max_dim=5))
def test_hnf_is_canonical_under_unimodular_mixing(rows):
    m = IntMatrix.from_rows(rows)
    mixed = IntMatrix.from_rows([list(r) for r in reversed(rows)])
    n = m.cols
    assert hnf_rows(m.to_rows(), n) == hnf_rows(mixed.to_rows() + [[a + b for a, b in zip(m.row(0), m.row(-1 % m.rows))]], n)


def test_det_and_unimodular():
    assert det(IntMatrix.from_rows([[2, 1], [1, 1]])) == 1
    assert is_unimodular(IntMatrix.from_rows([[2, 1], [1, 1]]))
    assert not is_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]]))
