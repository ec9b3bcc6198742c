"""Brute-force references used only by the tests."""

from itertools import combinations


def spanning_tree_count(vertices, edges):
    """Count spanning trees by trying every (|V|-1)-subset of edges."""
    n = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    count = 0
    for subset in combinations(range(len(edges)), n - 1):
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        ok = True
        for j in subset:
            _, o, t = edges[j]
            a, b = find(index[o]), find(index[t])
            if a == b:
                ok = False
                break
            parent[a] = b
        count += ok
    return count


def sympy_invariant_factors(rows):
    """Nonzero SNF diagonal of an integer matrix, via sympy."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if not rows or not rows[0]:
        return []
    d = smith_normal_form(Matrix(rows), domain=ZZ)
    out = [abs(int(d[i, i])) for i in range(min(d.shape))]
    return sorted(x for x in out if x)
