"""Class groups, the Jacobian and the Picard group of a connected graph."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .complexes import GraphComplex
from .errors import NonZeroDegree, NotConnected, NotHarmonic, NotPositiveDefinite, TheoremViolation
from .graph import Graph
from .groups import (
    FgAbGroup,
    GroupElement,
    GroupHom,
    hom_from_images,
    induced_hom,
    subquotient,
)
from .linalg import IntMatrix, SnfSolver, lattice_basis, leading_minors, rational_inverse


def degree_zero_basis(n: int) -> IntMatrix:
    """Columns ``e_v - e_{v0}`` for ``v ≠ v0``, with ``v0`` the first vertex."""
    return IntMatrix.from_columns(
        [tuple((1 if k == i else 0) - (1 if k == 0 else 0) for k in range(n)) for i in range(1, n)], n
    )


def require_connected(g: Graph):
    if not g.is_connected():
        raise NotConnected(f"graph has {g.n_components()} components")


class JacobianContext:
    """Everything about a connected graph that does not involve a modulus."""

    def __init__(self, graph: Graph):
        require_connected(graph)
        self.graph = graph
        self.complex = GraphComplex(graph)
        c = self.complex
        self.W = c.harmonic_basis
        self.K = c.cycle_basis
        nv, ne, k = graph.n_vertices, graph.n_edges, self.W.cols
        self.rank = k
        z0 = degree_zero_basis(nv)
        self.cl = subquotient(nv, IntMatrix.identity(nv), c.laplacian0, "Cl")
        self.cl0 = subquotient(nv, z0, c.laplacian0, "Cl0")
        self.jac = subquotient(k, IntMatrix.identity(k), self.W.T @ self.K, "J")
        self.pic = subquotient(ne, IntMatrix.identity(ne), IntMatrix.hstack(c.d, self.W), "P")
        im_dadj = lattice_basis(c.d_adj) if ne else IntMatrix.zeros(nv, 0)
        self.clhat = subquotient(nv, IntMatrix.identity(nv), c.box0, "Clhat")
        self.clhat0 = subquotient(nv, im_dadj, c.box0, "Clhat0")
        self._path_solver = SnfSolver(c.boundary)
        self._forms_solver = SnfSolver(IntMatrix.hstack(self.W, c.d))
        self._dual_solver = SnfSolver(self.W.T)

    # -- Abel–Jacobi

    def path_to(self, divisor: Sequence[int]) -> tuple:
        """A 1-chain ``γ`` with ``∂γ = D``."""
        divisor = tuple(divisor)
        if sum(divisor) != 0:
            raise NonZeroDegree(f"divisor {list(divisor)} has degree {sum(divisor)}")
        gamma = self._path_solver.solve(divisor)
        assert gamma is not None
        return gamma

    @cached_property
    def path_matrix(self) -> IntMatrix:
        """Columns ``γ_v`` with ``∂γ_v = v - v0`` (and ``γ_{v0} = 0``)."""
        nv, ne = self.graph.n_vertices, self.graph.n_edges
        cols = [(0,) * ne] + [self.path_to(col) for col in degree_zero_basis(nv).columns()]
        return IntMatrix.from_columns(cols, ne)

    @cached_property
    def abel_jacobi_matrix(self) -> IntMatrix:
        """Ambient matrix Z^V → Z^k: ``v ↦ Wᵀγ_v``."""
        return self.W.T @ self.path_matrix

    def solve_dual(self, functional: Sequence[int]) -> tuple:
        """A 1-cochain ``ω`` with ``Wᵀω = λ`` (exists since Ha¹ is saturated)."""
        omega = self._dual_solver.solve(tuple(functional))
        assert omega is not None
        return omega

    def decompose_form(self, omega: Sequence[int]):
        """Write ``ω = W a + d f``; returns ``(a, f)`` or ``None``."""
        sol = self._forms_solver.solve(tuple(omega))
        if sol is None:
            return None
        return sol[: self.rank], sol[self.rank:]

    def divisor(self, mapping: Mapping[str, int]) -> tuple:
        vec = [0] * self.graph.n_vertices
        for v, c in mapping.items():
            vec[self.graph.vertex_index[v]] += c
        return tuple(vec)


def jacobian_group(g: Graph) -> FgAbGroup:
    return JacobianContext(g).jac


def abel_jacobi(ctx: JacobianContext, divisor: Sequence[int]) -> GroupElement:
    gamma = ctx.path_to(divisor)
    return ctx.jac.project(ctx.W.T @ gamma)


def abel_jacobi_hom(ctx: JacobianContext) -> GroupHom:
    return induced_hom(ctx.cl0, ctx.jac, ctx.abel_jacobi_matrix, "AJ")


def verify_abel(ctx: JacobianContext) -> GroupHom:
    """Build AJ: Cl⁰ → J and confirm it is an isomorphism."""
    aj = abel_jacobi_hom(ctx)
    if not aj.is_isomorphism():
        raise TheoremViolation("Abel–Jacobi map is not an isomorphism", witness={
            "kernel": str(aj.kernel()), "surjective": aj.is_surjective()})
    return aj


def picard_maps(ctx: JacobianContext):
    """Return ``(chi, zeta, theta_tilde)``.

    ``chi`` is induced by d♯, ``zeta`` sends the dual basis functional
    ``λ`` to the class of a cochain ``ω`` with ``Wᵀω = λ``, and
    ``theta_tilde`` is the matrix ``Wᵀ``.
    """
    chi = induced_hom(ctx.pic, ctx.clhat0, ctx.complex.d_adj, "chi")
    cols = [ctx.solve_dual(tuple(int(i == j) for i in range(ctx.rank))) for j in range(ctx.rank)]
    zeta = induced_hom(ctx.jac, ctx.pic, IntMatrix.from_columns(cols, ctx.graph.n_edges), "zeta")
    theta_tilde = ctx.W.T
    theta = induced_hom(ctx.pic, ctx.jac, theta_tilde, "theta")
    if not zeta.compose(theta).equals(identity(ctx.pic)):
        raise TheoremViolation("zeta ∘ theta is not the identity on P")
    if not theta.compose(zeta).equals(identity(ctx.jac)):
        raise TheoremViolation("theta ∘ zeta is not the identity on J")
    if not chi.is_isomorphism():
        raise TheoremViolation("chi is not an isomorphism")
    return chi, zeta, theta_tilde


def identity(g: FgAbGroup) -> GroupHom:
    return induced_hom(g, g, IntMatrix.identity(g.ambient_rank))


def verify_diagram(ctx: JacobianContext) -> dict:
    """The square Cl⁰ → J → P → Ĉl⁰ against the inclusion Cl⁰ → Ĉl⁰."""
    aj = verify_abel(ctx)
    chi, zeta, _ = picard_maps(ctx)
    iota = induced_hom(ctx.cl0, ctx.clhat0, IntMatrix.identity(ctx.graph.n_vertices), "iota0")
    left = chi.inverse().compose(iota)
    right = zeta.compose(aj)
    if not left.equals(right):
        raise TheoremViolation("chi^-1 ∘ iota0 differs from zeta ∘ AJ", witness=left.difference_witness(right))
    if not chi.compose(zeta).compose(aj).equals(iota):
        raise TheoremViolation("chi ∘ zeta ∘ AJ differs from iota0")
    return {"aj": aj, "chi": chi, "zeta": zeta, "iota": iota}


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def duality_pairing(ctx: JacobianContext, j: GroupElement, p: GroupElement) -> Fraction:
    """The pairing J × P → Q/Z, as a fraction in ``[0, 1)``.

    With ``n`` the order of ``p`` and ``n ω = W a + d f``, the value is
    ``λ(a) / n`` for any representative ``λ`` of ``j``.
    """
    lam = ctx.jac.representative(j)
    omega = ctx.pic.representative(p)
    n = p.order()
    a, _ = ctx.decompose_form(tuple(n * x for x in omega))
    return _mod1(Fraction(sum(x * y for x, y in zip(lam, a)), n))


def pairing_is_perfect(ctx: JacobianContext) -> bool:
    """Both induced maps J → Hom(P, Q/Z) and P → Hom(J, Q/Z) are isomorphisms."""
    jg, pg = ctx.jac.generators(), ctx.pic.generators()
    table = [[duality_pairing(ctx, a, b) for b in pg] for a in jg]
    return _dual_map_is_iso(ctx.jac, ctx.pic, table) and _dual_map_is_iso(
        ctx.pic, ctx.jac, [list(col) for col in zip(*table)]
    )


def _dual_map_is_iso(left: FgAbGroup, right: FgAbGroup, table) -> bool:
    """Is ``left → Hom(right, Q/Z)`` given by the table on normal generators an iso?"""
    if left.free_rank or right.free_rank:
        return False
    orders = list(right.invariant_factors)
    dual = subquotient(len(orders), IntMatrix.identity(len(orders)), IntMatrix.diagonal(orders))
    # the table rows are indexed by normal generators of ``left``; translate
    # them into images of its numerator basis
    gens = left.generators()
    images_on_gens = [[int(table[i][k] * orders[k]) for k in range(len(orders))] for i in range(len(gens))]
    cols = []
    for col in range(left.generator_count):
        x = left.from_coords(tuple(int(r == col) for r in range(left.generator_count)))
        vec = [0] * len(orders)
        for i, t in enumerate(x.torsion_coords):
            for k in range(len(orders)):
                vec[k] += t * images_on_gens[i][k]
        cols.append(tuple(vec))
    hom = hom_from_images(left, dual, IntMatrix.from_columns(cols, len(orders)))
    return hom.is_isomorphism()


def discriminant_group(lattice_basis_matrix: IntMatrix, gram: IntMatrix = None):
    """``L#/L`` with its Q/Z-valued pairing table on normal-form generators.

    ``L`` is spanned by the columns of ``lattice_basis_matrix`` and ``gram``
    is its Gram matrix (defaults to the standard inner product).  The group
    is presented on dual-basis coordinates as ``Z^k / gram Z^k``.
    """
    if gram is None:
        gram = lattice_basis_matrix.T @ lattice_basis_matrix
    k = gram.rows
    if gram.cols != k or gram != gram.T:
        raise NotPositiveDefinite("gram matrix is not symmetric")
    if lattice_basis_matrix is not None and lattice_basis_matrix.cols != k:
        raise ValueError("gram size does not match the lattice rank")
    if any(m <= 0 for m in leading_minors(gram)):
        raise NotPositiveDefinite("a leading principal minor is not positive")
    group = subquotient(k, IntMatrix.identity(k), gram, "L#/L")
    inv = rational_inverse(gram) if k else []
    gens = group.generators()
    reps = [group.representative(x) for x in gens]
    table = [[_mod1(sum(Fraction(a) * inv[i][j] * b for i, a in enumerate(x) for j, b in enumerate(y))) for y in reps] for x in reps]
    return group, table


def harmonic_discriminant_iso(ctx: JacobianContext) -> GroupHom:
    """Identity on dual coordinates, Ha¹#/Ha¹ → J, checked to be an isomorphism."""
    group, _ = discriminant_group(ctx.W)
    hom = induced_hom(group, ctx.jac, IntMatrix.identity(ctx.rank))
    if not hom.is_isomorphism():
        raise TheoremViolation("discriminant group of Ha1 is not isomorphic to J")
    return hom


def universal_factorization(ctx: JacobianContext, h) -> GroupHom:
    """The hom Cl → A sending each vertex to ``h(v)``.

    ``h`` is a sequence (vertex order) or mapping of elements of one group.

    Raises:
        NotHarmonic: ``h ∘ Δ₀`` is nonzero at some vertex.
    """
    verts = ctx.graph.vertices
    values = [h[v] for v in verts] if isinstance(h, Mapping) else list(h)
    target = values[0].parent
    lap = ctx.complex.laplacian0
    for j, v in enumerate(verts):
        acc = target.zero()
        for i in range(len(verts)):
            if lap[i, j]:
                acc = acc + values[i] * lap[i, j]
        if not acc.is_zero():
            raise NotHarmonic(f"map is not harmonic at {v!r}", vertex=v)
    reps = IntMatrix.from_columns([target.representative(x) for x in values], target.ambient_rank)
    return hom_from_images(ctx.cl, target, reps)
