"""Ray class groups, generalized Jacobians and Picard groups with modulus."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .complexes import GraphComplex
from .errors import NonZeroDegree, NotHarmonic, TheoremViolation
from .graph import Graph, Modulus, extend_with_modulus
from .groups import (
    FgAbGroup,
    GroupElement,
    GroupHom,
    free_group,
    hom_from_images,
    induced_hom,
    is_exact,
    subquotient,
)
from .jacobian import JacobianContext, abel_jacobi, degree_zero_basis, duality_pairing, verify_abel
from .linalg import IntMatrix, SnfSolver, lattice_basis


class ModulusContext:
    """Groups and maps attached to a connected graph with a modulus.

    Ambient coordinates: divisor-side groups live in ``Z^V ⊕ Z^I``, the
    Picard group ``P_m`` in ``Z^E ⊕ Z^I`` (the 1-cochains of the extended
    graph) and ``J_m`` in dual coordinates of the harmonic basis ``Wm``.
    """

    def __init__(self, graph: Graph, modulus: Modulus, base: JacobianContext = None):
        self.base = base if base is not None else JacobianContext(graph)
        self.graph = graph
        self.modulus = modulus
        self.extended = extend_with_modulus(graph, modulus)
        self.extended_complex = GraphComplex(self.extended.graph)
        c = self.base.complex
        nv, ne, ni = graph.n_vertices, graph.n_edges, modulus.size
        self.nv, self.ne, self.ni = nv, ne, ni
        self.rho = modulus.incidence()
        self.Wm = self.extended_complex.harmonic_basis
        self.rank_m = self.Wm.cols

        div0 = IntMatrix.block_diagonal(degree_zero_basis(nv), IntMatrix.identity(ni))
        prin = IntMatrix.vstack(c.laplacian0, self.rho.T)
        self.cl0m = subquotient(nv + ni, div0, prin, "Cl0_m")
        self.clm = subquotient(nv + ni, IntMatrix.identity(nv + ni), prin, "Cl_m")

        self.jK = IntMatrix.vstack(self.base.K, IntMatrix.zeros(ni, self.base.K.cols))
        self.jm = subquotient(self.rank_m, IntMatrix.identity(self.rank_m), self.Wm.T @ self.jK, "J_m")

        self.jW = IntMatrix.vstack(self.base.W, IntMatrix.zeros(ni, self.base.W.cols))
        self.dm = self.extended_complex.d
        self.pm = subquotient(ne + ni, IntMatrix.identity(ne + ni), IntMatrix.hstack(self.jW, self.dm), "P_m")

        im_dadj = lattice_basis(c.d_adj) if ne else IntMatrix.zeros(nv, 0)
        prin_hat = IntMatrix.vstack(c.box0, self.rho.T)
        self.clhat0m = subquotient(nv + ni, IntMatrix.block_diagonal(im_dadj, IntMatrix.identity(ni)), prin_hat, "Clhat0_m")
        self.clhatm = subquotient(nv + ni, IntMatrix.identity(nv + ni), prin_hat, "Clhat_m")
        self._dual_solver = SnfSolver(self.Wm.T)

    # -- Abel–Jacobi with modulus

    @cached_property
    def epsilon(self) -> IntMatrix:
        """Columns ``ε_i``: the rows of ``Wm`` at the modulus edges."""
        return self.Wm.select_rows(range(self.ne, self.ne + self.ni)).T

    @cached_property
    def abel_jacobi_matrix(self) -> IntMatrix:
        paths = self.base.path_matrix
        lifted = self.Wm.T @ IntMatrix.vstack(paths, IntMatrix.zeros(self.ni, paths.cols))
        return IntMatrix.hstack(lifted, self.epsilon)

    def solve_dual(self, functional: Sequence[int]) -> tuple:
        omega = self._dual_solver.solve(tuple(functional))
        assert omega is not None
        return omega

    def vertex_part(self) -> IntMatrix:
        """Ambient projection ``Z^V ⊕ Z^I → Z^V``."""
        return IntMatrix.hstack(IntMatrix.identity(self.nv), IntMatrix.zeros(self.nv, self.ni))

    def index_sum_map(self) -> IntMatrix:
        """``σ``: ``Z[S] → Z[I]`` sending each support point to the sum of its indices."""
        support = self.modulus.support
        return IntMatrix.from_columns(
            [tuple(int(w == s) for w in self.modulus.points) for s in support], self.ni
        )


def ray_class_group0(g: Graph, m: Modulus) -> FgAbGroup:
    return ModulusContext(g, m).cl0m


def generalized_jacobian(g: Graph, m: Modulus) -> FgAbGroup:
    return ModulusContext(g, m).jm


def abel_jacobi_m(ctx: ModulusContext, divisor: Sequence[int], n: Sequence[int]) -> GroupElement:
    """Class of ``Wmᵀ(j_*γ_D + Σ n_i ê_i)``."""
    divisor, n = tuple(divisor), tuple(n)
    if sum(divisor) != 0:
        raise NonZeroDegree(f"divisor {list(divisor)} has degree {sum(divisor)}")
    gamma = ctx.base.path_to(divisor)
    chain = tuple(gamma) + n
    return ctx.jm.project(ctx.Wm.T @ chain)


def abel_jacobi_m_hom(ctx: ModulusContext) -> GroupHom:
    return induced_hom(ctx.cl0m, ctx.jm, ctx.abel_jacobi_matrix, "AJ_m")


def verify_abel_m(ctx: ModulusContext) -> GroupHom:
    aj = abel_jacobi_m_hom(ctx)
    if not aj.is_isomorphism():
        raise TheoremViolation("AJ_m is not an isomorphism", witness={"kernel": str(aj.kernel())})
    if ctx.jm.free_rank != ctx.ni - 1:
        raise TheoremViolation("free rank of J_m differs from |I| - 1", witness=ctx.jm.free_rank)
    return aj


def generalized_picard(ctx: ModulusContext):
    """Return ``(P_m, chi_m, zeta_m)`` after checking the square with AJ_m."""
    c = ctx.base.complex
    chi = induced_hom(ctx.pm, ctx.clhat0m, IntMatrix.block_diagonal(c.d_adj, IntMatrix.identity(ctx.ni)), "chi_m")
    cols = [ctx.solve_dual(tuple(int(i == j) for i in range(ctx.rank_m))) for j in range(ctx.rank_m)]
    zeta = induced_hom(ctx.jm, ctx.pm, IntMatrix.from_columns(cols, ctx.ne + ctx.ni), "zeta_m")
    aj = verify_abel_m(ctx)
    iota = induced_hom(ctx.cl0m, ctx.clhat0m, IntMatrix.identity(ctx.nv + ctx.ni), "iota_m")
    for name, h in (("chi_m", chi), ("zeta_m", zeta), ("iota_m", iota)):
        if not h.is_isomorphism():
            raise TheoremViolation(f"{name} is not an isomorphism")
    composite = chi.compose(zeta).compose(aj)
    if not composite.equals(iota):
        raise TheoremViolation("chi_m ∘ zeta_m ∘ AJ_m differs from iota_m", witness=composite.difference_witness(iota))
    return ctx.pm, chi, zeta


def verify_diagram_m(ctx: ModulusContext) -> dict:
    pm, chi, zeta = generalized_picard(ctx)
    return {"aj": abel_jacobi_m_hom(ctx), "chi": chi, "zeta": zeta, "pm": pm}


def forget_modulus_maps(ctx: ModulusContext) -> dict:
    """The maps from modulus groups down to the groups without modulus."""
    base = ctx.base
    restr_cols = []
    wm_solver = SnfSolver(ctx.Wm)
    for col in ctx.jW.columns():
        t = wm_solver.solve(col)
        if t is None:
            raise TheoremViolation("extended harmonic form is not harmonic on the extended graph")
        restr_cols.append(t)
    T = IntMatrix.from_columns(restr_cols, ctx.rank_m)
    return {
        "J_m -> J": induced_hom(ctx.jm, base.jac, T.T),
        "Cl0_m -> Cl0": induced_hom(ctx.cl0m, base.cl0, ctx.vertex_part()),
        "P_m -> P": induced_hom(ctx.pm, base.pic, IntMatrix.hstack(IntMatrix.identity(ctx.ne), IntMatrix.zeros(ctx.ne, ctx.ni))),
        "Clhat0_m -> Clhat0": induced_hom(ctx.clhat0m, base.clhat0, ctx.vertex_part()),
    }


def _check(report: dict, name: str, ok: bool, detail=None):
    report[name] = (bool(ok), detail)


def extension_sequences(ctx: ModulusContext) -> dict:
    """Exactness of the two extension sequences and the reduced presentations.

    Returns a dict clause -> (passed, detail); raises TheoremViolation if any
    clause fails.
    """
    out = {}
    base = ctx.base
    ni = ctx.ni
    zgrp = free_group(1)
    zi = free_group(ni)
    diag = IntMatrix.from_columns([(1,) * ni], ni)
    sum_map = induced_hom(zgrp, zi, diag)
    eps_map = induced_hom(zi, ctx.jm, ctx.epsilon)
    down = forget_modulus_maps(ctx)
    restr = down["J_m -> J"]
    _check(out, "Z -> Z[I] injective", sum_map.is_injective())
    _check(out, "exact at Z[I]", is_exact(sum_map, eps_map))
    _check(out, "exact at J_m", is_exact(eps_map, restr))
    _check(out, "J_m -> J surjective", restr.is_surjective())
    aj, aj_m = verify_abel(base), abel_jacobi_m_hom(ctx)
    _check(out, "AJ compatible with forgetting I", restr.compose(aj_m).equals(aj.compose(down["Cl0_m -> Cl0"])))

    zi_mod_z = subquotient(ni, IntMatrix.identity(ni), diag, "Z^I/Z")
    incl = induced_hom(zi_mod_z, ctx.pm, IntMatrix.vstack(IntMatrix.zeros(ctx.ne, ni), IntMatrix.identity(ni)))
    restr_p = down["P_m -> P"]
    _check(out, "Z^I/Z -> P_m injective", incl.is_injective())
    _check(out, "exact at P_m", is_exact(incl, restr_p))
    _check(out, "P_m -> P surjective", restr_p.is_surjective())

    if ctx.modulus.is_reduced():
        out.update(reduced_presentations(ctx))
    else:
        out.update(pushout_checks(ctx))
    failed = [k for k, (ok, _) in out.items() if ok is False]
    if failed:
        raise TheoremViolation(f"extension sequence check failed: {failed}", witness=failed)
    return out


def _outside_support(ctx: ModulusContext) -> list:
    s = set(ctx.modulus.points)
    return [i for i, v in enumerate(ctx.graph.vertices) if v not in s]


def reduced_presentations(ctx: ModulusContext) -> dict:
    """For a reduced modulus, compare the presentations relative to ``V ∖ S``."""
    out = {}
    c = ctx.base.complex
    nv, ne, ni = ctx.nv, ctx.ne, ctx.ni
    rest = _outside_support(ctx)
    embed = IntMatrix.vstack(IntMatrix.identity(nv), IntMatrix.zeros(ni, nv))
    lap_rest = c.laplacian0.select_columns(rest)
    box_rest = c.box0.select_columns(rest)
    cl = subquotient(nv, IntMatrix.identity(nv), lap_rest)
    cl0 = subquotient(nv, degree_zero_basis(nv), lap_rest)
    clhat = subquotient(nv, IntMatrix.identity(nv), box_rest)
    im_dadj = lattice_basis(c.d_adj) if ne else IntMatrix.zeros(nv, 0)
    clhat0 = subquotient(nv, im_dadj, box_rest)
    _check(out, "Z[V]/Δ0 Z[V∖S] ≅ Cl_m", induced_hom(cl, ctx.clm, embed).is_isomorphism())
    _check(out, "Z[V]0/Δ0 Z[V∖S] ≅ Cl0_m", induced_hom(cl0, ctx.cl0m, embed).is_isomorphism())
    _check(out, "Z^V/□0 Z^(V∖S) ≅ Clhat_m", induced_hom(clhat, ctx.clhatm, embed).is_isomorphism())
    iso_b = induced_hom(clhat0, ctx.clhat0m, embed)
    _check(out, "Z^V,0/□0 Z^(V∖S) ≅ Clhat0_m", iso_b.is_isomorphism())
    pres = subquotient(ne, IntMatrix.identity(ne), IntMatrix.hstack(c.d.select_columns(rest), ctx.base.W))
    iso_c = induced_hom(pres, ctx.pm, IntMatrix.vstack(IntMatrix.identity(ne), IntMatrix.zeros(ni, ne)))
    _check(out, "Z^E/(d Z^(V∖S) + Ha1) ≅ P_m", iso_c.is_isomorphism())
    _, chi, _ = generalized_picard(ctx)
    dsharp = induced_hom(pres, clhat0, c.d_adj)
    _check(out, "reduced square with chi_m commutes", chi.compose(iso_c).equals(iso_b.compose(dsharp)))
    return out


def pushout_checks(ctx: ModulusContext) -> dict:
    """Compare a non-reduced modulus with its reduction through the pushout squares."""
    out = {}
    reduced = ModulusContext(ctx.graph, ctx.modulus.reduction(), base=ctx.base)
    nv, ni, ns = ctx.nv, ctx.ni, reduced.ni
    sigma = ctx.index_sum_map()
    for label, small, big in (("Cl0", reduced.cl0m, ctx.cl0m), ("Clhat0", reduced.clhat0m, ctx.clhat0m)):
        vertical = induced_hom(small, big, IntMatrix.block_diagonal(IntMatrix.identity(nv), sigma))
        # pushout (small ⊕ Z[I]) / {(s, -σ s)} in ambient Z^V ⊕ Z^S ⊕ Z^I
        numerator = IntMatrix.block_diagonal(small.numerator_basis, IntMatrix.identity(ni))
        rel_small = IntMatrix.vstack(small.relation_images, IntMatrix.zeros(ni, small.relation_images.cols))
        glue = IntMatrix.vstack(IntMatrix.zeros(nv, ns), IntMatrix.identity(ns), -sigma)
        pushout = subquotient(nv + ns + ni, numerator, IntMatrix.hstack(rel_small, glue))
        to_big = IntMatrix.hstack(
            IntMatrix.vstack(IntMatrix.identity(nv), IntMatrix.zeros(ni, nv)),
            IntMatrix.vstack(IntMatrix.zeros(nv, ns), sigma),
            IntMatrix.vstack(IntMatrix.zeros(nv, ni), IntMatrix.identity(ni)),
        )
        _check(out, f"{label}_m0 -> {label}_m injective", vertical.is_injective())
        _check(out, f"{label}_m is the pushout along Z[S] -> Z[I]", induced_hom(pushout, big, to_big).is_isomorphism())
    return out


def m_harmonic_factorization(ctx: ModulusContext, f_values, g_values) -> GroupHom:
    """The hom Cl_m → A with ``v ↦ f(v)`` and ``i ↦ g(i)``.

    Raises:
        NotHarmonic: ``□0 f(v) + Σ_{I(v)} g(i) ≠ 0`` at some vertex.
    """
    f_values, g_values = list(f_values), list(g_values)
    target = (f_values + g_values)[0].parent
    lap = ctx.base.complex.laplacian0
    verts = ctx.graph.vertices
    for j, v in enumerate(verts):
        acc = target.zero()
        for i in range(ctx.nv):
            if lap[i, j]:
                acc = acc + f_values[i] * lap[i, j]
        for i in ctx.modulus.indices_at(v):
            acc = acc + g_values[i]
        if not acc.is_zero():
            raise NotHarmonic(f"map is not m-harmonic at {v!r}", vertex=v)
    reps = IntMatrix.from_columns([target.representative(x) for x in f_values + g_values], target.ambient_rank)
    return hom_from_images(ctx.clm, target, reps)


def ext_class_vs_aj(base: JacobianContext, m: Modulus, ctx: ModulusContext = None) -> dict:
    """Compare the connecting map of ``0 → Z^I/Z → P_m → P → 0`` with the pairing.

    For ``x`` in ``P`` of order ``n``, lift it to ``x̃`` in ``P_m``; then
    ``n x̃`` is the class of some ``(0, k)`` and the connecting value at
    ``D ∈ Z[I]_0`` is ``D(k)/n``.  This is compared with the pairing of
    ``AJ(ρ_* D)`` and ``x``.  Returns the sign relating the two.
    """
    ctx = ctx if ctx is not None else ModulusContext(base.graph, m, base=base)
    ne, ni = ctx.ne, ctx.ni
    solver = SnfSolver(IntMatrix.hstack(ctx.pm.relation_images, IntMatrix.vstack(IntMatrix.zeros(ne, ni), IntMatrix.identity(ni))))
    nrel = ctx.pm.relation_images.cols
    gens_d = [tuple((1 if k == i else 0) - (1 if k == 0 else 0) for k in range(ni)) for i in range(1, ni)]
    pairs = []
    for x in base.pic.generators():
        n = x.order()
        omega = base.pic.representative(x)
        sol = solver.solve(tuple(n * a for a in omega) + (0,) * ni)
        if sol is None:
            raise TheoremViolation("n·x̃ is not in the image of Z^I/Z", witness=list(omega))
        k = sol[nrel:]
        for dvec in gens_d:
            connecting = Fraction(sum(a * b for a, b in zip(dvec, k)), n)
            connecting -= connecting.numerator // connecting.denominator
            pushed = ctx.rho @ dvec
            pairing = duality_pairing(base, abel_jacobi(base, pushed), x)
            pairs.append((connecting, pairing, list(dvec), list(omega)))
    signs = set()
    for conn, pair, _, _ in pairs:
        ok = set()
        if conn == pair:
            ok.add(1)
        if (conn + pair) % 1 == 0:
            ok.add(-1)
        if not ok:
            raise TheoremViolation("connecting value is not ± the pairing", witness=(str(conn), str(pair)))
        signs.add(frozenset(ok))
    allowed = {1, -1}
    for s in signs:
        allowed &= s
    if not allowed:
        raise TheoremViolation("no single sign relates the connecting map and the pairing")
    epsilon = 1 if 1 in allowed else -1
    return {
        "epsilon": epsilon,
        "sign_forced": len(allowed) == 1,
        "pairs": [(str(a), str(b), d, w) for a, b, d, w in pairs],
    }
