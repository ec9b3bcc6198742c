"""The lattice-level engine: chain data with pairings, no graph required.

Inputs are free modules ``C0``, ``C1``, ``L`` with Gram matrices and maps
``∂: C1 → C0``, ``∂♯: C0 → C1``, ``ρ: L → C0``, ``ρ♯: C0 → L``.  Cochains are
dual coordinates, so ``d = ∂ᵀ``, ``d♯ = ∂♯ᵀ``, ``r = ρᵀ``, ``r♯ = ρ♯ᵀ`` and the
maps from chains to cochains are the Gram matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AdjointnessViolated, TheoremViolation
from .groups import FgAbGroup, GroupHom, hom_from_images, induced_hom, subquotient
from .linalg import IntMatrix, SnfSolver, as_matrix, kernel_basis, lattice_basis


@dataclass(frozen=True)
class AbstractSystem:
    boundary: IntMatrix
    adjoint_boundary: IntMatrix
    rho: IntMatrix
    rho_adj: IntMatrix
    gram0: IntMatrix
    gram1: IntMatrix
    gramL: IntMatrix

    def __post_init__(self):
        for name in ("boundary", "adjoint_boundary", "rho", "rho_adj", "gram0", "gram1", "gramL"):
            object.__setattr__(self, name, as_matrix(getattr(self, name)))
        n0, n1, nl = self.c0_rank, self.c1_rank, self.l_rank
        shapes = {
            "boundary": (n0, n1),
            "adjoint_boundary": (n1, n0),
            "rho": (n0, nl),
            "rho_adj": (nl, n0),
            "gram0": (n0, n0),
            "gram1": (n1, n1),
            "gramL": (nl, nl),
        }
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")
        for name in ("gram0", "gram1", "gramL"):
            g = getattr(self, name)
            if g != g.T:
                raise AdjointnessViolated(f"{name} is not symmetric")
        if self.gram0 @ self.boundary != self.adjoint_boundary.T @ self.gram1:
            raise AdjointnessViolated("<x, ∂y>_0 differs from <∂♯x, y>_1")
        if self.rho.T @ self.gram0 != self.gramL @ self.rho_adj:
            raise AdjointnessViolated("<ρl, x>_0 differs from <l, ρ♯x>_L")

    @property
    def c0_rank(self) -> int:
        return self.gram0.rows

    @property
    def c1_rank(self) -> int:
        return self.gram1.rows

    @property
    def l_rank(self) -> int:
        return self.gramL.rows


@dataclass
class AbstractResult:
    clL0: FgAbGroup
    clhatL0: FgAbGroup
    jL: FgAbGroup
    pL: FgAbGroup
    pbbL: FgAbGroup
    ajL: GroupHom
    zetaL: GroupHom
    chiL: GroupHom
    iotaL: GroupHom
    pairing_map: GroupHom
    harmonic_basis: IntMatrix = field(repr=False)
    cycle_basis: IntMatrix = field(repr=False)


def graph_system(graph, modulus) -> AbstractSystem:
    """Standard-basis instantiation for a graph with modulus."""
    from .complexes import GraphComplex

    c = GraphComplex(graph)
    rho = modulus.incidence()
    return AbstractSystem(
        boundary=c.boundary,
        adjoint_boundary=c.adjoint_boundary,
        rho=rho,
        rho_adj=rho.T,
        gram0=IntMatrix.identity(graph.n_vertices),
        gram1=IntMatrix.identity(graph.n_edges),
        gramL=IntMatrix.identity(modulus.size),
    )


def _span(m: IntMatrix) -> IntMatrix:
    return lattice_basis(m) if m.cols else m


def abstract_engine(sys: AbstractSystem) -> AbstractResult:
    """Build the four groups and the maps between them, then check the square.

    ``ζ_L ∘ AJ_L`` must equal the composite of ``ι0 ⊕ ιL``, the inverse of
    ``χ_L`` and the map ``P̄_L → P̄̄_L``.
    """
    n0, n1, nl = sys.c0_rank, sys.c1_rank, sys.l_rank
    d = sys.boundary.T
    d_adj = sys.adjoint_boundary.T
    r = sys.rho.T
    r_adj = sys.rho_adj.T
    lap0 = sys.boundary @ sys.adjoint_boundary
    box0 = d_adj @ d
    eye_l = IntMatrix.identity(nl)

    clL0 = subquotient(
        n0 + nl,
        IntMatrix.block_diagonal(_span(sys.boundary), eye_l),
        IntMatrix.vstack(lap0, sys.rho_adj),
        "Cl0_L",
    )
    clhatL0 = subquotient(
        n0 + nl,
        IntMatrix.block_diagonal(_span(d_adj), eye_l),
        IntMatrix.vstack(box0, r),
        "Clhat0_L",
    )

    dL_adj = IntMatrix.hstack(d_adj, r_adj)
    w_tilde = kernel_basis(dL_adj)
    cycles = kernel_basis(sys.boundary)
    cycles_ext = IntMatrix.vstack(cycles, IntMatrix.zeros(nl, cycles.cols))
    jL = subquotient(w_tilde.cols, IntMatrix.identity(w_tilde.cols), w_tilde.T @ cycles_ext, "J_L")

    harm = kernel_basis(d_adj)
    harm_ext = IntMatrix.vstack(harm, IntMatrix.zeros(nl, harm.cols))
    dL = IntMatrix.vstack(d, r)
    pL = subquotient(n1 + nl, IntMatrix.identity(n1 + nl), IntMatrix.hstack(harm_ext, dL), "P_L")

    boundary_L = IntMatrix.hstack(sys.boundary, sys.rho)
    k_tilde = kernel_basis(boundary_L)
    pbbL = subquotient(k_tilde.cols, IntMatrix.identity(k_tilde.cols), k_tilde.T @ harm_ext, "Pbb_L")

    # AJ_L on the numerator basis (∂x, l): the functional (y, m) ↦ <x, y> + <l, m>
    path_solver = SnfSolver(sys.boundary)
    images = []
    for col in clL0.numerator_basis.columns():
        a, l = col[:n0], col[n0:]
        x = path_solver.solve(a)
        if x is None:
            raise TheoremViolation("numerator element is not a boundary")
        images.append(w_tilde.T @ (tuple(x) + tuple(l)))
    ajL = hom_from_images(clL0, jL, IntMatrix.from_columns(images, w_tilde.cols), "AJ_L")

    # ζ_L: transpose of ι1 ⊕ ιL restricted to ker ∂_L → ker d_L♯
    iota_tilde = IntMatrix.block_diagonal(sys.gram1, sys.gramL)
    w_solver = SnfSolver(w_tilde)
    t_cols = []
    for col in (iota_tilde @ k_tilde).columns():
        t = w_solver.solve(col)
        if t is None:
            raise TheoremViolation("ι1 ⊕ ιL does not map ker ∂_L into ker d_L♯")
        t_cols.append(t)
    T = IntMatrix.from_columns(t_cols, w_tilde.cols)
    zetaL = induced_hom(jL, pbbL, T.T, "zeta_L")

    chiL = induced_hom(pL, clhatL0, IntMatrix.block_diagonal(d_adj, eye_l), "chi_L")
    iotaL = induced_hom(clL0, clhatL0, IntMatrix.block_diagonal(sys.gram0, sys.gramL), "iota_L")
    pairing_map = induced_hom(pL, pbbL, k_tilde.T, "P_L -> Pbb_L")

    if not chiL.is_isomorphism():
        raise TheoremViolation("chi_L is not an isomorphism")
    left = zetaL.compose(ajL)
    right = pairing_map.compose(chiL.inverse()).compose(iotaL)
    if not left.equals(right):
        raise TheoremViolation("abstract Abel–Jacobi square does not commute", witness=left.difference_witness(right))
    return AbstractResult(clL0, clhatL0, jL, pL, pbbL, ajL, zetaL, chiL, iotaL, pairing_map, w_tilde, cycles)


def compare_with_direct(res: AbstractResult, ctx) -> dict:
    """Check the graph instantiation against a :class:`ModulusContext` group by group."""
    from .modulus import abel_jacobi_m_hom, generalized_picard

    out = {}
    n = ctx.nv + ctx.ni
    eye = IntMatrix.identity(n)
    cl = induced_hom(res.clL0, ctx.cl0m, eye)
    clhat = induced_hom(res.clhatL0, ctx.clhat0m, eye)
    p = induced_hom(res.pL, ctx.pm, IntMatrix.identity(ctx.ne + ctx.ni))
    # both harmonic bases span ker d_L♯ = Ha¹(Γ_m); change dual coordinates
    solver = SnfSolver(res.harmonic_basis)
    cols = [solver.solve(col) for col in ctx.Wm.columns()]
    if any(c is None for c in cols):
        out["ker d_L♯ = Ha1(extended graph)"] = (False, None)
        return out
    out["ker d_L♯ = Ha1(extended graph)"] = (res.harmonic_basis.cols == ctx.Wm.cols, None)
    T = IntMatrix.from_columns(cols, res.harmonic_basis.cols)
    j = induced_hom(res.jL, ctx.jm, T.T)
    for name, h in (("Cl0_L = Cl0_m", cl), ("Clhat0_L = Clhat0_m", clhat), ("P_L = P_m", p), ("J_L = J_m", j)):
        out[name] = (h.is_isomorphism(), str(h.target))
    _, chi_m, zeta_m = generalized_picard(ctx)
    aj_m = abel_jacobi_m_hom(ctx)
    out["AJ_L matches AJ_m"] = (j.compose(res.ajL).equals(aj_m.compose(cl)), None)
    out["chi_L matches chi_m"] = (clhat.compose(res.chiL).equals(chi_m.compose(p)), None)
    # ζ_L lands in P̄̄_L; compare through P_m → P̄̄_L
    back = res.pairing_map.compose(p.inverse())
    out["zeta_L matches zeta_m"] = (res.zetaL.equals(back.compose(zeta_m).compose(j)), None)
    out["Pbb_L ≅ P_L"] = (res.pairing_map.is_isomorphism(), None)
    return out
