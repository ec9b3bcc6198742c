"""Cellular sheaves on the realization of a graph and their Čech cohomology.

A sheaf is given by stalk ranks at vertices and edges and two restriction
maps per edge, ``xi0`` from the origin stalk and ``xi1`` from the terminus
stalk.  The Čech differential sends ``(a_v)`` to
``b_e = xi1_e(a_{t(e)}) - xi0_e(a_{o(e)})``.

Germ coordinates for piecewise-linear functions at a vertex ``v`` are
``(a, b_h ...)``: the value at ``v`` and one slope per half-edge ``h`` at
``v``, measured as distance from ``v`` grows.  On an edge the pair
``(a, b)`` stands for ``a + b x`` with ``x`` running from origin to terminus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .complexes import GraphComplex
from .errors import IsolatedVertex, TheoremViolation
from .graph import Graph, Modulus, reverse_edges
from .groups import FgAbGroup, GroupHom, induced_hom, preimage, subquotient
from .linalg import IntMatrix, SnfSolver, as_matrix, kernel_basis, same_lattice


class CellularSheaf:
    def __init__(self, graph: Graph, vertex_ranks, edge_ranks, xi0, xi1, allow_isolated: bool = False):
        if not allow_isolated and graph.isolated_vertices():
            raise IsolatedVertex(f"isolated vertices {graph.isolated_vertices()}")
        self.graph = graph
        self.vertex_ranks = list(vertex_ranks)
        self.edge_ranks = list(edge_ranks)
        self.xi0 = [as_matrix(x) for x in xi0]
        self.xi1 = [as_matrix(x) for x in xi1]
        vi = graph.vertex_index
        for j, e in enumerate(graph.edges):
            if self.xi0[j].shape != (self.edge_ranks[j], self.vertex_ranks[vi[e.o]]):
                raise ValueError(f"xi0 of {e.id} has shape {self.xi0[j].shape}")
            if self.xi1[j].shape != (self.edge_ranks[j], self.vertex_ranks[vi[e.t]]):
                raise ValueError(f"xi1 of {e.id} has shape {self.xi1[j].shape}")
        self.vertex_offsets = _offsets(self.vertex_ranks)
        self.edge_offsets = _offsets(self.edge_ranks)

    @property
    def c0_rank(self) -> int:
        return sum(self.vertex_ranks)

    @property
    def c1_rank(self) -> int:
        return sum(self.edge_ranks)

    @cached_property
    def coboundary(self) -> IntMatrix:
        rows = [[0] * self.c0_rank for _ in range(self.c1_rank)]
        vi = self.graph.vertex_index
        for j, e in enumerate(self.graph.edges):
            r0 = self.edge_offsets[j]
            for sign, mat, v in ((1, self.xi1[j], e.t), (-1, self.xi0[j], e.o)):
                c0 = self.vertex_offsets[vi[v]]
                for a in range(mat.rows):
                    for b in range(mat.cols):
                        rows[r0 + a][c0 + b] += sign * mat[a, b]
        return IntMatrix.from_rows(rows, self.c0_rank)

    def reversed(self, edge_ids) -> "CellularSheaf":
        """Same sheaf described on the graph with some edges reversed."""
        edge_ids = set(edge_ids)
        g = reverse_edges(self.graph, edge_ids)
        xi0, xi1 = list(self.xi0), list(self.xi1)
        for j, e in enumerate(self.graph.edges):
            if e.id in edge_ids:
                xi0[j], xi1[j] = xi1[j], xi0[j]
        return CellularSheaf(g, self.vertex_ranks, self.edge_ranks, xi0, xi1, allow_isolated=True)


def _offsets(ranks):
    out, acc = [], 0
    for r in ranks:
        out.append(acc)
        acc += r
    return out


def cech_cohomology(s: CellularSheaf):
    """``(H0, H1)`` as kernel and cokernel of the Čech differential."""
    d = s.coboundary
    h0 = subquotient(s.c0_rank, kernel_basis(d), IntMatrix.zeros(s.c0_rank, 0), "H0")
    h1 = subquotient(s.c1_rank, IntMatrix.identity(s.c1_rank), d, "H1")
    return h0, h1


class SheafMap:
    """Stalkwise maps commuting with the restriction maps."""

    def __init__(self, source: CellularSheaf, target: CellularSheaf, vertex_maps, edge_maps):
        self.source = source
        self.target = target
        self.vertex_maps = [as_matrix(m) for m in vertex_maps]
        self.edge_maps = [as_matrix(m) for m in edge_maps]
        vi = source.graph.vertex_index
        for j, e in enumerate(source.graph.edges):
            fe = self.edge_maps[j]
            for xs, xt, v in ((source.xi0[j], target.xi0[j], e.o), (source.xi1[j], target.xi1[j], e.t)):
                if fe @ xs != xt @ self.vertex_maps[vi[v]]:
                    raise ValueError(f"stalk maps do not commute with restriction along {e.id!r}")

    @cached_property
    def degree0(self) -> IntMatrix:
        return IntMatrix.block_diagonal(*self.vertex_maps)

    @cached_property
    def degree1(self) -> IntMatrix:
        return IntMatrix.block_diagonal(*self.edge_maps) if self.edge_maps else IntMatrix.zeros(self.target.c1_rank, self.source.c1_rank)

    def on_h1(self, h1_source: FgAbGroup, h1_target: FgAbGroup) -> GroupHom:
        return induced_hom(h1_source, h1_target, self.degree1)


@dataclass
class TwoTermSheafComplex:
    """A sheaf mapped to a product of skyscrapers ``Z`` at listed vertices.

    ``points`` are the skyscraper locations in order and ``evaluations[i]``
    is the 1-row matrix from the stalk at ``points[i]`` to ``Z``.
    """

    sheaf: CellularSheaf
    points: Sequence[str]
    evaluations: Sequence[IntMatrix]

    @cached_property
    def total_coboundary(self) -> IntMatrix:
        s = self.sheaf
        vi = s.graph.vertex_index
        rows = []
        for p, ev in zip(self.points, self.evaluations):
            row = [0] * s.c0_rank
            off = s.vertex_offsets[vi[p]]
            for b in range(ev.cols):
                row[off + b] = ev[0, b]
            rows.append(row)
        extra = IntMatrix.from_rows(rows, s.c0_rank)
        return IntMatrix.vstack(s.coboundary, extra)

    def cohomology(self):
        d = self.total_coboundary
        h0 = subquotient(d.cols, kernel_basis(d), IntMatrix.zeros(d.cols, 0), "H0")
        h1 = subquotient(d.rows, IntMatrix.identity(d.rows), d, "H1")
        return h0, h1


class StandardSheaves:
    """PL, Harm, Ω and the constant sheaf on a graph without isolated vertices."""

    def __init__(self, graph: Graph):
        if graph.isolated_vertices():
            raise IsolatedVertex(f"isolated vertices {graph.isolated_vertices()}")
        self.graph = graph
        g = graph
        self.half_edges = {v: g.half_edges(v) for v in g.vertices}
        nv, ne = g.n_vertices, g.n_edges

        pl_xi0, pl_xi1 = [], []
        for e in g.edges:
            pl_xi0.append(self._pl_restriction(e, 0))
            pl_xi1.append(self._pl_restriction(e, 1))
        self.pl = CellularSheaf(g, [1 + len(self.half_edges[v]) for v in g.vertices], [2] * ne, pl_xi0, pl_xi1)

        # Harm_v = ker(diff_v); diff_v = -(sum of slopes)
        self.diff_rows = [IntMatrix.from_rows([[0] + [-1] * len(self.half_edges[v])]) for v in g.vertices]
        self.harm_bases = [kernel_basis(r) for r in self.diff_rows]
        vi = g.vertex_index
        self.harm = CellularSheaf(
            g,
            [b.cols for b in self.harm_bases],
            [2] * ne,
            [pl_xi0[j] @ self.harm_bases[vi[e.o]] for j, e in enumerate(g.edges)],
            [pl_xi1[j] @ self.harm_bases[vi[e.t]] for j, e in enumerate(g.edges)],
        )

        # Ω_v: slopes in the edge direction with zero signed sum
        self.omega_bases = []
        for v in g.vertices:
            row = [1 if end == 0 else -1 for _, end in self.half_edges[v]]
            self.omega_bases.append(kernel_basis(IntMatrix.from_rows([row])))
        om0, om1 = [], []
        for e in g.edges:
            for end, store in ((0, om0), (1, om1)):
                v = e.o if end == 0 else e.t
                k = self.half_edges[v].index((e.id, end))
                pick = IntMatrix.from_rows([[int(i == k) for i in range(len(self.half_edges[v]))]])
                store.append(pick @ self.omega_bases[vi[v]])
        self.omega = CellularSheaf(g, [b.cols for b in self.omega_bases], [1] * ne, om0, om1)

        one = IntMatrix.identity(1)
        self.const = CellularSheaf(g, [1] * nv, [1] * ne, [one] * ne, [one] * ne)

        # stalk maps
        self._harm_solvers = [SnfSolver(b) for b in self.harm_bases]
        self._omega_solvers = [SnfSolver(b) for b in self.omega_bases]
        q_vertex = []
        for i, v in enumerate(g.vertices):
            unit = (1,) + (0,) * len(self.half_edges[v])
            q_vertex.append(IntMatrix.from_columns([self._harm_solvers[i].solve(unit)], self.harm_bases[i].cols))
        self.q = SheafMap(self.const, self.harm, q_vertex, [IntMatrix.from_rows([[1], [0]])] * ne)

        ed_vertex = []
        for i, v in enumerate(g.vertices):
            signs = [1 if end == 0 else -1 for _, end in self.half_edges[v]]
            pl_map = IntMatrix.from_rows([[0] + [s if c == r else 0 for c, _ in enumerate(signs)] for r, s in enumerate(signs)], 1 + len(signs))
            images = pl_map @ self.harm_bases[i]
            cols = [self._omega_solvers[i].solve(col) for col in images.columns()]
            ed_vertex.append(IntMatrix.from_columns(cols, self.omega_bases[i].cols))
        self.ediff = SheafMap(self.harm, self.omega, ed_vertex, [IntMatrix.from_rows([[0, 1]])] * ne)

        sky = CellularSheaf(g, [1] * nv, [0] * ne, [IntMatrix.zeros(0, 1)] * ne, [IntMatrix.zeros(0, 1)] * ne)
        self.skyscraper = sky
        self.diff = SheafMap(self.pl, sky, self.diff_rows, [IntMatrix.zeros(0, 2)] * ne)
        self.harm_inclusion = SheafMap(self.harm, self.pl, self.harm_bases, [IntMatrix.identity(2)] * ne)

    def _pl_restriction(self, e, end: int) -> IntMatrix:
        v = e.o if end == 0 else e.t
        hs = self.half_edges[v]
        k = 1 + hs.index((e.id, end))
        width = 1 + len(hs)
        if end == 0:
            rows = [[1 if c == 0 else 0 for c in range(width)], [1 if c == k else 0 for c in range(width)]]
        else:
            rows = [[1 if c in (0, k) else 0 for c in range(width)], [-1 if c == k else 0 for c in range(width)]]
        return IntMatrix.from_rows(rows, width)

    # -- lifting codivisors to piecewise-linear cochains

    @cached_property
    def lift_matrix(self) -> IntMatrix:
        """``Z^V → C⁰(PL)``: a cochain with value 0 and ``diff = c``.

        The whole weight goes on the first half-edge at each vertex.
        """
        g = self.graph
        cols = []
        for i, v in enumerate(g.vertices):
            col = [0] * self.pl.c0_rank
            col[self.pl.vertex_offsets[i] + 1] = -1
            cols.append(tuple(col))
        return IntMatrix.from_columns(cols, self.pl.c0_rank)

    @cached_property
    def delta_matrix(self) -> IntMatrix:
        """``Z^V → C¹(Harm)``: ``c ↦ d_PL(lift(c))``."""
        return self.pl.coboundary @ self.lift_matrix

    @cached_property
    def value_rows(self) -> IntMatrix:
        """``C⁰(PL) → Z^V``: the value coordinate at each vertex."""
        cols = self.pl.c0_rank
        return IntMatrix.from_rows(
            [[int(c == self.pl.vertex_offsets[i]) for c in range(cols)] for i in range(self.graph.n_vertices)], cols
        )

    @cached_property
    def harm_value_rows(self) -> list:
        """Per vertex, the 1-row evaluation ``Harm_v → Z``."""
        out = []
        for b in self.harm_bases:
            out.append(IntMatrix.from_rows([b.row(0)], b.cols))
        return out

    @cached_property
    def q_edges(self) -> IntMatrix:
        """``Z^E → C¹(Harm)``: an edge goes to the constant function 1 on it."""
        ne = self.graph.n_edges
        return IntMatrix.from_columns([tuple(int(r == 2 * j) for r in range(2 * ne)) for j in range(ne)], 2 * ne)


def build_standard_sheaves(g: Graph):
    """``(PL, Harm, Omega, ConstZ, diff, ediff, q)``."""
    s = StandardSheaves(g)
    return s.pl, s.harm, s.omega, s.const, s.diff, s.ediff, s.q


def _check(out, name, ok, detail=None):
    out[name] = (bool(ok), detail)


def sheaf_checks(g: Graph, sheaves: StandardSheaves = None) -> dict:
    """Global-section and stalkwise identities for the standard sheaves."""
    s = sheaves or StandardSheaves(g)
    c = GraphComplex(g)
    out = {}
    # diff on global sections of PL is □0 in vertex-value coordinates
    h0_pl = kernel_basis(s.pl.coboundary)
    values = s.value_rows @ h0_pl
    diffs = s.diff.degree0 @ h0_pl
    from .linalg import is_unimodular

    _check(out, "values identify H0(PL) with Z^V", is_unimodular(values))
    _check(out, "diff on global sections = □0", diffs == c.box0 @ values)
    h0_harm, _ = cech_cohomology(s.harm)
    _check(out, "H0(Harm) ≅ ker □0", h0_harm.invariants() == (kernel_basis(c.box0).cols, ()))
    h0_om, h1_om = cech_cohomology(s.omega)
    # a global section of Ω is an edge function; read it off at the origins
    vi = g.vertex_index
    rows = []
    for j, e in enumerate(g.edges):
        row = [0] * s.omega.c0_rank
        off = s.omega.vertex_offsets[vi[e.o]]
        for b in range(s.omega.xi0[j].cols):
            row[off + b] = s.omega.xi0[j][0, b]
        rows.append(row)
    to_edges = IntMatrix.from_rows(rows, s.omega.c0_rank)
    _check(out, "H0(Ω) = Ha1", same_lattice(to_edges @ h0_om.numerator_basis, c.harmonic_basis))
    coker_dadj = subquotient(g.n_vertices, IntMatrix.identity(g.n_vertices), c.d_adj)
    _check(out, "H1(Ω) ≅ coker d_adj", h1_om.invariants() == coker_dadj.invariants(), str(h1_om))
    if g.is_connected():
        _check(out, "H1(Ω) ≅ Z", h1_om.invariants() == (1, ()), str(h1_om))
    # stalkwise exactness of the divisor and dlog sequences
    ok_div, ok_log = True, True
    for i, v in enumerate(g.vertices):
        row = s.diff_rows[i]
        ok_div &= same_lattice(kernel_basis(row), s.harm_bases[i]) and _surjective(row)
        qv, ev = s.q.vertex_maps[i], s.ediff.vertex_maps[i]
        ok_log &= _exact_at(qv, ev) and _surjective(ev) and kernel_basis(qv).cols == 0
    for j in range(g.n_edges):
        ok_log &= _exact_at(s.q.edge_maps[j], s.ediff.edge_maps[j]) and _surjective(s.ediff.edge_maps[j])
    _check(out, "divisor sequence exact at vertices", ok_div)
    _check(out, "dlog sequence exact at vertices and edges", ok_log)
    return out


def _surjective(m: IntMatrix) -> bool:
    return m.rows == 0 or same_lattice(m, IntMatrix.identity(m.rows))


def _exact_at(f: IntMatrix, g: IntMatrix) -> bool:
    return same_lattice(kernel_basis(g), f)


class PicardData:
    def __init__(self, pic, delta_bar, pic0, extras):
        self.pic = pic
        self.delta_bar = delta_bar
        self.pic0 = pic0
        self.extras = extras

    def __iter__(self):
        return iter((self.pic, self.delta_bar, self.pic0))


def picard_geometric(g: Graph, sheaves: StandardSheaves = None) -> PicardData:
    """Pic(|Γ|) = H¹(Harm), the isomorphism δ̄ from codivisor classes, and Pic⁰."""
    s = sheaves or StandardSheaves(g)
    c = GraphComplex(g)
    nv = g.n_vertices
    _, pic = cech_cohomology(s.harm)
    clhat = subquotient(nv, IntMatrix.identity(nv), c.box0, "Clhat")
    delta_bar = induced_hom(clhat, pic, s.delta_matrix, "delta_bar")
    if not delta_bar.is_isomorphism():
        raise TheoremViolation("δ̄ is not an isomorphism onto H1(Harm)")
    _, h1_om = cech_cohomology(s.omega)
    to_omega = s.ediff.on_h1(pic, h1_om)
    pic0 = to_omega.kernel()
    extras = {"clhat": clhat, "to_omega": to_omega, "h1_omega": h1_om}
    if g.is_connected():
        from .jacobian import JacobianContext

        ctx = JacobianContext(g)
        image = delta_bar.compose(induced_hom(ctx.clhat0, clhat, IntMatrix.identity(nv))).image()
        if not pic.same_subgroup(image, pic0):
            raise TheoremViolation("δ̄(Clhat0) differs from Pic0")
        quotient_ok = to_omega.is_surjective() and h1_om.invariants() == (1, ())
        if not quotient_ok:
            raise TheoremViolation("Pic/Pic0 is not Z")
        extras["ctx"] = ctx
    return PicardData(pic, delta_bar, pic0, extras)


def verify_sign_law(g: Graph, sheaves: StandardSheaves = None) -> dict:
    """``δ̄(d♯ ê) = -q_*(ê)`` for every edge, and the triangle with χ on P."""
    s = sheaves or StandardSheaves(g)
    data = picard_geometric(g, s)
    pic = data.pic
    c = GraphComplex(g)
    out = {}
    for j, e in enumerate(g.edges):
        lhs = s.delta_matrix @ c.d_adj.column(j)
        rhs = tuple(-x for x in s.q_edges.column(j))
        ok = pic.project(tuple(a - b for a, b in zip(lhs, rhs))).is_zero()
        out[f"edge {e.id}"] = (ok, None)
        if not ok:
            raise TheoremViolation(f"sign law fails on edge {e.id!r}", witness=e.id)
    if g.is_connected():
        from .jacobian import picard_maps

        ctx = data.extras["ctx"]
        chi, _, _ = picard_maps(ctx)
        q_star = induced_hom(ctx.pic, pic, s.q_edges)
        delta0 = induced_hom(ctx.clhat0, pic, s.delta_matrix)
        ok = delta0.compose(chi).equals(-q_star)
        out["δ̄ ∘ χ = -q_* on P"] = (ok, None)
        q0 = induced_hom(ctx.pic, data.pic0, s.q_edges)
        out["q_*: P ≅ Pic0"] = (q0.is_isomorphism(), None)
        if not all(v[0] for v in out.values()):
            raise TheoremViolation("sign law triangle fails", witness=out)
    return out


# -- modulus versions


class ModulusSheaves:
    """Harm_m and Z_m for a modulus, plus Harm' when the modulus is reduced."""

    def __init__(self, g: Graph, m: Modulus, sheaves: StandardSheaves = None):
        self.graph = g
        self.modulus = m
        self.std = sheaves or StandardSheaves(g)
        s = self.std
        vi = g.vertex_index
        self.harm_m = TwoTermSheafComplex(s.harm, m.points, [s.harm_value_rows[vi[w]] for w in m.points])
        one = IntMatrix.identity(1)
        self.const_m = TwoTermSheafComplex(s.const, m.points, [one for _ in m.points])
        ne, ni = g.n_edges, m.size
        _, self.picm = self.harm_m.cohomology()
        # δ_m on Z^V ⊕ Z^I: (a, k) ↦ (d_PL f, eval_I f - k) with diff f = a, f of value 0
        self.delta_m_matrix = IntMatrix.block_diagonal(s.delta_matrix, -IntMatrix.identity(ni))
        self.q_m_matrix = IntMatrix.block_diagonal(s.q_edges, IntMatrix.identity(ni))
        self.forget_matrix = IntMatrix.hstack(IntMatrix.identity(2 * ne), IntMatrix.zeros(2 * ne, ni))


def rigidified_picard(g: Graph, m: Modulus, sheaves: StandardSheaves = None) -> PicardData:
    """Pic_m(|Γ|) via the two-term complex Harm → ∏ w_i* Z, with its checks."""
    from .modulus import ModulusContext, generalized_picard, abel_jacobi_m_hom

    ms = ModulusSheaves(g, m, sheaves)
    s = ms.std
    ctx = ModulusContext(g, m)
    nv, ne, ni = g.n_vertices, g.n_edges, m.size
    picm = ms.picm
    delta_bar_m = induced_hom(ctx.clhatm, picm, ms.delta_m_matrix, "delta_bar_m")
    report = {}
    _check(report, "δ̄_m: Clhat_m ≅ Pic_m", delta_bar_m.is_isomorphism())

    base = picard_geometric(g, s)
    forget = induced_hom(picm, base.pic, ms.forget_matrix)
    _check(report, "Pic_m → Pic surjective", forget.is_surjective())
    pic0m = preimage(forget, base.pic0)
    delta0 = induced_hom(ctx.clhat0m, picm, ms.delta_m_matrix)
    _check(report, "δ̄_m(Clhat0_m) = Pic0_m", picm.same_subgroup(delta0.image(), pic0m))

    _, chi_m, zeta_m = generalized_picard(ctx)
    q_m = induced_hom(ctx.pm, picm, ms.q_m_matrix, "q_m")
    _check(report, "δ̄_m ∘ χ_m = -(q_m)_*", delta0.compose(chi_m).equals(-q_m))
    q_m0 = induced_hom(ctx.pm, pic0m, ms.q_m_matrix)
    _check(report, "(q_m)_*: P_m ≅ Pic0_m", q_m0.is_isomorphism())
    iota_m = induced_hom(ctx.cl0m, ctx.clhat0m, IntMatrix.identity(nv + ni))
    aj_m = abel_jacobi_m_hom(ctx)
    _check(report, "-δ̄_m ∘ ι_m = q_m ∘ ζ_m ∘ AJ_m", (-delta0).compose(iota_m).equals(q_m.compose(zeta_m).compose(aj_m)))

    # Z_m computes the cohomology of the extended graph
    _, h1_zm = ms.const_m.cohomology()
    h1_ext = subquotient(ne + ni, IntMatrix.identity(ne + ni), ctx.dm)
    _check(report, "H1(Z_m) ≅ H1(extended graph)", induced_hom(h1_zm, h1_ext, IntMatrix.identity(ne + ni)).is_isomorphism())

    if m.is_reduced():
        report.update(_reduced_checks(g, m, ms, ctx))
    else:
        report.update(_pushout_check(g, m, ms, s))
    failed = [k for k, (ok, _) in report.items() if ok is False]
    if failed:
        raise TheoremViolation(f"rigidified Picard checks failed: {failed}", witness=failed)
    return PicardData(picm, delta_bar_m, pic0m, {"report": report, "ctx": ctx, "sheaves": ms, "q_m": q_m, "forget": forget})


def reduced_harm_sheaf(s: StandardSheaves, support) -> CellularSheaf:
    """Harm' : at support points only germs with value 0 and zero slope sum."""
    g = s.graph
    vi = g.vertex_index
    support = set(support)
    bases = []
    for i, v in enumerate(g.vertices):
        if v in support:
            width = s.harm_bases[i].rows
            rows = IntMatrix.vstack(s.diff_rows[i], IntMatrix.from_rows([[1] + [0] * (width - 1)]))
            bases.append(kernel_basis(rows))
        else:
            bases.append(s.harm_bases[i])
    return CellularSheaf(
        g,
        [b.cols for b in bases],
        [2] * g.n_edges,
        [s.pl.xi0[j] @ bases[vi[e.o]] for j, e in enumerate(g.edges)],
        [s.pl.xi1[j] @ bases[vi[e.t]] for j, e in enumerate(g.edges)],
    )


def _reduced_checks(g, m, ms: ModulusSheaves, ctx) -> dict:
    out = {}
    s = ms.std
    c = ctx.base.complex
    nv, ne, ni = g.n_vertices, g.n_edges, m.size
    harm_prime = reduced_harm_sheaf(s, m.points)
    _, h1_prime = cech_cohomology(harm_prime)
    rest = [i for i, v in enumerate(g.vertices) if v not in set(m.points)]
    pres = subquotient(nv, IntMatrix.identity(nv), c.box0.select_columns(rest))
    delta_prime = induced_hom(pres, h1_prime, s.delta_matrix)
    _check(out, "Z^V/□0 Z^(V∖S) ≅ H1(Harm')", delta_prime.is_isomorphism())
    to_total = induced_hom(h1_prime, ms.picm, IntMatrix.vstack(IntMatrix.identity(2 * ne), IntMatrix.zeros(ni, 2 * ne)))
    _check(out, "H1(Harm') ≅ H1(Harm_m)", to_total.is_isomorphism())
    return out


def _pushout_check(g, m, ms: ModulusSheaves, s: StandardSheaves) -> dict:
    """A non-reduced modulus against its reduction: rigidifications push out along Z^S → Z^I."""
    out = {}
    red = m.reduction()
    small = ModulusSheaves(g, red, s).picm
    big = ms.picm
    ne, ni, ns = g.n_edges, m.size, red.size
    sigma = IntMatrix.from_columns([tuple(int(w == p) for w in m.points) for p in red.points], ni)
    vertical = induced_hom(small, big, IntMatrix.block_diagonal(IntMatrix.identity(2 * ne), sigma))
    numerator = IntMatrix.identity(2 * ne + ns + ni)
    rel_small = IntMatrix.vstack(small.relation_images, IntMatrix.zeros(ni, small.relation_images.cols))
    glue = IntMatrix.vstack(IntMatrix.zeros(2 * ne, ns), IntMatrix.identity(ns), -sigma)
    pushout = subquotient(2 * ne + ns + ni, numerator, IntMatrix.hstack(rel_small, glue))
    to_big = IntMatrix.hstack(
        IntMatrix.vstack(IntMatrix.identity(2 * ne), IntMatrix.zeros(ni, 2 * ne)),
        IntMatrix.vstack(IntMatrix.zeros(2 * ne, ns), sigma),
        IntMatrix.vstack(IntMatrix.zeros(2 * ne, ni), IntMatrix.identity(ni)),
    )
    _check(out, "Pic_m0 → Pic_m well defined", vertical is not None)
    _check(out, "Pic_m is the pushout along Z^S → Z^I", induced_hom(pushout, big, to_big).is_isomorphism())
    return out


def verify_sign_law_m(g: Graph, m: Modulus, sheaves: StandardSheaves = None) -> dict:
    """``δ_m(d♯ê, 0) = class(-q ê, 0)`` and ``δ_m(0, î) = class(0, -î)``."""
    ms = ModulusSheaves(g, m, sheaves)
    c = GraphComplex(g)
    picm = ms.picm
    ne, ni, nv = g.n_edges, m.size, g.n_vertices
    out = {}

    def compare(name, lhs, rhs):
        ok = picm.project(tuple(a - b for a, b in zip(lhs, rhs))).is_zero()
        out[name] = (ok, None)
        if not ok:
            raise TheoremViolation(f"modulus sign law fails at {name}", witness=name)

    for j, e in enumerate(g.edges):
        source = tuple(c.d_adj.column(j)) + (0,) * ni
        target = tuple(-x for x in ms.q_m_matrix.column(j))
        compare(f"edge {e.id}", ms.delta_m_matrix @ source, target)
    for i in range(ni):
        source = (0,) * nv + tuple(int(k == i) for k in range(ni))
        target = tuple(-x for x in ms.q_m_matrix.column(ne + i))
        compare(f"index {i + 1}", ms.delta_m_matrix @ source, target)
    return out
