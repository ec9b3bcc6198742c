"""Harmonic morphisms of graphs and their action on class groups.

An edge either maps to an edge (orientation preserved) or collapses to a
vertex.  Chains push forward along ``φ_V`` and ``φ_E`` (collapsed edges go
to 0); cochains pull back along the transposes.  Multiplicities enter
through ``φ_m: v ↦ m(φ,v)·φ(v)`` and its transpose ``φ^m``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional

from .errors import NotHarmonicAt, NotWellDefined, PreconditionViolated, TheoremViolation
from .graph import Edge, Graph, Modulus, build_graph
from .groups import GroupHom, induced_hom
from .linalg import IntMatrix, SnfSolver, kernel_basis


@dataclass(frozen=True)
class EdgeImage:
    kind: str  # "edge" or "vertex"
    target: str


class GraphMorphism:
    def __init__(self, source: Graph, target: Graph, vertex_map: Mapping[str, str], edge_map: Mapping[str, object]):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_map = {k: _edge_image(v) for k, v in edge_map.items()}
        for v in source.vertices:
            if v not in self.vertex_map:
                raise ValueError(f"vertex {v!r} has no image")
            if self.vertex_map[v] not in target.vertex_index:
                raise ValueError(f"vertex {v!r} maps to unknown {self.vertex_map[v]!r}")
        for e in source.edges:
            if e.id not in self.edge_map:
                raise ValueError(f"edge {e.id!r} has no image")
            img = self.edge_map[e.id]
            po, pt = self.vertex_map[e.o], self.vertex_map[e.t]
            if img.kind == "vertex":
                if not (po == img.target == pt):
                    raise ValueError(f"collapsed edge {e.id!r} must have both ends over {img.target!r}")
            else:
                f = target.edge(img.target)
                if (po, pt) != (f.o, f.t):
                    raise ValueError(f"edge {e.id!r} does not map endpoints onto those of {f.id!r}")

    def __call__(self, v: str) -> str:
        return self.vertex_map[v]

    def is_collapsed(self, edge_id: str) -> bool:
        return self.edge_map[edge_id].kind == "vertex"

    @cached_property
    def vertex_matrix(self) -> IntMatrix:
        """``φ_V``: ``Z^V → Z^V'``."""
        s, t = self.source, self.target
        cols = [tuple(int(t.vertex_index[self.vertex_map[v]] == r) for r in range(t.n_vertices)) for v in s.vertices]
        return IntMatrix.from_columns(cols, t.n_vertices)

    @cached_property
    def edge_matrix(self) -> IntMatrix:
        """``φ_E`` on chains; collapsed edges go to 0."""
        s, t = self.source, self.target
        cols = []
        for e in s.edges:
            img = self.edge_map[e.id]
            k = t.edge_index[img.target] if img.kind == "edge" else -1
            cols.append(tuple(int(r == k) for r in range(t.n_edges)))
        return IntMatrix.from_columns(cols, t.n_edges)

    @cached_property
    def multiplicities(self) -> dict:
        return harmonic_multiplicities(self)

    @cached_property
    def weighted_vertex_matrix(self) -> IntMatrix:
        """``φ_m``: ``v ↦ m(φ,v)·φ(v)``."""
        m = self.multiplicities
        return IntMatrix.from_columns(
            [tuple(m[v] * x for x in col) for v, col in zip(self.source.vertices, self.vertex_matrix.columns())],
            self.target.n_vertices,
        )

    def to_dict(self) -> dict:
        return {
            "vertex_map": dict(self.vertex_map),
            "edge_map": {k: {img.kind: img.target} for k, img in self.edge_map.items()},
        }


def _edge_image(v) -> EdgeImage:
    if isinstance(v, EdgeImage):
        return v
    if isinstance(v, dict):
        if len(v) != 1 or next(iter(v)) not in ("edge", "vertex"):
            raise ValueError(f"bad edge image {v!r}")
        k = next(iter(v))
        return EdgeImage(k, v[k])
    if isinstance(v, tuple) and len(v) == 2:
        return EdgeImage(v[0], v[1])
    return EdgeImage("edge", v)


def morphism_from_dict(source: Graph, target: Graph, data: dict) -> GraphMorphism:
    return GraphMorphism(source, target, data["vertex_map"], data["edge_map"])


def compose(outer: GraphMorphism, inner: GraphMorphism) -> GraphMorphism:
    """``outer ∘ inner``."""
    vmap = {v: outer(inner(v)) for v in inner.source.vertices}
    emap = {}
    for e in inner.source.edges:
        img = inner.edge_map[e.id]
        if img.kind == "vertex":
            emap[e.id] = EdgeImage("vertex", outer(img.target))
        else:
            emap[e.id] = outer.edge_map[img.target]
    return GraphMorphism(inner.source, outer.target, vmap, emap)


def fibre_sizes(f: GraphMorphism, v: str) -> dict:
    """For each half-edge at ``φ(v)``, how many half-edges at ``v`` lie over it."""
    counts = {h: 0 for h in f.target.half_edges(f(v))}
    for eid, end in f.source.half_edges(v):
        img = f.edge_map[eid]
        if img.kind == "edge":
            counts[(img.target, end)] += 1
    return counts


def harmonic_multiplicities(f: GraphMorphism) -> dict:
    """``v ↦ m(φ,v)``; raises :class:`NotHarmonicAt` when fibres disagree."""
    out = {}
    for v in f.source.vertices:
        sizes = fibre_sizes(f, v)
        values = sorted(set(sizes.values()))
        if len(values) > 1:
            raise NotHarmonicAt(v, sizes)
        out[v] = values[0] if values else 0
    return out


def is_harmonic(f: GraphMorphism) -> bool:
    try:
        harmonic_multiplicities(f)
    except NotHarmonicAt:
        return False
    return True


def germ_pullback(f: GraphMorphism, v: str) -> IntMatrix:
    """Slopes at ``φ(v)`` to slopes at ``v``; collapsed half-edges get slope 0."""
    hs = f.source.half_edges(v)
    ht = f.target.half_edges(f(v))
    rows = []
    for eid, end in hs:
        img = f.edge_map[eid]
        rows.append([int(img.kind == "edge" and (img.target, end) == h) for h in ht])
    return IntMatrix.from_rows(rows, len(ht))


def harmonic_by_stalks(f: GraphMorphism) -> bool:
    """Stalk criterion: pulled-back germs with balanced slopes stay balanced."""
    for v in f.source.vertices:
        pb = germ_pullback(f, v)
        n_src, n_tgt = pb.rows, pb.cols
        balanced = kernel_basis(IntMatrix.from_rows([[1] * n_tgt], n_tgt))
        total = IntMatrix.from_rows([[1] * n_src], n_src) @ pb
        if not (total @ balanced).is_zero():
            return False
    return True


def _harmonic_or_raise(f: GraphMorphism):
    return f.multiplicities


def pushforward_cl(f: GraphMorphism, ctx=None, ctx_target=None) -> GroupHom:
    """``φ_*: Cl⁰(Γ) → Cl⁰(Γ')``, induced by ``φ_V``."""
    from .jacobian import JacobianContext

    _harmonic_or_raise(f)
    ctx = ctx or JacobianContext(f.source)
    ctx_target = ctx_target or JacobianContext(f.target)
    try:
        return induced_hom(ctx.cl0, ctx_target.cl0, f.vertex_matrix, "phi_*")
    except NotWellDefined as exc:
        raise TheoremViolation("pushforward does not preserve principal divisors", witness=exc.witness) from exc


def pullback_clhat(f: GraphMorphism, ctx=None, ctx_target=None, degree_zero: bool = False) -> GroupHom:
    """``φ^*: Ĉl(Γ') → Ĉl(Γ)``, induced by ``φ^m``."""
    from .jacobian import JacobianContext

    _harmonic_or_raise(f)
    ctx = ctx or JacobianContext(f.source)
    ctx_target = ctx_target or JacobianContext(f.target)
    src, dst = (ctx_target.clhat0, ctx.clhat0) if degree_zero else (ctx_target.clhat, ctx.clhat)
    try:
        return induced_hom(src, dst, f.weighted_vertex_matrix.T, "phi^*")
    except NotWellDefined as exc:
        raise TheoremViolation("pullback does not preserve principal codivisors", witness=exc.witness) from exc


def pullback_harmonic(f: GraphMorphism, W: IntMatrix = None, W_target: IntMatrix = None) -> IntMatrix:
    """Matrix ``T`` with ``W·T = φ¹·W'``: the pullback in harmonic bases."""
    from .complexes import GraphComplex

    _harmonic_or_raise(f)
    W = W if W is not None else GraphComplex(f.source).harmonic_basis
    W_target = W_target if W_target is not None else GraphComplex(f.target).harmonic_basis
    pulled = f.edge_matrix.T @ W_target
    solver = SnfSolver(W)
    cols = []
    for j, col in enumerate(pulled.columns()):
        t = solver.solve(col)
        if t is None:
            raise TheoremViolation("pulled-back form is not harmonic", witness=j)
        cols.append(t)
    return IntMatrix.from_columns(cols, W.cols)


def functoriality_checks(f: GraphMorphism) -> dict:
    """Unmodded checks: well-definedness, AJ naturality and adjointness."""
    from .jacobian import JacobianContext, abel_jacobi_hom

    out = {}
    mult = f.multiplicities
    out["stalk criterion agrees"] = (harmonic_by_stalks(f), None)
    ctx, ctx_t = JacobianContext(f.source), JacobianContext(f.target)
    push = pushforward_cl(f, ctx, ctx_t)
    out["pushforward Cl0 well defined"] = (True, None)
    full = induced_hom(ctx.cl, ctx_t.cl, f.vertex_matrix)
    out["pushforward Cl well defined"] = (full is not None, None)
    pullback_clhat(f, ctx, ctx_t)
    pullback_clhat(f, ctx, ctx_t, degree_zero=True)
    out["pullback Clhat and Clhat0 well defined"] = (True, None)
    T = pullback_harmonic(f, ctx.W, ctx_t.W)
    on_j = induced_hom(ctx.jac, ctx_t.jac, T.T, "tr(phi^*)")
    natural = abel_jacobi_hom(ctx_t).compose(push).equals(on_j.compose(abel_jacobi_hom(ctx)))
    out["AJ' ∘ φ_* = tr(φ^*) ∘ AJ"] = (natural, None)
    phi_m = f.weighted_vertex_matrix
    out["<φ_m x, y> = <x, φ^m y>"] = (adjointness_holds(phi_m, phi_m.T), None)
    all_one = all(m == 1 for m in mult.values())
    plain = adjointness_holds(f.vertex_matrix, phi_m.T)
    out["<φ_* x, y> = <x, φ^m y> exactly when all m = 1"] = (plain == all_one, {"plain": plain, "all_one": all_one})
    return out


def adjointness_holds(push: IntMatrix, pull: IntMatrix) -> bool:
    """``<push x, y>' = <x, pull y>`` for all standard basis vectors."""
    for i in range(push.cols):
        for j in range(push.rows):
            if push[j, i] != pull[i, j]:
                return False
    return True


# -- with modulus


def _supports(m: Modulus) -> set:
    return set(m.support)


def index_pushforward(f: GraphMorphism, m: Modulus, mt: Modulus) -> IntMatrix:
    """``μ_L: Z^I → Z^I'``, ``i ↦ m(φ,w_i)·i'`` with ``w'_{i'} = φ(w_i)``."""
    mult = f.multiplicities
    cols = []
    for w in m.points:
        img = f(w)
        cols.append(tuple(mult[w] * int(p == img) for p in mt.points))
    return IntMatrix.from_columns(cols, mt.size)


def index_pullback(f: GraphMorphism, m: Modulus, mt: Modulus) -> IntMatrix:
    """``φ^M: Z^I' → Z^I``, the transpose of ``i ↦ i'`` with ``w'_{i'} = φ(w_i)``."""
    rows = [[int(f(w) == p) for p in mt.points] for w in m.points]
    return IntMatrix.from_rows(rows, mt.size)


def modulus_functoriality(f: GraphMorphism, m: Modulus, mt: Modulus, direction: str) -> dict:
    """Pushforward or pullback with moduli ``m`` on the source, ``mt`` on the target.

    Pushforward needs every vertex of positive multiplicity over ``supp(mt)``
    to lie in ``supp(m)``; pullback needs ``supp(m) ⊆ φ⁻¹(supp(mt))``.
    """
    if direction not in ("pushforward", "pullback"):
        raise ValueError(f"unknown direction {direction!r}")
    if not (m.is_reduced() and mt.is_reduced()):
        raise PreconditionViolated("functoriality with modulus is implemented for reduced moduli")
    mult = f.multiplicities
    s, st = _supports(m), _supports(mt)
    if direction == "pushforward":
        bad = [v for v in f.source.vertices if mult[v] > 0 and f(v) in st and v not in s]
        if bad:
            raise PreconditionViolated(f"vertices {bad} lie over the target support but outside the source support")
        return _pushforward_m(f, m, mt)
    bad = [w for w in m.support if f(w) not in st]
    if bad:
        raise PreconditionViolated(f"support points {bad} do not lie over the target support")
    return _pullback_m(f, m, mt)


def _pushforward_m(f, m, mt) -> dict:
    from .modulus import ModulusContext, abel_jacobi_m_hom

    out = {}
    ctx, ctx_t = ModulusContext(f.source, m), ModulusContext(f.target, mt)
    mu = index_pushforward(f, m, mt)
    amb = IntMatrix.block_diagonal(f.vertex_matrix, mu)
    try:
        push_full = induced_hom(ctx.clm, ctx_t.clm, amb, "phi_*")
        push = induced_hom(ctx.cl0m, ctx_t.cl0m, amb, "phi_*")
    except NotWellDefined as exc:
        raise TheoremViolation("pushforward does not preserve m-principal divisors", witness=exc.witness) from exc
    out["Cl_m → Cl_m' well defined"] = (push_full is not None, None)
    # pull harmonic forms of the target extended graph back along φ¹ ⊕ μᵀ
    pull = IntMatrix.block_diagonal(f.edge_matrix.T, mu.T)
    solver = SnfSolver(ctx.Wm)
    cols = []
    for j, col in enumerate((pull @ ctx_t.Wm).columns()):
        t = solver.solve(col)
        if t is None:
            raise TheoremViolation("pulled-back form is not harmonic on the extended graph", witness=j)
        cols.append(t)
    T = IntMatrix.from_columns(cols, ctx.rank_m)
    on_j = induced_hom(ctx.jm, ctx_t.jm, T.T, "tr(phi^*)_m")
    ok = abel_jacobi_m_hom(ctx_t).compose(push).equals(on_j.compose(abel_jacobi_m_hom(ctx)))
    out["AJ_m' ∘ φ_* = tr(φ^*) ∘ AJ_m"] = (ok, None)
    _raise_failures(out, "pushforward with modulus")
    return out


class CechPullback:
    """Pullback of Čech cochains of Harm along a harmonic morphism."""

    def __init__(self, f: GraphMorphism, sheaves, sheaves_target):
        self.f = f
        s, st = sheaves, sheaves_target
        blocks = []
        for i, v in enumerate(f.source.vertices):
            vt = f(v)
            k = f.target.vertex_index[vt]
            slopes = germ_pullback(f, v)
            to_pl = IntMatrix.block_diagonal(IntMatrix.identity(1), slopes) @ st.harm_bases[k]
            solver = s._harm_solvers[i]
            cols = []
            for col in to_pl.columns():
                c = solver.solve(col)
                if c is None:
                    raise TheoremViolation(f"pulled-back germ at {v!r} is not harmonic", witness=v)
                cols.append(c)
            blocks.append((k, IntMatrix.from_columns(cols, s.harm_bases[i].cols)))
        rows = [[0] * st.harm.c0_rank for _ in range(s.harm.c0_rank)]
        for i, (k, b) in enumerate(blocks):
            r0, c0 = s.harm.vertex_offsets[i], st.harm.vertex_offsets[k]
            for a in range(b.rows):
                for c in range(b.cols):
                    rows[r0 + a][c0 + c] = b[a, c]
        self.degree0 = IntMatrix.from_rows(rows, st.harm.c0_rank)
        rows = [[0] * st.harm.c1_rank for _ in range(s.harm.c1_rank)]
        for j, e in enumerate(f.source.edges):
            img = f.edge_map[e.id]
            if img.kind == "edge":
                jt = f.target.edge_index[img.target]
                for a in range(2):
                    rows[2 * j + a][2 * jt + a] = 1
        self.degree1 = IntMatrix.from_rows(rows, st.harm.c1_rank)
        if s.harm.coboundary @ self.degree0 != self.degree1 @ st.harm.coboundary:
            raise TheoremViolation("cochain pullback does not commute with the Čech differential")


def _pullback_m(f, m, mt) -> dict:
    from .modulus import ModulusContext, generalized_picard
    from .sheaves import ModulusSheaves, StandardSheaves

    out = {}
    ctx, ctx_t = ModulusContext(f.source, m), ModulusContext(f.target, mt)
    phi_M = index_pullback(f, m, mt)
    amb = IntMatrix.block_diagonal(f.weighted_vertex_matrix.T, phi_M)
    try:
        pull_full = induced_hom(ctx_t.clhatm, ctx.clhatm, amb, "phi^*")
        pull0 = induced_hom(ctx_t.clhat0m, ctx.clhat0m, amb, "phi^*")
    except NotWellDefined as exc:
        raise TheoremViolation("pullback does not preserve m-principal codivisors", witness=exc.witness) from exc
    out["φ^*(Clhat_m') ⊆ Clhat_m and degree zero preserved"] = (pull_full is not None and pull0 is not None, None)

    phi_P_mat = IntMatrix.block_diagonal(f.edge_matrix.T, phi_M)
    try:
        phi_P = induced_hom(ctx_t.pm, ctx.pm, phi_P_mat, "phi_P")
    except NotWellDefined as exc:
        raise TheoremViolation("pullback does not map P_m' to P_m", witness=exc.witness) from exc
    _, chi, _ = generalized_picard(ctx)
    _, chi_t, _ = generalized_picard(ctx_t)
    out["χ_m ∘ φ_P = φ^* ∘ χ_m'"] = (chi.compose(phi_P).equals(pull0.compose(chi_t)), None)

    std, std_t = StandardSheaves(f.source), StandardSheaves(f.target)
    ms, ms_t = ModulusSheaves(f.source, m, std), ModulusSheaves(f.target, mt, std_t)
    cech = CechPullback(f, std, std_t)
    # evaluation at modulus points must match φ^M on the skyscraper part
    tot, tot_t = ms.harm_m.total_coboundary, ms_t.harm_m.total_coboundary
    deg1 = IntMatrix.block_diagonal(cech.degree1, phi_M)
    if tot @ cech.degree0 != deg1 @ tot_t:
        raise TheoremViolation("pullback does not commute with the rigidified differential")
    on_pic = induced_hom(ms_t.picm, ms.picm, deg1, "|phi|^*")
    delta = induced_hom(ctx.clhatm, ms.picm, ms.delta_m_matrix)
    delta_t = induced_hom(ctx_t.clhatm, ms_t.picm, ms_t.delta_m_matrix)
    out["δ̄_m ∘ φ^* = |φ|^* ∘ δ̄_m'"] = (delta.compose(pull_full).equals(on_pic.compose(delta_t)), None)
    q = induced_hom(ctx.pm, ms.picm, ms.q_m_matrix)
    q_t = induced_hom(ctx_t.pm, ms_t.picm, ms_t.q_m_matrix)
    out["q_m ∘ φ_P = |φ|^* ∘ q_m'"] = (q.compose(phi_P).equals(on_pic.compose(q_t)), None)
    _raise_failures(out, "pullback with modulus")
    return out


def _raise_failures(out: dict, what: str):
    failed = [k for k, (ok, _) in out.items() if ok is False]
    if failed:
        raise TheoremViolation(f"{what}: {failed}", witness=failed)


# -- fixtures and random covers


def two_cycle() -> Graph:
    return build_graph(["u", "v"], [("e1", "u", "v"), ("e2", "v", "u")])


def cover_c4_c2() -> GraphMorphism:
    from .graph import cycle_graph

    c4 = cycle_graph(4)
    vmap = {"v0": "u", "v1": "v", "v2": "u", "v3": "v"}
    emap = {"e0": "e1", "e1": "e2", "e2": "e1", "e3": "e2"}
    return GraphMorphism(c4, two_cycle(), vmap, emap)


def collapse_b2_k2() -> GraphMorphism:
    from .graph import banana_graph

    k2 = build_graph(["u", "v"], [("f", "u", "v")])
    return GraphMorphism(banana_graph(2), k2, {"u": "u", "v": "v"}, {"e1": "f", "e2": "f"})


def cyclic_cover(n: int, k: int) -> GraphMorphism:
    """``C_{nk} → C_n`` wrapping ``k`` times."""
    from .graph import cycle_graph

    big, small = cycle_graph(n * k), cycle_graph(n)
    return GraphMorphism(
        big, small, {f"v{i}": f"v{i % n}" for i in range(n * k)}, {f"e{i}": f"e{i % n}" for i in range(n * k)}
    )


def identity_morphism(g: Graph) -> GraphMorphism:
    return GraphMorphism(g, g, {v: v for v in g.vertices}, {e.id: e.id for e in g.edges})


def random_cover(base: Graph, rng: random.Random, degree: int, collapsed: int = 0, tries: int = 50) -> Optional[GraphMorphism]:
    """A connected degree-``degree`` cover of ``base``, possibly with extra collapsed edges.

    Each base edge lifts to ``degree`` edges matched by a random permutation
    of the fibres; collapsed edges join two vertices of one fibre.
    """
    for _ in range(tries):
        vs = [f"{v}#{k}" for v in base.vertices for k in range(degree)]
        edges, emap = [], {}
        for e in base.edges:
            perm = list(range(degree))
            rng.shuffle(perm)
            for k in range(degree):
                eid = f"{e.id}#{k}"
                edges.append(Edge(eid, f"{e.o}#{k}", f"{e.t}#{perm[k]}"))
                emap[eid] = EdgeImage("edge", e.id)
        for c in range(collapsed):
            v = rng.choice(base.vertices)
            a, b = rng.randrange(degree), rng.randrange(degree)
            eid = f"c{c}"
            edges.append(Edge(eid, f"{v}#{a}", f"{v}#{b}"))
            emap[eid] = EdgeImage("vertex", v)
        g = Graph(vs, edges)
        if g.is_connected():
            vmap = {f"{v}#{k}": v for v in base.vertices for k in range(degree)}
            return GraphMorphism(g, base, vmap, emap)
    return None
