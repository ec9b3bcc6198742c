"""Oriented multigraphs, moduli and the extended graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DanglingEndpoint, DuplicateId, EmptyVertexSet, UnknownEdge

STAR = "⋆"


@dataclass(frozen=True)
class Edge:
    id: str
    o: str
    t: str

    @property
    def is_loop(self) -> bool:
        return self.o == self.t


class Graph:
    """Finite oriented multigraph; loops and parallel edges are allowed.

    Insertion order of vertices and edges fixes every matrix basis used
    downstream.
    """

    def __init__(self, vertices: Sequence[str], edges: Sequence[Edge]):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.edge_index = {e.id: i for i, e in enumerate(self.edges)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self.edges[self.edge_index[edge_id]]
        except KeyError:
            raise UnknownEdge(edge_id) from None

    def incident_edges(self, v: str) -> list:
        return [e for e in self.edges if v in (e.o, e.t)]

    def half_edges(self, v: str) -> list:
        """Half-edges at ``v`` as ``(edge_id, end)``; end 0 sits at o(e), end 1 at t(e)."""
        out = []
        for e in self.edges:
            if e.o == v:
                out.append((e.id, 0))
            if e.t == v:
                out.append((e.id, 1))
        return out

    def isolated_vertices(self) -> list:
        touched = {e.o for e in self.edges} | {e.t for e in self.edges}
        return [v for v in self.vertices if v not in touched]

    def components(self) -> list:
        """Component label per vertex (labels numbered by first vertex)."""
        parent = list(range(self.n_vertices))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for e in self.edges:
            a, b = find(self.vertex_index[e.o]), find(self.vertex_index[e.t])
            if a != b:
                parent[max(a, b)] = min(a, b)
        labels, out = {}, []
        for i in range(self.n_vertices):
            root = find(i)
            labels.setdefault(root, len(labels))
            out.append(labels[root])
        return out

    def n_components(self) -> int:
        return len(set(self.components()))

    def is_connected(self) -> bool:
        return self.n_components() == 1

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "o": e.o, "t": e.t} for e in self.edges],
        }

    def __eq__(self, other):
        return isinstance(other, Graph) and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        es = ", ".join(f"{e.id}:{e.o}->{e.t}" for e in self.edges)
        return f"Graph(V={list(self.vertices)}, E=[{es}])"


def build_graph(vertices: Iterable[str], edges: Iterable) -> Graph:
    """Validate and build a graph.

    ``edges`` may hold :class:`Edge` objects, ``(id, o, t)`` triples or
    dicts with keys ``id``, ``o``, ``t``.
    """
    vertices = [str(v) for v in vertices]
    if not vertices:
        raise EmptyVertexSet("a graph needs at least one vertex")
    seen = set()
    for v in vertices:
        if v in seen:
            raise DuplicateId(f"vertex {v!r} appears twice")
        seen.add(v)
    out = []
    edge_ids = set()
    for item in edges:
        if isinstance(item, Edge):
            e = item
        elif isinstance(item, dict):
            e = Edge(str(item["id"]), str(item["o"]), str(item["t"]))
        else:
            eid, o, t = item
            e = Edge(str(eid), str(o), str(t))
        if e.id in edge_ids:
            raise DuplicateId(f"edge {e.id!r} appears twice")
        edge_ids.add(e.id)
        for end in (e.o, e.t):
            if end not in seen:
                raise DanglingEndpoint(f"edge {e.id!r} references unknown vertex {end!r}")
        out.append(e)
    return Graph(vertices, out)


class Modulus:
    """Ordered family ``i ↦ w_i`` of vertices; repetitions make it non-reduced."""

    def __init__(self, graph: Graph, points: Sequence[str]):
        points = tuple(str(p) for p in points)
        if not points:
            raise ValueError("a modulus needs at least one point")
        for p in points:
            if p not in graph.vertex_index:
                raise DanglingEndpoint(f"modulus point {p!r} is not a vertex")
        self.graph = graph
        self.points = points

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def support(self) -> list:
        """Distinct points in vertex order."""
        s = set(self.points)
        return [v for v in self.graph.vertices if v in s]

    def is_reduced(self) -> bool:
        return len(set(self.points)) == len(self.points)

    def indices_at(self, v: str) -> list:
        return [i for i, w in enumerate(self.points) if w == v]

    def incidence(self):
        """The |V| × |I| matrix of ρ (column i is the basis vector of w_i)."""
        from .linalg import IntMatrix

        vi = self.graph.vertex_index
        return IntMatrix.from_rows(
            [[int(vi[w] == r) for w in self.points] for r in range(self.graph.n_vertices)], self.size
        )

    def reduction(self) -> "Modulus":
        return Modulus(self.graph, self.support)

    def __repr__(self):
        return " + ".join(self.points)


@dataclass(frozen=True)
class ExtendedGraph:
    graph: Graph
    star_vertex: str
    modulus_edges: tuple
    base: Graph
    modulus: Modulus

    def forget(self) -> Graph:
        """Drop the star vertex and the modulus edges."""
        extra = set(self.modulus_edges)
        return Graph(
            [v for v in self.graph.vertices if v != self.star_vertex],
            [e for e in self.graph.edges if e.id not in extra],
        )


def modulus_edge_id(i: int, star: str = STAR) -> str:
    return f"{star}e{i + 1}"


def extend_with_modulus(g: Graph, m: Modulus, star: str = STAR) -> ExtendedGraph:
    """Add a star vertex and one edge ``star -> w_i`` per modulus index."""
    if star in g.vertex_index:
        raise DuplicateId(f"star vertex id {star!r} collides with a vertex")
    new_edges = []
    for i, w in enumerate(m.points):
        eid = modulus_edge_id(i, star)
        if eid in g.edge_index:
            raise DuplicateId(f"modulus edge id {eid!r} collides with an edge")
        new_edges.append(Edge(eid, star, w))
    ext = Graph(list(g.vertices) + [star], list(g.edges) + new_edges)
    for i, e in enumerate(new_edges):
        assert e.o == star and e.t == m.points[i]
    return ExtendedGraph(ext, star, tuple(e.id for e in new_edges), g, m)


def spanning_forest(g: Graph):
    """Greedy spanning forest scanning edges in id order.

    Returns ``(edge_ids, component_labels)``; an edge is kept when it joins
    two vertices not yet connected.
    """
    parent = list(range(g.n_vertices))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    kept = []
    for e in g.edges:
        a, b = find(g.vertex_index[e.o]), find(g.vertex_index[e.t])
        if a != b:
            parent[max(a, b)] = min(a, b)
            kept.append(e.id)
    return kept, g.components()


def reverse_edges(g: Graph, subset: Iterable[str]) -> Graph:
    subset = set(subset)
    for eid in subset:
        if eid not in g.edge_index:
            raise UnknownEdge(eid)
    return Graph(g.vertices, [Edge(e.id, e.t, e.o) if e.id in subset else e for e in g.edges])


def graph_from_dict(data: dict):
    """Parse the JSON graph schema; returns ``(graph, modulus or None)``."""
    g = build_graph(data["vertices"], data.get("edges", []))
    pts = data.get("modulus")
    return g, (Modulus(g, pts) if pts else None)


# small named graphs used in tests and examples


def cycle_graph(n: int, prefix: str = "v") -> Graph:
    vs = [f"{prefix}{i}" for i in range(n)]
    return build_graph(vs, [(f"e{i}", vs[i], vs[(i + 1) % n]) for i in range(n)])


def complete_graph(n: int) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    es = []
    for i in range(n):
        for j in range(i + 1, n):
            es.append((f"e{i}{j}", vs[i], vs[j]))
    return build_graph(vs, es)


def banana_graph(k: int) -> Graph:
    return build_graph(["u", "v"], [(f"e{i + 1}", "u", "v") for i in range(k)])


def triangle_w1_w2_v() -> Graph:
    return build_graph(["w1", "w2", "v"], [("g", "w1", "w2"), ("h", "w2", "v"), ("f", "v", "w1")])


def path_graph(n: int) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    return build_graph(vs, [(f"e{i}", vs[i], vs[i + 1]) for i in range(n - 1)])
