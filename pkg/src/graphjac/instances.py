"""Seeded random multigraphs, moduli and harmonic covers.

Graphs: pick ``n`` vertices, drop a random number of uniformly random
(possibly looped, possibly parallel) edges, then join components by extra
edges until connected.  Every graph has at least one edge.
"""

from __future__ import annotations

import random

from .graph import Edge, Graph, Modulus


def random_graph(rng: random.Random, max_v: int = 6, max_e: int = 10, min_v: int = 1) -> Graph:
    n = rng.randint(min_v, max_v)
    vs = [f"v{i}" for i in range(n)]
    budget = max_e - (n - 1)
    k = rng.randint(1 if n == 1 else 0, budget)
    edges = []
    for j in range(k):
        o, t = rng.randrange(n), rng.randrange(n)
        edges.append(Edge(f"e{j}", vs[o], vs[t]))
    g = Graph(vs, edges)
    labels = g.components()
    while len(set(labels)) > 1:
        first = labels[0]
        inside = [i for i in range(n) if labels[i] == first]
        outside = [i for i in range(n) if labels[i] != first]
        a, b = rng.choice(inside), rng.choice(outside)
        if rng.random() < 0.5:
            a, b = b, a
        edges.append(Edge(f"e{len(edges)}", vs[a], vs[b]))
        g = Graph(vs, edges)
        labels = g.components()
    return g


def random_modulus(rng: random.Random, g: Graph, max_i: int = 4, reduced: bool = False) -> Modulus:
    if reduced:
        k = rng.randint(1, g.n_vertices)
        chosen = set(rng.sample(list(g.vertices), k))
        return Modulus(g, [v for v in g.vertices if v in chosen])
    size = rng.randint(1, max_i)
    return Modulus(g, [rng.choice(g.vertices) for _ in range(size)])


def random_instance(seed: int, index: int, max_v: int = 6, max_i: int = 4):
    """The ``index``-th instance of the stream for ``seed``: ``(graph, modulus)``.

    Each instance has its own generator so instances can be evaluated in
    any order and replayed one by one.
    """
    rng = random.Random(f"{seed}:{index}")
    g = random_graph(rng, max_v=max_v)
    return g, random_modulus(rng, g, max_i=max_i)


def random_cover_instance(seed: int, index: int, max_v: int = 4):
    """A random harmonic cover with reduced moduli ``S = φ⁻¹(S')``."""
    from .morphisms import random_cover

    rng = random.Random(f"cover:{seed}:{index}")
    while True:
        base = random_graph(rng, max_v=max_v, max_e=6, min_v=2)
        f = random_cover(base, rng, rng.choice([1, 2, 3]), collapsed=rng.choice([0, 0, 1, 2]))
        if f is not None:
            break
    mt = random_modulus(rng, base, reduced=True)
    chosen = set(mt.points)
    m = Modulus(f.source, [v for v in f.source.vertices if f(v) in chosen])
    return f, m, mt
