"""Named graph families and seeded random graphs used as test fixtures."""

from __future__ import annotations

import random
from string import ascii_lowercase

from .graph import Graph, build_graph

__all__ = ["names", "path", "cycle", "complete", "star", "random_graph", "standard_corpus"]


def names(n: int) -> list[str]:
    if n <= 26:
        return list(ascii_lowercase[:n])
    width = len(str(n - 1))
    return [f"v{i:0{width}d}" for i in range(n)]


def path(n: int) -> Graph:
    """P_n: n vertices, n-1 edges."""
    v = names(n)
    return build_graph(v, list(zip(v, v[1:])))


def cycle(n: int) -> Graph:
    v = names(n)
    return build_graph(v, [(v[i], v[(i + 1) % n]) for i in range(n)])


def complete(n: int) -> Graph:
    v = names(n)
    return build_graph(v, [(v[i], v[j]) for i in range(n) for j in range(i + 1, n)])


def star(k: int) -> Graph:
    """K_{1,k} with centre ``a``."""
    v = names(k + 1)
    return build_graph(v, [(v[0], w) for w in v[1:]])


def random_graph(rng: random.Random, max_vertices: int = 12) -> Graph:
    """G(n, p) with n in 2..max_vertices; isolated vertices get one random edge."""
    n = rng.randint(2, max_vertices)
    p = rng.uniform(0.15, 0.6)
    v = names(n)
    edges = {(v[i], v[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    for i in range(n):
        if not any(v[i] in e for e in edges):
            j = rng.choice([x for x in range(n) if x != i])
            edges.add((v[min(i, j)], v[max(i, j)]))
    return build_graph(v, sorted(edges))


def standard_corpus(n_random: int = 50, seed: int = 0) -> list[tuple[str, Graph]]:
    """Paths P2..P6, cycles C3..C8, K2..K5, stars K1,1..K1,5 and seeded random graphs."""
    out = [(f"P{n}", path(n)) for n in range(2, 7)]
    out += [(f"C{n}", cycle(n)) for n in range(3, 9)]
    out += [(f"K{n}", complete(n)) for n in range(2, 6)]
    out += [(f"K1,{k}", star(k)) for k in range(1, 6)]
    rng = random.Random(seed)
    out += [(f"random{i:02d}", random_graph(rng)) for i in range(n_random)]
    return out
