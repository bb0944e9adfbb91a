"""Simple finite undirected graphs without isolated vertices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "GraphError",
    "Graph",
    "Bipartition",
    "build_graph",
    "bipartition",
    "find_odd_cycle",
    "neighbors",
    "is_connected",
    "components",
    "is_odd_cycle",
]


class GraphError(ValueError):
    """Invalid graph input. ``violations`` lists every problem found."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    adjacency: dict

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self):
        es = ", ".join(f"{u}-{v}" for u, v in self.edges)
        return f"Graph([{', '.join(self.vertices)}], [{es}])"

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class Bipartition:
    x: frozenset
    y: frozenset

    def side_of(self, v: str) -> str:
        return "x" if v in self.x else "y"


def build_graph(vertices: Iterable[str], edges: Iterable[Iterable[str]]) -> Graph:
    """Validate and freeze a graph, reporting every invariant violation at once."""
    problems: list[str] = []
    vlist = list(vertices)
    vset: set[str] = set()
    for v in vlist:
        if not isinstance(v, str) or not v:
            problems.append(f"invalid vertex id {v!r}")
        elif v in vset:
            problems.append(f"duplicate vertex {v}")
        else:
            vset.add(v)

    adj: dict[str, set[str]] = {v: set() for v in vset}
    seen: set[tuple[str, str]] = set()
    for e in edges:
        pair = list(e) if not isinstance(e, str) else [e]
        if len(pair) != 2:
            problems.append(f"edge {e!r} must have exactly two endpoints")
            continue
        u, v = pair
        if not isinstance(u, str) or not isinstance(v, str):
            problems.append(f"edge {e!r} has non-string endpoint")
            continue
        bad = False
        for w in (u, v):
            if w not in vset:
                problems.append(f"edge {u}-{v} has unknown endpoint {w}")
                bad = True
        if bad:
            continue
        if u == v:
            problems.append(f"self-loop at {u}")
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            problems.append(f"duplicate edge {key[0]}-{key[1]}")
            continue
        seen.add(key)
        adj[u].add(v)
        adj[v].add(u)

    for v in sorted(vset):
        if not adj[v]:
            problems.append(f"isolated vertex {v}")
    if not vset:
        problems.append("graph has no vertices")
    if problems:
        raise GraphError(problems)

    return Graph(
        vertices=tuple(sorted(vset)),
        edges=tuple(sorted(seen)),
        adjacency={v: frozenset(ns) for v, ns in sorted(adj.items())},
    )


def neighbors(g: Graph, v: str) -> frozenset:
    try:
        return g.adjacency[v]
    except KeyError:
        raise KeyError(f"unknown vertex {v!r}") from None


def components(g: Graph) -> list[list[str]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen: set[str] = set()
    out = []
    for root in g.vertices:
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def _two_color(g: Graph):
    """BFS 2-colouring anchored at the smallest vertex of each component.

    Returns (colour, parent, depth, conflict) where conflict is the first
    monochromatic edge met, or None.
    """
    colour: dict[str, int] = {}
    parent: dict[str, Optional[str]] = {}
    depth: dict[str, int] = {}
    for root in g.vertices:
        if root in colour:
            continue
        colour[root], parent[root], depth[root] = 0, None, 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u]):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return colour, parent, depth, (u, w)
    return colour, parent, depth, None


def bipartition(g: Graph) -> Optional[Bipartition]:
    colour, _, _, conflict = _two_color(g)
    if conflict is not None:
        return None
    return Bipartition(
        x=frozenset(v for v, c in colour.items() if c == 0),
        y=frozenset(v for v, c in colour.items() if c == 1),
    )


def find_odd_cycle(g: Graph) -> Optional[list[str]]:
    """A simple odd cycle as a vertex list (closing edge last -> first), or None."""
    _, parent, depth, conflict = _two_color(g)
    if conflict is None:
        return None
    u, w = conflict
    up, wp = [u], [w]
    while depth[up[-1]] > depth[wp[-1]]:
        up.append(parent[up[-1]])
    while depth[wp[-1]] > depth[up[-1]]:
        wp.append(parent[wp[-1]])
    while up[-1] != wp[-1]:
        up.append(parent[up[-1]])
        wp.append(parent[wp[-1]])
    # up: u .. lca, wp: w .. lca
    cycle = list(reversed(up)) + wp[:-1]
    assert is_odd_cycle(g, cycle)
    return cycle


def is_odd_cycle(g: Graph, cycle: list[str]) -> bool:
    if len(cycle) < 3 or len(cycle) % 2 == 0:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))
