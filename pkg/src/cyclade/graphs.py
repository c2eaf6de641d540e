"""Finite ADE and affine-ADE rooted bipartite multigraphs and loop counting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

FAMILY_TAGS = ("A", "Atilde", "D", "Dtilde", "E6", "E7", "E8",
               "E6tilde", "E7tilde", "E8tilde")

EXCEPTIONAL_TAGS = ("E6", "E7", "E8", "E6tilde", "E7tilde", "E8tilde")

# branch arms (vertex counts beyond the branch vertex), longest first;
# the root sits at the far end of the first arm
_ARMS = {
    "E6": (2, 2, 1),
    "E7": (3, 2, 1),
    "E8": (4, 2, 1),
    "E6tilde": (2, 2, 2),
    "E7tilde": (3, 3, 1),
    "E8tilde": (5, 2, 1),
}


class ParameterOutOfRange(ValueError):
    """Family parameter violates its lower bound or parity constraint."""


class UnsupportedFamily(ValueError):
    """No table entry or construction for the requested family."""


@dataclass(frozen=True)
class GraphFamily:
    """One of the ten graph shapes; param is the vertex count for the four
    parametrized series and is ignored for the exceptional tags."""

    tag: str
    param: int = 0

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise UnsupportedFamily(f"unknown family tag {self.tag!r}")

    @property
    def label(self) -> str:
        if self.tag in EXCEPTIONAL_TAGS:
            return self.tag
        return f"{self.tag}{self.param}"


@dataclass(frozen=True)
class RootedBipartiteGraph:
    """Symmetric multigraph adjacency with a distinguished root of parity 0."""

    vertex_count: int
    adjacency: Tuple[Tuple[int, ...], ...]
    root: int
    parity: Tuple[int, ...]

    def degree(self, v: int) -> int:
        return sum(self.adjacency[v])


def _finish(edges, n, root) -> RootedBipartiteGraph:
    adj = [[0] * n for _ in range(n)]
    for u, v, mult in edges:
        adj[u][v] += mult
        adj[v][u] += mult
    # two-coloring by distance from the root; also certifies connectivity
    parity = [-1] * n
    parity[root] = 0
    queue = [root]
    while queue:
        u = queue.pop()
        for v in range(n):
            if adj[u][v] and parity[v] == -1:
                parity[v] = 1 - parity[u]
                queue.append(v)
    if any(p == -1 for p in parity):
        raise ValueError("graph is not connected")
    for u in range(n):
        if adj[u][u]:
            raise ValueError("self-loop in adjacency")
        for v in range(n):
            if adj[u][v] and parity[u] == parity[v]:
                raise ValueError("edge inside one parity class")
    return RootedBipartiteGraph(n, tuple(tuple(r) for r in adj), root, tuple(parity))


def build_ade(family: GraphFamily) -> RootedBipartiteGraph:
    """Construct the rooted graph for the family, root at the marked vertex."""
    tag, m = family.tag, family.param
    if tag == "A":
        if m < 2:
            raise ParameterOutOfRange("A needs at least 2 vertices")
        edges = [(i, i + 1, 1) for i in range(m - 1)]
        return _finish(edges, m, 0)
    if tag == "Atilde":
        if m < 2 or m % 2:
            raise ParameterOutOfRange("Atilde needs an even vertex count >= 2")
        if m == 2:
            return _finish([(0, 1, 2)], 2, 0)
        edges = [(i, (i + 1) % m, 1) for i in range(m)]
        return _finish(edges, m, 0)
    if tag == "D":
        if m < 3:
            raise ParameterOutOfRange("D needs at least 3 vertices")
        # path of m-2 vertices with two tips on its far end, root at the near end
        edges = [(i, i + 1, 1) for i in range(m - 3)]
        edges += [(m - 3, m - 2, 1), (m - 3, m - 1, 1)]
        return _finish(edges, m, 0)
    if tag == "Dtilde":
        if m < 4:
            raise ParameterOutOfRange("Dtilde needs parameter >= 4")
        # central path of m-3 vertices, a two-tip fork at each end, m+1 vertices
        c = m - 3
        edges = [(i, i + 1, 1) for i in range(c - 1)]
        edges += [(0, c, 1), (0, c + 1, 1), (c - 1, c + 2, 1), (c - 1, c + 3, 1)]
        return _finish(edges, m + 1, c)
    if tag in _ARMS:
        arms = _ARMS[tag]
        edges = []
        nxt = 1
        arm_ends = []
        for length in arms:
            prev = 0
            for _ in range(length):
                edges.append((prev, nxt, 1))
                prev = nxt
                nxt += 1
            arm_ends.append(prev)
        return _finish(edges, nxt, arm_ends[0])
    raise UnsupportedFamily(f"no construction for {tag!r}")


def loop_counts(graph: RootedBipartiteGraph, count: int) -> list:
    """Numbers of closed walks of even length based at the root.

    Entry k counts the 2k-walks; computed by iterated exact matrix-vector
    products of the adjacency with the root indicator.
    """
    n = graph.vertex_count
    adj = graph.adjacency
    vec = [0] * n
    vec[graph.root] = 1
    out = [1]
    for _ in range(count):
        for _ in range(2):
            vec = [sum(adj[u][v] * vec[v] for v in range(n) if vec[v]) for u in range(n)]
        out.append(vec[graph.root])
    return out
