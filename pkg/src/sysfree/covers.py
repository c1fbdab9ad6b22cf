"""Discrete double-cover systole verifier.

Models the covering inequality sys(quotient) >= sys(cover)/2 on weighted
graphs: a fixed-point-free involution without fixed edges acts on the
cover, and shortest cycles are compared between the cover and the
quotient multigraph.  A cycle in the quotient lifts either to a closed
cycle of the same length or to one of twice the length, so the bound is
forced; even cycles with the antipodal involution attain equality.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import networkx as nx

from .errors import NoCycleError

Edge = tuple[Hashable, Hashable, float]


@dataclass(frozen=True)
class CoveringGraph:
    """Weighted graph with a free involution compatible with the edges.

    Edges whose endpoint pair is swapped by the involution would be fixed
    edges (they descend to loops) and are rejected; so are fixed vertices.
    """

    vertices: tuple[Hashable, ...]
    edges: tuple[Edge, ...]
    involution: Mapping[Hashable, Hashable]

    def __post_init__(self) -> None:
        verts = set(self.vertices)
        if len(verts) != len(self.vertices):
            raise ValueError("duplicate vertices")
        inv = dict(self.involution)
        if set(inv) != verts or set(inv.values()) != verts:
            raise ValueError("involution must permute the vertex set")
        for v in self.vertices:
            if inv[v] == v:
                raise ValueError(f"involution fixes vertex {v!r}")
            if inv[inv[v]] != v:
                raise ValueError(f"pairing is not an involution at {v!r}")
        edge_keys = Counter()
        for u, v, w in self.edges:
            if u not in verts or v not in verts:
                raise ValueError(f"edge ({u!r},{v!r}) has unknown endpoint")
            if u == v:
                raise ValueError(f"self-loop at {u!r} not allowed")
            if not w > 0:
                raise ValueError(f"edge weight must be positive, got {w}")
            if {inv[u], inv[v]} == {u, v}:
                raise ValueError(f"edge ({u!r},{v!r}) is fixed by the involution")
            edge_keys[self._key(u, v, w)] += 1
        for (u, v, w), count in edge_keys.items():
            if edge_keys[self._key(inv[u], inv[v], w)] != count:
                raise ValueError(
                    f"involution does not preserve edge ({u!r},{v!r},{w})")

    def _key(self, u: Hashable, v: Hashable, w: float):
        a, b = sorted((u, v), key=repr)
        return (a, b, w)

    def multigraph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for u, v, w in self.edges:
            g.add_edge(u, v, weight=w)
        return g

    def quotient_multigraph(self) -> nx.MultiGraph:
        """Identify v with involution(v); each involution orbit of edges
        descends to a single quotient edge."""
        inv = dict(self.involution)
        index = {v: i for i, v in enumerate(self.vertices)}

        def rep(v: Hashable) -> Hashable:
            return v if index[v] <= index[inv[v]] else inv[v]

        g = nx.MultiGraph()
        g.add_nodes_from({rep(v) for v in self.vertices})
        unmatched: Counter = Counter()
        for u, v, w in self.edges:
            key = self._key(u, v, w)
            mate = self._key(inv[u], inv[v], w)
            if unmatched[mate] > 0:
                unmatched[mate] -= 1
                continue
            unmatched[key] += 1
            g.add_edge(rep(u), rep(v), weight=w)
        return g


def shortest_cycle_length(g: nx.MultiGraph) -> float:
    """Weighted girth: for each edge, the shortest path between its ends
    avoiding that edge closes the best cycle through it."""
    best = math.inf
    for u, v, key, w in list(g.edges(keys=True, data="weight")):
        g.remove_edge(u, v, key)
        try:
            d = nx.dijkstra_path_length(g, u, v)
            best = min(best, d + w)
        except nx.NetworkXNoPath:
            pass
        finally:
            g.add_edge(u, v, key=key, weight=w)
    return best


@dataclass(frozen=True)
class CoveringCheck:
    cover_systole: float
    quotient_systole: float
    holds: bool


def graph_quotient_systole_check(graph: CoveringGraph) -> CoveringCheck:
    """Shortest-cycle lengths of the cover and its involution quotient, and
    whether the half-cover bound holds."""
    cover = graph.multigraph()
    if not nx.is_connected(cover):
        raise ValueError("covering graph must be connected")
    cover_sys = shortest_cycle_length(cover)
    quotient_sys = shortest_cycle_length(graph.quotient_multigraph())
    if math.isinf(cover_sys) or math.isinf(quotient_sys):
        raise NoCycleError("graph has no cycle; systole undefined")
    slack = 1e-9 * max(1.0, cover_sys)
    return CoveringCheck(
        cover_systole=cover_sys,
        quotient_systole=quotient_sys,
        holds=quotient_sys >= cover_sys / 2.0 - slack,
    )


def antipodal_cycle(n: int, weight: float = 1.0) -> CoveringGraph:
    """Even cycle C_n with the antipodal involution i -> i + n/2."""
    if n < 4 or n % 2:
        raise ValueError(f"antipodal cycle needs even n >= 4, got {n}")
    vertices = tuple(range(n))
    edges = tuple((i, (i + 1) % n, weight) for i in range(n))
    involution = {i: (i + n // 2) % n for i in range(n)}
    return CoveringGraph(vertices, edges, involution)


def voltage_double_cover(vertices: Sequence[Hashable],
                         edges: Sequence[Edge],
                         signs: Sequence[int]) -> CoveringGraph:
    """Double cover of a base graph from a Z/2 voltage on each edge: sheets
    0 and 1, with sign-1 edges crossing between them.  The deck involution
    swaps the sheets."""
    if len(signs) != len(edges):
        raise ValueError("one voltage sign per edge required")
    cover_vertices = tuple((v, s) for v in vertices for s in (0, 1))
    cover_edges = []
    for (u, v, w), sign in zip(edges, signs):
        if sign not in (0, 1):
            raise ValueError(f"voltage signs must be 0 or 1, got {sign}")
        for s in (0, 1):
            cover_edges.append(((u, s), (v, (s + sign) % 2), w))
    involution = {(v, s): (v, 1 - s) for v in vertices for s in (0, 1)}
    return CoveringGraph(cover_vertices, tuple(cover_edges), involution)
