"""Metric graphs with integer edge lengths and their unit-length models.

A :class:`MetricGraph` is a connected loopless multigraph whose edges carry
positive integer lengths.  Divisors live on a :class:`Model`, the subdivision
of every edge of length ``l`` into ``k * l`` unit segments.  Lattice points
interior to edge ``e<j>`` are named ``e<j>@<i>/<k*l>``, with ``i`` counted
from the edge's first endpoint.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple


class GraphError(ValueError):
    """Raised for structurally invalid graphs (loops, bad lengths, ...)."""

    code = "validation"


class DisconnectedGraphError(GraphError):
    code = "disconnected"


class Edge(NamedTuple):
    a: str
    b: str
    length: int = 1


INFINITY = math.inf


@dataclass(frozen=True)
class MetricGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    name: str | None = None

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        seen = set()
        for v in verts:
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            if not v or any(c.isspace() for c in v):
                raise GraphError(f"invalid vertex identifier {v!r}")
            seen.add(v)
        edges = []
        for e in self.edges:
            e = Edge(str(e[0]), str(e[1]), e[2] if len(e) > 2 else 1)
            if e.a == e.b:
                raise GraphError(f"loop edge at {e.a!r}; subdivide it first")
            if isinstance(e.length, bool) or not isinstance(e.length, int) or e.length < 1:
                raise GraphError(f"edge {e.a}-{e.b} has invalid length {e.length!r}")
            for v in (e.a, e.b):
                if v not in seen:
                    raise GraphError(f"edge endpoint {v!r} is not a declared vertex")
            edges.append(e)
        if not verts:
            raise GraphError("graph has no vertices")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))
        if not _is_connected(verts, self.edges):
            raise DisconnectedGraphError("graph must be connected")

    @classmethod
    def from_edges(cls, edges: Iterable, name: str | None = None, vertices: Iterable[str] = ()):
        """Build a graph from ``(a, b[, length])`` triples.

        Vertices are ordered by first appearance, after any explicit ``vertices``.
        """
        order: dict[str, None] = {str(v): None for v in vertices}
        norm = []
        for e in edges:
            a, b = str(e[0]), str(e[1])
            length = e[2] if len(e) > 2 else 1
            order.setdefault(a)
            order.setdefault(b)
            norm.append(Edge(a, b, length))
        return cls(tuple(order), tuple(norm), name)

    def with_lengths(self, lengths: Iterable[int], name: str | None = None) -> MetricGraph:
        lengths = list(lengths)
        if len(lengths) != len(self.edges):
            raise GraphError(f"expected {len(self.edges)} lengths, got {len(lengths)}")
        edges = tuple(Edge(e.a, e.b, int(l)) for e, l in zip(self.edges, lengths))
        return MetricGraph(self.vertices, edges, name or self.name)

    @property
    def total_length(self) -> int:
        return sum(e.length for e in self.edges)

    def valence(self, v: str) -> int:
        return sum((e.a == v) + (e.b == v) for e in self.edges)

    def neighbors(self, v: str) -> list[str]:
        out = []
        for e in self.edges:
            if e.a == v:
                out.append(e.b)
            elif e.b == v:
                out.append(e.a)
        return out


def _is_connected(vertices, edges) -> bool:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for e in edges:
        adj[e[0]].append(e[1])
        adj[e[1]].append(e[0])
    start = vertices[0]
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(vertices)


def genus(graph: MetricGraph) -> int:
    """First Betti number |E| - |V| + 1."""
    if not _is_connected(graph.vertices, graph.edges):
        raise DisconnectedGraphError("graph must be connected")
    return len(graph.edges) - len(graph.vertices) + 1


def girth(graph: MetricGraph, mode: str = "combinatorial") -> float | int:
    """Length of a shortest cycle, or ``INFINITY`` for a tree.

    ``mode="combinatorial"`` counts edges, ``mode="metric"`` sums lengths.
    Each edge ``uv`` closes a cycle with a shortest ``u``-``v`` path that
    avoids it; the minimum over edges is the girth.
    """
    if mode not in ("combinatorial", "metric"):
        raise ValueError(f"unknown girth mode {mode!r}")
    weight = [1 if mode == "combinatorial" else e.length for e in graph.edges]
    adj: dict[str, list[tuple[str, int, int]]] = {v: [] for v in graph.vertices}
    for idx, e in enumerate(graph.edges):
        adj[e.a].append((e.b, weight[idx], idx))
        adj[e.b].append((e.a, weight[idx], idx))

    best = INFINITY
    for idx, e in enumerate(graph.edges):
        if weight[idx] >= best:
            continue
        d = _shortest_path(adj, e.a, e.b, skip=idx, bound=best - weight[idx])
        if d + weight[idx] < best:
            best = d + weight[idx]
    return best


def _shortest_path(adj, src, dst, skip, bound):
    dist = {src: 0}
    heap = [(0, src)]
    while heap:
        d, v = heapq.heappop(heap)
        if v == dst:
            return d
        if d > dist.get(v, INFINITY) or d >= bound:
            continue
        for u, w, idx in adj[v]:
            if idx == skip:
                continue
            nd = d + w
            if nd < dist.get(u, INFINITY):
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return INFINITY


@dataclass(frozen=True, eq=False)
class Model:
    """Unit-length refinement of a metric graph at level ``k``.

    Vertex order is canonical: base vertices in declaration order, then the
    interior lattice points of each edge in edge order, nearest endpoint ``a``
    first.  All "lexicographic" orders in this package refer to this order.
    """

    base: MetricGraph
    k: int
    vertices: tuple[str, ...] = field(init=False)
    unit_edges: tuple[tuple[int, int], ...] = field(init=False)
    index: dict = field(init=False, repr=False)
    adjacency: tuple = field(init=False, repr=False)
    _coords: tuple = field(init=False, repr=False)
    cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        k = self.k
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise GraphError(f"refinement k must be a positive integer, got {k!r}")
        names = list(self.base.vertices)
        coords: list = [("vertex", v) for v in names]
        index = {v: i for i, v in enumerate(names)}
        unit: list[tuple[int, int]] = []
        for j, e in enumerate(self.base.edges):
            steps = k * e.length
            prev = index[e.a]
            for i in range(1, steps):
                name = f"e{j}@{i}/{steps}"
                index[name] = len(names)
                names.append(name)
                coords.append(("edge", j, Fraction(i, steps)))
                unit.append((prev, index[name]))
                prev = index[name]
            unit.append((prev, index[e.b]))

        nbrs: list[dict[int, int]] = [{} for _ in names]
        for a, b in unit:
            nbrs[a][b] = nbrs[a].get(b, 0) + 1
            nbrs[b][a] = nbrs[b].get(a, 0) + 1
        object.__setattr__(self, "vertices", tuple(names))
        object.__setattr__(self, "unit_edges", tuple(unit))
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(d.items())) for d in nbrs))
        object.__setattr__(self, "_coords", tuple(coords))
        object.__setattr__(self, "cache", {})

    def __eq__(self, other):
        return isinstance(other, Model) and self.k == other.k and self.base == other.base

    def __hash__(self):
        h = self.cache.get("hash")
        if h is None:
            h = self.cache["hash"] = hash((self.base, self.k))
        return h

    def __len__(self):
        return len(self.vertices)

    def valence(self, i: int) -> int:
        return sum(m for _, m in self.adjacency[i])

    def coordinate(self, vertex: str):
        """``("vertex", name)`` or ``("edge", edge_index, position)`` with position in (0, 1)."""
        return self._coords[self.index[vertex]]

    def vertex_at(self, edge: int, position) -> str:
        """Inverse of :meth:`coordinate` for points on a base edge (position in [0, 1])."""
        e = self.base.edges[edge]
        position = Fraction(position)
        steps = self.k * e.length
        i = position * steps
        if i.denominator != 1 or not 0 <= i <= steps:
            raise GraphError(f"position {position} is not a lattice point of edge {edge}")
        if i == 0:
            return e.a
        if i == steps:
            return e.b
        return f"e{edge}@{int(i)}/{steps}"

    def as_graph(self) -> MetricGraph:
        edges = tuple(Edge(self.vertices[a], self.vertices[b], 1) for a, b in self.unit_edges)
        return MetricGraph(self.vertices, edges, self.base.name)

    def is_base_vertex(self, i: int) -> bool:
        return i < len(self.base.vertices)

    @property
    def canonical_q(self) -> int:
        """Index of the least base vertex identifier; the default reduction base."""
        return self.index[min(self.base.vertices)]

    def distances(self, source: int) -> list[int]:
        """BFS distances (in unit edges) from model vertex index ``source``."""
        dist = [-1] * len(self.vertices)
        dist[source] = 0
        todo = deque([source])
        while todo:
            v = todo.popleft()
            for u, _ in self.adjacency[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    todo.append(u)
        return dist


_MODEL_CACHE: dict = {}


def refine(graph: MetricGraph, k: int = 1) -> Model:
    key = (graph, k)
    model = _MODEL_CACHE.get(key)
    if model is None:
        model = Model(graph, k)
        if len(_MODEL_CACHE) > 256:
            _MODEL_CACHE.clear()
        _MODEL_CACHE[key] = model
    return model
