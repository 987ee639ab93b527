"""Named graphs used throughout the package and its tests."""

from __future__ import annotations

from typing import Sequence

import networkx as nx

from .graph import MetricGraph


def _with(graph: MetricGraph, lengths):
    return graph if lengths is None else graph.with_lengths(lengths)


def _from_nx(g, name, lengths=None) -> MetricGraph:
    edges = [(str(a), str(b), 1) for a, b in sorted(g.edges())]
    vertices = [str(v) for v in sorted(g.nodes())]
    return _with(MetricGraph.from_edges(edges, name=name, vertices=vertices), lengths)


def k33(lengths: Sequence[int] | None = None) -> MetricGraph:
    """Complete bipartite graph on parts u1..u3 and w1..w3."""
    edges = [(f"u{i}", f"w{j}", 1) for i in (1, 2, 3) for j in (1, 2, 3)]
    verts = ["u1", "u2", "u3", "w1", "w2", "w3"]
    return _with(MetricGraph.from_edges(edges, name="k33", vertices=verts), lengths)


def _triple(x) -> tuple[int, int, int]:
    if isinstance(x, int):
        return (x, x, x)
    x = tuple(int(v) for v in x)
    if len(x) != 3:
        raise ValueError("expected one length or three lengths")
    return x


def wheel4(rim_inner=1, rim_outer=1, spokes=(1, 1, 1)) -> MetricGraph:
    """Planar genus-4 graph: inner triangle i1 i2 i3, outer triangle o1 o2 o3,
    spokes i_j - o_j.

    Each argument is one length for all three edges or three separate ones
    (rims ordered 12, 23, 31).
    """
    inner, outer, sp = _triple(rim_inner), _triple(rim_outer), _triple(spokes)
    pairs = [(1, 2), (2, 3), (3, 1)]
    edges = [(f"i{a}", f"i{b}", l) for (a, b), l in zip(pairs, inner)]
    edges += [(f"o{a}", f"o{b}", l) for (a, b), l in zip(pairs, outer)]
    edges += [(f"i{j}", f"o{j}", l) for j, l in zip((1, 2, 3), sp)]
    verts = ["i1", "i2", "i3", "o1", "o2", "o3"]
    return MetricGraph.from_edges(edges, name="wheel4", vertices=verts)


def petersen(lengths=None) -> MetricGraph:
    return _from_nx(nx.petersen_graph(), "petersen", lengths)


def heawood(lengths=None) -> MetricGraph:
    return _from_nx(nx.heawood_graph(), "heawood", lengths)


def pappus(lengths=None) -> MetricGraph:
    return _from_nx(nx.pappus_graph(), "pappus", lengths)


def cycle(n: int, length: int = 1) -> MetricGraph:
    if n < 2:
        raise ValueError("a cycle needs at least 2 vertices")
    edges = [(f"v{i}", f"v{(i % n) + 1}", length) for i in range(1, n + 1)]
    return MetricGraph.from_edges(edges, name=f"cycle{n}")


def path(n: int, length: int = 1) -> MetricGraph:
    if n == 1:
        return MetricGraph(("v1",), (), name="path1")
    edges = [(f"v{i}", f"v{i + 1}", length) for i in range(1, n)]
    return MetricGraph.from_edges(edges, name=f"path{n}")


NAMED = {
    "k33": k33,
    "wheel4": wheel4,
    "petersen": petersen,
    "heawood": heawood,
    "pappus": pappus,
}


def get(name: str) -> MetricGraph:
    """Look up a corpus graph by name; ``cycleN`` and ``pathN`` are also accepted."""
    if name in NAMED:
        return NAMED[name]()
    for prefix, fn in (("cycle", cycle), ("path", path)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return fn(int(name[len(prefix):]))
    raise KeyError(f"unknown corpus graph {name!r}")
