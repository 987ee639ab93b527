"""Graphs glued from three trees along a shared root set."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .chipfiring import gonality
from .divisor import Divisor
from .graph import GraphError, MetricGraph, genus, girth, refine


class DecompositionError(GraphError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    roots: tuple[str, ...]
    trees: tuple[MetricGraph, MetricGraph, MetricGraph]

    def __post_init__(self):
        roots = tuple(str(v) for v in self.roots)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "trees", tuple(self.trees))
        if len(roots) < 3:
            raise DecompositionError("a tree decomposition needs at least 3 roots")
        if len(set(roots)) != len(roots):
            raise DecompositionError("roots must be distinct")
        if len(self.trees) != 3:
            raise DecompositionError("exactly three trees are required")
        rootset = set(roots)
        for i, t in enumerate(self.trees, 1):
            if len(t.edges) != len(t.vertices) - 1:
                raise DecompositionError(f"tree {i} is not acyclic")
            missing = rootset - set(t.vertices)
            if missing:
                raise DecompositionError(f"tree {i} misses roots {sorted(missing)}")
        for i, j in itertools.combinations(range(3), 2):
            shared = set(self.trees[i].vertices) & set(self.trees[j].vertices)
            if shared != rootset:
                extra = sorted(shared - rootset)
                raise DecompositionError(f"trees {i + 1} and {j + 1} share non-root vertices {extra}")

    @property
    def n(self) -> int:
        return len(self.roots)

    @property
    def edge_count(self) -> int:
        return sum(len(t.edges) for t in self.trees)


def glue(decomp: TreeDecomposition, name: str | None = None) -> MetricGraph:
    """Identify the three copies of the roots; edges are the disjoint union."""
    verts = list(decomp.roots)
    for t in decomp.trees:
        verts += [v for v in t.vertices if v not in decomp.roots]
    edges = [e for t in decomp.trees for e in t.edges]
    return MetricGraph(tuple(verts), tuple(edges), name)


def root_divisor(decomp: TreeDecomposition, k: int = 1, graph: MetricGraph | None = None) -> Divisor:
    """One chip on every root, on ``refine(glue(decomp), k)``."""
    graph = graph if graph is not None else glue(decomp)
    return Divisor.from_points(refine(graph, k), decomp.roots)


def _components(nv, adj, blocked):
    comp = [-1] * nv
    out = []
    for s in range(nv):
        if s in blocked or comp[s] >= 0:
            continue
        comp[s] = len(out)
        members = [s]
        todo = [s]
        while todo:
            v = todo.pop()
            for u in adj[v]:
                if u not in blocked and comp[u] < 0:
                    comp[u] = comp[s]
                    members.append(u)
                    todo.append(u)
        out.append(sorted(members))
    return out


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def find_tree_decomposition(graph: MetricGraph, n: int) -> TreeDecomposition | None:
    """Search for a decomposition of ``graph`` into three trees rooted on ``n`` vertices.

    Root sets are tried in lexicographic (model) order.  A non-root vertex
    belongs to exactly one tree, so every component of ``graph - roots`` is
    coloured as a block; root-root edges are coloured individually.  Colours
    are assigned by backtracking with acyclicity pruning, and trees are
    numbered by first use.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if genus(graph) != 2 * n - 2:
        return None
    names = graph.vertices
    idx = {v: i for i, v in enumerate(names)}
    nv = len(names)
    ends = [(idx[e.a], idx[e.b]) for e in graph.edges]
    adj = [[] for _ in range(nv)]
    valence = [0] * nv
    for a, b in ends:
        adj[a].append(b)
        adj[b].append(a)
        valence[a] += 1
        valence[b] += 1
    candidates = [v for v in range(nv) if valence[v] >= 3]

    for roots in itertools.combinations(candidates, n):
        rootset = set(roots)
        units = []  # (edge indices, non-root vertices)
        for members in _components(nv, adj, rootset):
            mset = set(members)
            es = [j for j, (a, b) in enumerate(ends) if a in mset or b in mset]
            units.append((es, members))
        for j, (a, b) in enumerate(ends):
            if a in rootset and b in rootset:
                units.append(([j], []))
        colours = _colour_units(nv, ends, units, roots)
        if colours is not None:
            return _build(graph, roots, units, colours)
    return None


def _colour_units(nv, ends, units, roots):
    last_use = {}
    for i, (es, _) in enumerate(units):
        for j in es:
            for v in ends[j]:
                if v in roots:
                    last_use[v] = i
    closing = [[] for _ in units]
    for r in roots:
        if r not in last_use:
            return None
        closing[last_use[r]].append(r)

    colours = [0] * len(units)
    seen_colours = {r: [0, 0, 0] for r in roots}

    def place(i, parents, used):
        if i == len(units):
            if used < 3:
                return False
            # acyclic + spanning all roots; a tree iff |E| = |V| - 1
            for c in range(3):
                ne = sum(len(units[u][0]) for u in range(len(units)) if colours[u] == c)
                nx = sum(len(units[u][1]) for u in range(len(units)) if colours[u] == c)
                if ne != len(roots) + nx - 1:
                    return False
            return True
        es, _ = units[i]
        for c in range(min(used + 1, 3)):
            parent = list(parents[c])
            ok = True
            for j in es:
                a, b = _find(parent, ends[j][0]), _find(parent, ends[j][1])
                if a == b:
                    ok = False
                    break
                parent[a] = b
            if not ok:
                continue
            touched = [v for j in es for v in ends[j] if v in seen_colours]
            for v in touched:
                seen_colours[v][c] += 1
            if all(all(seen_colours[r]) for r in closing[i]):
                colours[i] = c
                nxt = list(parents)
                nxt[c] = parent
                if place(i + 1, nxt, max(used, c + 1)):
                    return True
            for v in touched:
                seen_colours[v][c] -= 1
        return False

    start = [list(range(nv)) for _ in range(3)]
    return list(colours) if place(0, start, 0) else None


def _build(graph, roots, units, colours):
    names = graph.vertices
    trees = []
    for c in range(3):
        edge_ids = sorted(j for (es, _), col in zip(units, colours) if col == c for j in es)
        extra = sorted(v for (_, vs), col in zip(units, colours) if col == c for v in vs)
        verts = [names[v] for v in roots] + [names[v] for v in extra]
        edges = tuple(graph.edges[j] for j in edge_ids)
        trees.append(MetricGraph(tuple(verts), edges, f"T{c + 1}"))
    return TreeDecomposition(tuple(names[v] for v in roots), tuple(trees))


def random_tree_decomposition(
    rng: random.Random, n: int, max_tree_vertices: int = 12, max_length: int = 3
) -> TreeDecomposition:
    """Three random trees on roots ``r1..rn`` plus private vertices ``t<i>_<j>``."""
    if max_tree_vertices < n:
        raise ValueError("trees must be able to hold all roots")
    roots = [f"r{i}" for i in range(1, n + 1)]
    trees = []
    for i in range(1, 4):
        extra = [f"t{i}_{j}" for j in range(1, rng.randint(0, max_tree_vertices - n) + 1)]
        verts = roots + extra
        order = verts[:]
        rng.shuffle(order)
        edges = [(order[j], order[rng.randrange(j)], rng.randint(1, max_length)) for j in range(1, len(order))]
        trees.append(MetricGraph.from_edges(edges, name=f"T{i}", vertices=verts))
    return TreeDecomposition(tuple(roots), tuple(trees))


@dataclass(frozen=True)
class ScanRow:
    lengths: tuple[int, ...]
    girth: int | float
    gonality: int | None
    witness: Divisor | None
    searched: bool
    below_n: bool = False
    max_girth: bool = False

    @property
    def flag(self) -> str:
        parts = []
        if self.below_n:
            parts.append("below-n")
        if self.max_girth:
            parts.append("max-girth")
        if not self.searched:
            parts.append("witness-only")
        return ";".join(parts)


def compositions(total: int, parts: int):
    """All ways to write ``total`` as an ordered sum of ``parts`` positive integers."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _random_composition(rng, total, parts):
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def conjecture_scan(
    decomp: TreeDecomposition,
    length_budget: int,
    samples: int = 32,
    seed: int = 0,
    enumerate_all: bool = False,
    k: int = 1,
    max_model_vertices: int = 200,
) -> list[ScanRow]:
    """Girth and gonality over edge-length assignments with a fixed total length.

    Rows are sorted by length vector.  ``max_girth`` marks the largest metric
    girth among the assignments examined, which is not necessarily the true
    maximum.  Models larger than ``max_model_vertices`` skip the search and
    keep the root divisor as a witness (gonality reported as ``None``).
    """
    shape = glue(decomp)
    m = len(shape.edges)
    if length_budget < m:
        raise ValueError(f"length budget {length_budget} is below the edge count {m}")
    if enumerate_all:
        assignments = sorted(set(compositions(length_budget, m)))
    else:
        rng = random.Random(seed)
        assignments = sorted({_random_composition(rng, length_budget, m) for _ in range(samples)})

    rows = []
    for lengths in assignments:
        g = shape.with_lengths(lengths)
        gr = girth(g, "metric")
        model_size = len(g.vertices) + sum(k * l - 1 for l in lengths)
        if model_size > max_model_vertices:
            rows.append(ScanRow(lengths, gr, None, root_divisor(decomp, k, g), searched=False))
            continue
        res = gonality(g, decomp.n, k=k)
        rows.append(ScanRow(lengths, gr, res.value, res.witness, True, res.value is not None and res.value < decomp.n))
    best = max((r.girth for r in rows), default=None)
    return [
        ScanRow(r.lengths, r.girth, r.gonality, r.witness, r.searched, r.below_n, r.girth == best)
        for r in rows
    ]
