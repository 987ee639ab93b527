import itertools
import random

import pytest

from graphdiv import corpus
from graphdiv.chipfiring import gonality, rank, rank_value
from graphdiv.graph import MetricGraph, genus, girth
from graphdiv.treedecomp import (
    DecompositionError,
    TreeDecomposition,
    compositions,
    conjecture_scan,
    find_tree_decomposition,
    glue,
    random_tree_decomposition,
    root_divisor,
)

import oracles


def star_decomposition():
    roots = ("u1", "u2", "u3")
    trees = tuple(
        MetricGraph.from_edges([(f"w{i}", r, 1) for r in roots], name=f"T{i}", vertices=roots) for i in (1, 2, 3)
    )
    return TreeDecomposition(roots, trees)


def edge_multiset(g):
    return sorted((tuple(sorted((e.a, e.b))), e.length) for e in g.edges)


def test_three_stars_glue_to_k33():
    g = glue(star_decomposition())
    assert edge_multiset(g) == edge_multiset(corpus.k33())
    assert genus(g) == 4


def test_decomposition_invariants_are_enforced():
    roots = ("a", "b", "c")
    path = MetricGraph.from_edges([("a", "b", 1), ("b", "c", 1)], vertices=roots)
    with pytest.raises(DecompositionError, match="at least 3 roots"):
        TreeDecomposition(("a", "b"), (path, path, path))
    cyc = MetricGraph.from_edges([("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    with pytest.raises(DecompositionError, match="acyclic"):
        TreeDecomposition(roots, (cyc, path, path))
    short = MetricGraph.from_edges([("a", "b", 1)])
    with pytest.raises(DecompositionError, match="misses roots"):
        TreeDecomposition(roots, (short, path, path))
    t1 = MetricGraph.from_edges([("a", "x", 1), ("x", "b", 1), ("x", "c", 1)])
    with pytest.raises(DecompositionError, match="share non-root"):
        TreeDecomposition(roots, (t1, t1, path))


def test_root_divisor_of_star_decomposition():
    D = root_divisor(star_decomposition())
    assert D.chips == {"u1": 1, "u2": 1, "u3": 1}
    assert rank(D).rank == 1


def test_find_decomposition_of_k33_is_star():
    d = find_tree_decomposition(corpus.k33(), 3)
    assert d.roots == ("u1", "u2", "u3")
    assert sorted(len(t.edges) for t in d.trees) == [3, 3, 3]
    assert sorted(len(t.vertices) for t in d.trees) == [4, 4, 4]
    assert edge_multiset(glue(d)) == edge_multiset(corpus.k33())


@pytest.mark.parametrize(
    "graph,n", [(corpus.petersen(), 4), (corpus.heawood(), 5), (corpus.pappus(), 6)], ids=["petersen", "heawood", "pappus"]
)
def test_named_graphs_decompose(graph, n):
    d = find_tree_decomposition(graph, n)
    assert d is not None and d.n == n
    assert edge_multiset(glue(d)) == edge_multiset(graph)
    assert genus(glue(d)) == 2 * n - 2
    D = root_divisor(d)
    assert D.degree == n
    assert rank_value(D) == 1


def _exhaustive_decomposable(graph, n):
    """Try every 3-colouring of the edges and every root set."""
    for roots in itertools.combinations(graph.vertices, n):
        for colours in itertools.product(range(3), repeat=len(graph.edges)):
            trees = []
            for c in range(3):
                es = [e for e, col in zip(graph.edges, colours) if col == c]
                verts = set(roots) | {v for e in es for v in (e.a, e.b)}
                try:
                    trees.append(MetricGraph.from_edges(es, vertices=sorted(verts)))
                except Exception:
                    break
            else:
                try:
                    TreeDecomposition(roots, tuple(trees))
                    return True
                except DecompositionError:
                    pass
    return False


def test_triangle_has_no_decomposition():
    tri = corpus.cycle(3)
    assert not _exhaustive_decomposable(tri, 3)
    assert find_tree_decomposition(tri, 3) is None


def test_genus_mismatch_returns_none():
    assert find_tree_decomposition(corpus.petersen(), 3) is None
    with pytest.raises(ValueError):
        find_tree_decomposition(corpus.k33(), 2)


def test_small_search_agrees_with_exhaustive_colouring():
    # banana-like graphs of genus 4 with 3 roots
    candidates = [
        MetricGraph.from_edges([("a", "b"), ("a", "b"), ("a", "b"), ("b", "c"), ("b", "c"), ("b", "c")]),
        MetricGraph.from_edges([("a", "b"), ("a", "b"), ("b", "c"), ("b", "c"), ("c", "a"), ("c", "a")]),
        MetricGraph.from_edges([("a", "b"), ("a", "b"), ("a", "b"), ("a", "b"), ("b", "c"), ("b", "c")]),
    ]
    for g in candidates:
        assert (find_tree_decomposition(g, 3) is not None) == _exhaustive_decomposable(g, 3)


def test_random_decompositions_round_trip():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(3, 6)
        d = random_tree_decomposition(rng, n, max_tree_vertices=8, max_length=2)
        g = glue(d)
        assert genus(g) == 2 * n - 2
        found = find_tree_decomposition(g, n)
        assert found is not None
        assert edge_multiset(glue(found)) == edge_multiset(g)


def test_random_decomposition_respects_limits():
    rng = random.Random(5)
    for _ in range(20):
        d = random_tree_decomposition(rng, 4, max_tree_vertices=12, max_length=3)
        assert all(len(t.vertices) <= 12 for t in d.trees)
        assert all(1 <= e.length <= 3 for t in d.trees for e in t.edges)


def test_compositions_count():
    assert len(list(compositions(12, 9))) == oracles.composition_count(12, 9)
    assert all(sum(c) == 12 and min(c) >= 1 for c in compositions(12, 9))


def test_scan_k33_unit_lengths():
    rows = conjecture_scan(find_tree_decomposition(corpus.k33(), 3), 9, enumerate_all=True)
    assert len(rows) == 1
    row = rows[0]
    assert row.lengths == (1,) * 9
    assert row.girth == 4 and row.gonality == 3
    assert row.flag == "max-girth"


def test_scan_rows_sorted_and_bounded():
    d = find_tree_decomposition(corpus.k33(), 3)
    rows = conjecture_scan(d, 11, samples=10, seed=2)
    assert [r.lengths for r in rows] == sorted(r.lengths for r in rows)
    for r in rows:
        assert sum(r.lengths) == 11
        assert r.gonality <= 3
        assert r.girth == girth(glue(d).with_lengths(r.lengths), "metric")


def test_scan_flags_degenerate_decomposition():
    # T1 and T2 both use the edge r1-r3, so the glued graph has a 2-cycle
    roots = ("r1", "r2", "r3", "r4")
    t1 = MetricGraph.from_edges([("r3", "r1"), ("r2", "r3"), ("r4", "r1")], vertices=roots)
    t2 = MetricGraph.from_edges([("r2", "r1"), ("r4", "r2"), ("r3", "r1")], vertices=roots)
    t3 = MetricGraph.from_edges(
        [("r3", "x"), ("r4", "r3"), ("r2", "x"), ("r1", "r2"), ("y", "x")], vertices=roots
    )
    d = TreeDecomposition(roots, (t1, t2, t3))
    g = glue(d)
    assert girth(g) == 2
    res = gonality(g, 4)
    assert res.value == 3
    assert rank_value(res.witness) >= 1
    m = len(g.edges)
    rows = conjecture_scan(d, m, enumerate_all=True)
    assert [r.lengths for r in rows] == [(1,) * m]
    assert rows[0].below_n and "below-n" in rows[0].flag


def test_scan_marks_oversized_models_witness_only():
    d = find_tree_decomposition(corpus.k33(), 3)
    rows = conjecture_scan(d, 12, samples=3, max_model_vertices=5)
    assert all(not r.searched and r.gonality is None and r.witness.degree == 3 for r in rows)
    assert all("witness-only" in r.flag for r in rows)


def test_scan_rejects_small_budget():
    with pytest.raises(ValueError):
        conjecture_scan(find_tree_decomposition(corpus.k33(), 3), 8)
