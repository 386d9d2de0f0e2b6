import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from graphburn.errors import NotATree
from graphburn.generators import random_caterpillar, random_p_caterpillar, random_tree
from graphburn.graph import build_graph, path_graph
from graphburn.recognition import (
    CATERPILLAR,
    PATH,
    PCATERPILLAR,
    SPIDER,
    classify,
    classify_report,
    count_leaves,
    spine_decompose,
)

from oracles import edges_of, to_nx


def spine_with(l, legs):
    """Path 0..l-1 plus chains: ``legs`` lists (1-based position, depth)."""
    edges = [(i, i + 1) for i in range(l - 1)]
    n = l
    for pos, depth in legs:
        prev = pos - 1
        for _ in range(depth):
            edges.append((prev, n))
            prev = n
            n += 1
    return build_graph(n, edges)


def test_path_decomposition():
    d = spine_decompose(path_graph(4))
    assert d.l == 4 and d.p == 0 and d.leg_sum == (0, 0, 0, 0)


def test_two_short_legs_at_middle():
    d = spine_decompose(spine_with(5, [(3, 1), (3, 1)]))
    assert (d.l, d.p) == (5, 1)
    assert d.leg_sum[2] == 2 and d.leg_max[2] == 1


def test_depth_two_chain():
    g = spine_with(5, [(3, 2)])
    d = spine_decompose(g)
    assert (d.l, d.p, d.leg_sum[2], d.leg_max[2]) == (5, 2, 2, 2)
    # this tree is S_{2,2,2}, so the spider tag takes precedence; p is still 2
    assert classify(g).tag == SPIDER and classify(g).p == 2
    two_branches = spine_with(7, [(3, 2), (5, 1)])
    assert classify(two_branches).tag == PCATERPILLAR and classify(two_branches).p == 2


def test_classify_tags():
    c = classify(path_graph(9))
    assert (c.tag, c.p) == (PATH, 0)
    spider = build_graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert classify(spider).tag == SPIDER
    assert classify(spine_with(6, [(2, 1), (4, 1)])).tag == CATERPILLAR
    assert classify(build_graph(1, [])).tag == PATH


def test_count_leaves():
    assert count_leaves(path_graph(4)) == 2
    assert count_leaves(build_graph(9, [(0, i) for i in range(1, 9)])) == 8
    assert count_leaves(build_graph(1, [])) == 0


def test_not_a_tree():
    with pytest.raises(NotATree):
        spine_decompose(build_graph(3, [(0, 1), (1, 2), (0, 2)]))


def test_report_fields():
    r = classify_report(spine_with(5, [(2, 1), (4, 1)]))
    assert r == {"class": CATERPILLAR, "p": 1, "l": 5, "n": 7, "leaves": 4, "spine": [0, 1, 2, 3, 4]}


def _spine_distance(g, spine):
    h = to_nx(g.n, edges_of(g))
    dist = nx.multi_source_dijkstra_path_length(h, set(spine))
    return max(dist.values())


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 60), seed=st.integers(0, 2**40))
def test_decomposition_invariants(n, seed):
    g = random_tree(n, seed)
    d = spine_decompose(g)
    assert d.l + sum(d.leg_sum) == n
    assert d.p == _spine_distance(g, d.spine.vertices)
    for i, lm in enumerate(d.leg_max, start=1):
        assert lm <= min(i - 1, d.l - i)
    covered = set(d.spine.vertices)
    for legs in d.legs:
        for h in legs:
            assert not covered & set(h.vertices)
            covered |= set(h.vertices)
    assert covered == set(range(n))


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 40), seed=st.integers(0, 2**40))
def test_p1_iff_leaf_deletion_gives_path(n, seed):
    g = random_tree(n, seed)
    h = to_nx(n, edges_of(g))
    inner = h.subgraph([v for v in h if h.degree(v) > 1])
    pathlike = inner.number_of_nodes() == 0 or (
        nx.is_connected(inner) and max((deg for _, deg in inner.degree), default=0) <= 2
    )
    assert (spine_decompose(g).p <= 1) == pathlike


@settings(max_examples=40, deadline=None)
@given(n=st.integers(5, 120), seed=st.integers(0, 2**40))
def test_generated_classes(n, seed):
    assert spine_decompose(random_caterpillar(n, 3 + seed % (n - 2), seed)).p <= 1
    assert spine_decompose(random_p_caterpillar(n, 2, seed)).p <= 2
