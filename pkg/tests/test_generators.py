import collections
import json

import pytest
from hypothesis import given, settings, strategies as st

from graphburn.engine import sqrt_ceil
from graphburn.errors import InfeasibleSpec
from graphburn.generators import (
    GenSpec,
    SplitMix64,
    generate,
    prufer_to_tree,
    random_3partition_instance,
    random_caterpillar,
    random_leafy_tree,
    random_p_caterpillar,
    random_tree,
    sidecar_text,
)
from graphburn.graph import build_graph, format_graph, is_tree
from graphburn.recognition import count_leaves, spine_decompose
from graphburn.reduction import verify_partition

from oracles import NumpySplitMix64, edges_of, to_nx

import networkx as nx

# first outputs for seed 1234567, as published with the reference generator
REFERENCE = [
    6457827717110365317,
    3203168211198807973,
    9817491932198370423,
    4593380528125082431,
    16408922859458223821,
]


def test_splitmix_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == REFERENCE


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**64 - 1))
def test_splitmix_matches_numpy(seed):
    a, b = SplitMix64(seed), NumpySplitMix64(seed)
    assert [a.next_u64() for _ in range(20)] == [b.next() for _ in range(20)]


def test_bounded_draws_stay_in_range():
    rng = SplitMix64(7)
    assert all(0 <= rng.below(3) < 3 for _ in range(500))
    assert {rng.between(2, 4) for _ in range(200)} == {2, 3, 4}
    with pytest.raises(ValueError):
        rng.below(0)


def test_caterpillar_examples():
    g = random_caterpillar(9, 9, 1)
    assert sorted(edges_of(g)) == [(i, i + 1) for i in range(8)]
    g = random_caterpillar(7, 5, 1)
    d = spine_decompose(g)
    assert d.l == 5 and d.p <= 1 and sum(d.leg_sum) == 2
    with pytest.raises(InfeasibleSpec):
        random_caterpillar(5, 2, 1)
    with pytest.raises(InfeasibleSpec):
        random_caterpillar(5, 6, 1)


def test_p_caterpillar_examples():
    g = random_p_caterpillar(20, 2, 7)
    assert is_tree(g) and g.n == 20 and spine_decompose(g).p <= 2
    with pytest.raises(InfeasibleSpec):
        random_p_caterpillar(4, 3, 1)


def test_random_tree_examples():
    assert random_tree(1, 5).n == 1
    assert is_tree(random_tree(2, 5))
    with pytest.raises(InfeasibleSpec):
        random_tree(0, 5)


def test_prufer_decoding_matches_networkx():
    for seq in ([3, 3, 3, 4], [0, 1, 2], [5, 0, 5, 2]):
        n = len(seq) + 2
        mine = sorted(edges_of(prufer_to_tree(seq, n)))
        theirs = sorted(tuple(sorted(e)) for e in nx.from_prufer_sequence(seq).edges)
        assert mine == theirs


def test_prufer_uniformity_n4():
    # 16 labelled trees on 4 vertices: 12 paths and 4 stars
    counts = collections.Counter()
    for seed in range(10_000):
        g = random_tree(4, seed)
        counts["star" if g.max_degree() == 3 else "path"] += 1
    assert abs(counts["path"] / 10_000 - 0.75) < 0.03


def test_same_spec_same_bytes():
    for spec in (
        GenSpec("tree", 3, n=40),
        GenSpec("caterpillar", 3, n=40, l=20),
        GenSpec("p_caterpillar", 3, n=40, p=2),
        GenSpec("leafy", 3),
    ):
        a, b = generate(spec), generate(spec)
        assert format_graph(a) == format_graph(b)
        assert sidecar_text(spec, a) == sidecar_text(spec, b)
        assert GenSpec.from_json(json.loads(json.dumps(spec.to_json()))) == spec
    assert format_graph(generate(GenSpec("tree", 3, n=40))) != format_graph(generate(GenSpec("tree", 4, n=40)))


def test_unknown_kind():
    with pytest.raises(InfeasibleSpec):
        generate(GenSpec("lattice", 1, n=4))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 200), seed=st.integers(0, 2**40))
def test_random_tree_property(n, seed):
    g = random_tree(n, seed)
    assert g.n == n and is_tree(g)
    assert nx.is_tree(to_nx(n, edges_of(g))) or n == 1


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 200), seed=st.integers(0, 2**40))
def test_caterpillar_property(n, seed):
    l = 3 + seed % (n - 2)
    d = spine_decompose(random_caterpillar(n, l, seed))
    assert d.l == l and d.p <= 1 and d.l + sum(d.leg_sum) == n


@settings(max_examples=20, deadline=None)
@given(n_triples=st.integers(1, 10), seed=st.integers(0, 2**40))
def test_3partition_property(n_triples, seed):
    inst, triples = random_3partition_instance(n_triples, seed)
    assert inst.n_triples == n_triples and len(triples) == n_triples
    assert all(t == tuple(sorted(t, reverse=True)) for t in triples)
    assert verify_partition(inst, triples)
    assert all(inst.S < 4 * a and 2 * a < inst.S for a in inst.X)


def _strip(g):
    keep = [v for v in range(g.n) if g.degree(v) > 1]
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edge_list() if u in index and v in index]
    return build_graph(len(keep), edges)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**40), levels=st.integers(1, 3))
def test_leafy_property(seed, levels):
    g = random_leafy_tree(seed, levels=levels)
    assert is_tree(g)
    # every added level clears the leaf threshold, and the core is a 2-caterpillar
    for _ in range(levels):
        assert count_leaves(g) >= 2 * sqrt_ceil(g.n) - 1
        g = _strip(g)
    assert spine_decompose(g).p <= 2
