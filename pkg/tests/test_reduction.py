import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from graphburn.engine import BurningSchedule, longest_path_lower_bound, verify_sequence
from graphburn.errors import (
    BadCardinality,
    InvalidInstance,
    NotDistinct,
    NotOptimalSchedule,
    PartitionInvalid,
    RangeViolation,
    StructureViolation,
    SumMismatch,
)
from graphburn.generators import random_3partition_instance
from graphburn.graph import is_tree
from graphburn.recognition import CATERPILLAR, classify, spine_decompose
from graphburn.reduction import (
    ReductionLayout,
    extract_partition,
    reduce_to_burning,
    solution_to_schedule,
    validate_instance,
    verify_partition,
)

from oracles import edges_of, nx_longest_path_order

BASE = validate_instance([4, 5, 6], 15)


@pytest.fixture(scope="module")
def base():
    g, layout = reduce_to_burning(BASE)
    return g, layout


def test_validate_examples():
    assert (BASE.n_triples, BASE.m_max) == (1, 6)
    with pytest.raises(RangeViolation):
        validate_instance([3, 4, 5], 12)
    with pytest.raises(NotDistinct):
        validate_instance([4, 4, 7], 15)
    with pytest.raises(BadCardinality):
        validate_instance([4, 5], 15)
    with pytest.raises(SumMismatch):
        validate_instance([4, 5, 7], 15)
    with pytest.raises(InvalidInstance):
        reduce_to_burning(None)


def test_derived_sets(base):
    _, layout = base
    assert layout.X_prime == (7, 9, 11) and layout.S_prime == 27
    assert layout.Y == (1, 2, 3) and layout.Y_prime == (1, 3, 5)
    assert layout.O_m == (1, 3, 5, 7, 9, 11)


def test_component_table(base):
    g, layout = base
    qx = layout.of_kind("QX")
    qy = layout.of_kind("QY")
    cats = layout.of_kind("G")
    assert [c.order for c in qx] == [27]
    assert [c.order for c in qy] == [1, 3, 5]
    assert [len(c.spine) for c in cats] == [25, 23, 21, 19, 17, 15, 13]
    assert all(c.order == 2 * len(c.spine) - 2 for c in cats)
    assert sum(c.order for c in qx + qy) == 36 and sum(len(c.spine) for c in cats) == 133
    assert sum(c.order - len(c.spine) for c in cats) == 119 and g.n == 288
    ranges = sorted((c.first, c.last) for c in layout.components)
    assert ranges[0][0] == 0 and ranges[-1][1] == 287
    assert all(a[1] + 1 == b[0] for a, b in zip(ranges, ranges[1:]))
    # no two paths are adjacent in the chain
    kinds = [c.kind for c in layout.components]
    assert all(not (a != "G" and b != "G") for a, b in zip(kinds, kinds[1:]))


def test_structure(base):
    g, _ = base
    assert is_tree(g) and g.max_degree() == 3
    assert classify(g).tag == CATERPILLAR
    assert spine_decompose(g).l == nx_longest_path_order(g.n, edges_of(g)) == 169
    assert longest_path_lower_bound(g) == 13


def test_witness_schedule(base):
    g, layout = base
    s = solution_to_schedule(BASE, layout, [(4, 5, 6)])
    assert s.horizon == 13 and verify_sequence(g, s)
    qx = layout.of_kind("QX")[0]
    lit = s.as_map()
    # sub-paths of orders 11, 9, 7 are lit at their centres with radii 5, 4, 3
    assert [lit[13 - r] for r in (5, 4, 3)] == [qx.spine[5], qx.spine[11 + 4], qx.spine[20 + 3]]
    assert {13 - r for r in (0, 1, 2)} <= set(lit)
    with pytest.raises(PartitionInvalid):
        solution_to_schedule(BASE, layout, [(4, 4, 7)])


def test_round_trip(base):
    g, layout = base
    s = solution_to_schedule(BASE, layout, [(4, 5, 6)])
    assert [sorted(t) for t in extract_partition(BASE, layout, s, g)] == [[4, 5, 6]]


def test_extract_rejects_long_horizon(base):
    g, layout = base
    s = solution_to_schedule(BASE, layout, [(4, 5, 6)])
    with pytest.raises(NotOptimalSchedule):
        extract_partition(BASE, layout, s.extended(14), g)


def test_extract_rejects_two_circles_on_a_caterpillar(base):
    g, layout = base
    s = solution_to_schedule(BASE, layout, [(4, 5, 6)]).as_map()
    g1 = layout.of_kind("G")[0]
    # the last radius-0 circle moves from the order-1 filler path onto G_1
    s[13] = g1.spine[0]
    with pytest.raises(StructureViolation):
        extract_partition(BASE, layout, BurningSchedule.from_map(13, s), g)


def test_extract_rejects_non_burning(base):
    g, layout = base
    s = solution_to_schedule(BASE, layout, [(4, 5, 6)]).as_map()
    del s[13]  # the order-1 filler path stays unburned
    with pytest.raises(NotOptimalSchedule):
        extract_partition(BASE, layout, BurningSchedule.from_map(13, s), g)


def test_verify_partition_examples():
    assert verify_partition(BASE, [(4, 5, 6)])
    assert not verify_partition(BASE, [(4, 5)])
    inst, witness = random_3partition_instance(2, 1)
    assert verify_partition(inst, witness)
    (a, b, c), (d, e, f) = witness
    # reuse an element of the first triple in place of one from the second
    assert not verify_partition(inst, [(a, b, c), (a, e, f)])
    assert not verify_partition(inst, [(a, b, c, d), (e, f)])


def test_layout_json_round_trip(base):
    _, layout = base
    again = ReductionLayout.from_json(json.loads(json.dumps(layout.to_json())))
    assert again == layout
    assert again.to_json()["instance"] == {"X": [4, 5, 6], "S": 15}


def _brute_force_partitions(inst):
    """All ways to split X into triples summing to S (tiny n only)."""
    xs = list(inst.X)
    if not xs:
        yield []
        return
    first = xs[0]
    for b, c in itertools.combinations(xs[1:], 2):
        if first + b + c == inst.S:
            rest = [a for a in xs if a not in (first, b, c)]
            sub = validate_instance(rest, inst.S) if rest else None
            for tail in _brute_force_partitions(sub) if sub else [[]]:
                yield [(first, b, c)] + tail


@settings(max_examples=15, deadline=None)
@given(n_triples=st.integers(1, 3), seed=st.integers(0, 2**40))
def test_reduction_properties(n_triples, seed):
    inst, witness = random_3partition_instance(n_triples, seed)
    g, layout = reduce_to_burning(inst)
    m = inst.m_max
    assert is_tree(g) and g.max_degree() == 3 and classify(g).tag == CATERPILLAR
    assert spine_decompose(g).l == (2 * m + 1) ** 2
    q_total = sum(c.order for c in layout.components if c.kind != "G")
    assert q_total == m * m
    s = solution_to_schedule(inst, layout, witness)
    assert s.horizon == 2 * m + 1 == longest_path_lower_bound(g)
    assert verify_sequence(g, s)
    got = sorted(sorted(t) for t in extract_partition(inst, layout, s, g))
    assert got == sorted(sorted(t) for t in witness)
    assert got in [sorted(sorted(t) for t in p) for p in _brute_force_partitions(inst)]
