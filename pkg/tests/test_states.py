import itertools

import pytest

from khtorsion.diagram import load, parse_pd
from khtorsion.states import (
    CapExceeded,
    adjacency_sign,
    check_cap,
    enumerate_enhanced,
    gradings,
    smooth,
)


def test_all_a_state_of_left_trefoil():
    # with Kauffman's A-channels the all-A state of the left trefoil has 3 circles
    d = load("3_1")
    assert smooth(d, "AAA").circle_count == 3
    assert smooth(d, "BBB").circle_count == 2
    r = load("3_1_right")
    assert smooth(r, "AAA").circle_count == 2
    assert smooth(r, "BBB").circle_count == 3


def test_sigma_and_markers():
    d = load("4_1")
    s = smooth(d, "ABAB")
    assert s.sigma == 0
    assert [s.marker(i) for i in range(4)] == list("ABAB")
    assert smooth(d, 0).sigma == 4 and smooth(d, 0b1111).sigma == -4
    with pytest.raises(ValueError):
        smooth(d, "AB")
    with pytest.raises(ValueError):
        smooth(d, "ABAX")


def test_circle_arcs_partition():
    d = load("5_2")
    for s in range(1 << d.n):
        st = smooth(d, s)
        arcs = st.circle_arcs()
        assert len(arcs) == st.circle_count
        union = set().union(*arcs)
        assert union == set(d.arcs)
        assert sum(len(a) for a in arcs) == len(d.arcs)


def test_split_unknots_are_circles():
    d = parse_pd("PD[X[1,1,2,2]] U[2]")
    assert smooth(d, "A").circle_count in (3, 4)
    assert smooth(d, "A").circle_count + smooth(d, "B").circle_count == 7


def test_enhanced_count_and_gradings():
    d = load("3_1_right")
    total = 0
    prev = None
    for b, states in enumerate_enhanced(d):
        assert prev is None or b > prev
        prev = b
        for e in states:
            assert gradings(e) == (e.a, e.b)
            assert e.b == e.a + 2 * e.tau
            total += 1
    assert total == sum(2 ** smooth(d, s).circle_count for s in range(8))


def test_cap():
    d = load("8_19")
    check_cap(d, 8)
    with pytest.raises(CapExceeded):
        check_cap(d, 7)
    with pytest.raises(CapExceeded):
        list(enumerate_enhanced(d, cap=5))


def test_adjacency_merge_split_rules():
    d = load("3_1_right")
    groups = dict(enumerate_enhanced(d))
    nonzero = 0
    for b, states in groups.items():
        for e, e2 in itertools.product(states, states):
            v = adjacency_sign(e, e2)
            if not v:
                continue
            nonzero += 1
            assert v in (1, -1)
            diff = e.state.markers ^ e2.state.markers
            assert diff and not diff & (diff - 1)
            assert e2.a == e.a - 2 and e2.b == e.b
            c1, c2 = e.state.circle_count, e2.state.circle_count
            assert abs(c1 - c2) == 1
            # b is preserved while a drops by 2
            assert e2.tau == e.tau + 1
    assert nonzero > 0


def test_adjacency_sign_counts_later_b_markers():
    d = load("3_1_right")
    groups = dict(enumerate_enhanced(d))
    for states in groups.values():
        for e, e2 in itertools.product(states, states):
            v = adjacency_sign(e, e2)
            if v:
                y = (e.state.markers ^ e2.state.markers).bit_length() - 1
                alpha = bin(e.state.markers >> (y + 1)).count("1")
                assert v == (-1) ** alpha


def test_adjacency_zero_for_non_neighbours():
    d = load("4_1")
    groups = dict(enumerate_enhanced(d))
    states = groups[min(groups)]
    for e in states:
        assert adjacency_sign(e, e) == 0
