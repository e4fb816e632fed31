import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperorient.tracker import (
    ComponentCounts,
    ComponentTracker,
    InvariantViolation,
    classify_components,
    susceptibility,
)


def test_first_edge_merges_three_singletons():
    t = ComponentTracker(5, 3, verify=True)
    rep = t.add_edge((0, 1, 2))
    assert rep.size_after == 3
    assert rep.excess_after == -1
    assert rep.delta_chi == pytest.approx((9 - 3) / 5)
    assert t.susceptibility == pytest.approx(11 / 5)


def test_edge_inside_one_component():
    t = ComponentTracker(5, 3, verify=True)
    t.add_edge((0, 1, 2))
    t.add_edge((2, 3, 4))
    before = t.susceptibility
    rep = t.add_edge((0, 3, 4))
    assert rep.touched == 1
    assert rep.size_before == (5,) and rep.size_after == 5
    assert rep.excess_after == t.excess(0) == 3 * 2 - 5
    assert rep.delta_chi == 0
    assert t.susceptibility == before


def test_overlapping_quadruples_are_complex():
    t = ComponentTracker(6, 4, verify=True)
    t.add_edge((1, 2, 3, 4))
    rep = t.add_edge((1, 2, 3, 5))
    assert rep.excess_after == 1
    counts = classify_components(t)
    assert counts.complex == 1
    assert counts.max_size == 5


def test_susceptibility_examples():
    t = ComponentTracker(7, 3)
    assert susceptibility(t) == 1
    t.add_edge((0, 1, 2))
    t.add_edge((2, 3, 4))
    t.add_edge((4, 5, 6))
    assert susceptibility(t) == 7
    u = ComponentTracker(5, 3)
    u.add_edge((0, 1, 2))
    assert susceptibility(u) == pytest.approx(11 / 5)


def test_classify_single_edge():
    t = ComponentTracker(3, 3)
    t.add_edge((0, 1, 2))
    assert classify_components(t) == ComponentCounts(1, 0, 0, 3)


def test_classify_isolated_vertices_are_hypertrees():
    t = ComponentTracker(6, 3)
    t.add_edge((0, 1, 2))
    assert classify_components(t) == ComponentCounts(4, 0, 0, 3)


def test_classify_two_triples_sharing_two_vertices():
    t = ComponentTracker(4, 3)
    t.add_edge((0, 1, 2))
    t.add_edge((0, 1, 3))
    assert classify_components(t) == ComponentCounts(0, 1, 0, 4)


def test_check_catches_corrupted_s2():
    t = ComponentTracker(10, 3)
    t.add_edge((0, 1, 2))
    t.check()
    t.s2 += 1
    with pytest.raises(InvariantViolation):
        t.check()


def test_periodic_recompute_in_verify_mode():
    import numpy as np

    rng = np.random.default_rng(0)
    t = ComponentTracker(4000, 3, verify=True)
    for row in rng.choice(4000, size=(2500, 3), replace=True).tolist():
        if len(set(row)) == 3:
            t.add_edge(sorted(row))
    assert t.merges >= 2000
    t.check()


edge_lists = st.integers(3, 14).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.integers(2, min(4, n)).flatmap(
            lambda k: st.tuples(
                st.just(k),
                st.lists(st.sets(st.integers(0, n - 1), min_size=k, max_size=k), max_size=12),
            )
        ),
    )
)


@settings(max_examples=200, deadline=None)
@given(edge_lists)
def test_tracker_matches_graph_components(case):
    n, (k, edges) = case
    t = ComponentTracker(n, k, verify=True)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    seen_edges = []
    chi = t.susceptibility
    for e in edges:
        e = tuple(sorted(e))
        comps_before = {frozenset(c) for c in nx.connected_components(g) if c & set(e)}
        rep = t.add_edge(e)
        sizes = [len(c) for c in comps_before]
        assert rep.delta_chi == pytest.approx((sum(sizes) ** 2 - sum(s * s for s in sizes)) / n)
        seen_edges.append(e)
        g.add_edges_from((e[0], v) for v in e[1:])
        assert t.susceptibility >= chi
        chi = t.susceptibility
        assert t.s2 == t.recompute_s2() == sum(len(c) ** 2 for c in nx.connected_components(g))
        assert sum(t.size) == n

    trees = uni = cplx = 0
    for comp in nx.connected_components(g):
        m = sum(1 for e in seen_edges if e[0] in comp)
        excess = (k - 1) * m - len(comp)
        assert excess >= -1
        trees += excess == -1
        uni += excess == 0
        cplx += excess > 0
    counts = t.classify()
    assert (counts.hypertrees, counts.unicyclic, counts.complex) == (trees, uni, cplx)
    assert counts.max_size == max(len(c) for c in nx.connected_components(g))
