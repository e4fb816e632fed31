import math
from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from hyperorient.hypergraph import (
    Edge,
    Hypergraph,
    HypergraphFormatError,
    ProcessState,
    binomial_p_for_density,
    gen_binomial,
    gen_uniform,
    process_step,
    read_hypergraph,
    run_process,
    write_hypergraph,
)


def test_uniform_empty():
    h = gen_uniform(5, 0, 3, seed=1)
    assert h.n == 5 and h.edges == []


def test_uniform_only_possible_edge():
    assert gen_uniform(3, 1, 3, seed=9).edges == [(0, 1, 2)]


def test_uniform_full_enumeration():
    h = gen_uniform(6, 20, 3, seed=4)
    assert sorted(h.edges) == list(combinations(range(6), 3))


@pytest.mark.parametrize("n,m,k", [(2, 0, 3), (5, 0, 1), (5, 11, 3), (5, -1, 3)])
def test_uniform_rejects(n, m, k):
    with pytest.raises(ValueError):
        gen_uniform(n, m, k, seed=0)


def test_uniform_single_edge_frequencies():
    # 10^5 independent seeds; each of the C(5,3) = 10 edges should be equally likely.
    counts = Counter(gen_uniform(5, 1, 3, seed=s).edges[0] for s in range(100_000))
    assert set(counts) == set(combinations(range(5), 3))
    for c in counts.values():
        assert abs(c / 100_000 - 0.1) <= 0.01
    assert stats.chisquare(list(counts.values())).pvalue > 0.001


def test_uniform_edge_pairs_uniform():
    rng = np.random.default_rng(2024)
    pairs = Counter(frozenset(gen_uniform(5, 2, 3, rng).edges) for _ in range(1_000_000))
    assert len(pairs) == math.comb(10, 2)
    assert stats.chisquare(list(pairs.values())).pvalue > 0.001


@settings(max_examples=60, deadline=None)
@given(
    k=st.integers(2, 5),
    extra=st.integers(0, 40),
    frac=st.floats(0, 1),
    seed=st.integers(0, 2**32),
)
def test_uniform_edges_sorted_distinct_deterministic(k, extra, frac, seed):
    n = k + extra
    m = int(frac * min(math.comb(n, k), 300))
    h = gen_uniform(n, m, k, seed)
    assert h.m == m
    assert all(list(e) == sorted(set(e)) and len(e) == k for e in h.edges)
    assert len(set(h.edges)) == m
    assert all(0 <= v < n for e in h.edges for v in e)
    assert gen_uniform(n, m, k, seed).edges == h.edges


def test_binomial_extremes():
    assert gen_binomial(10, 0.0, 3, seed=1).edges == []
    full = gen_binomial(10, 1.0, 3, seed=1)
    assert sorted(full.edges) == list(combinations(range(10), 3))


@pytest.mark.parametrize("p", [-0.1, 1.5, float("nan")])
def test_binomial_rejects_bad_p(p):
    with pytest.raises(ValueError):
        gen_binomial(10, p, 3, seed=0)


def test_binomial_rejects_small_n():
    with pytest.raises(ValueError):
        gen_binomial(2, 0.5, 3, seed=0)


def test_binomial_mean_edge_count():
    n, k = 50, 3
    p = binomial_p_for_density(n, k, 0.5)
    assert p == pytest.approx(0.6 / 50**2)
    expected = math.comb(n, k) * p
    mean = np.mean([gen_binomial(n, p, k, seed=s).m for s in range(10_000)])
    assert abs(mean / expected - 1) < 0.02


def test_binomial_deterministic():
    a = gen_binomial(1000, 1e-6, 3, seed=77)
    b = gen_binomial(1000, 1e-6, 3, seed=77)
    assert a.edges == b.edges and a.m > 0


def test_edge_first_and_next_cycle():
    e = Edge(0, (2, 5, 9))
    assert e.first() == 2
    assert [e.next(2), e.next(5), e.next(9)] == [5, 9, 2]
    for v in e.vertices:
        w = v
        for _ in range(3):
            w = e.next(w)
        assert w == v


def test_process_step_repeat_vertex_is_no_add():
    state = ProcessState(10, 3)
    assert state.offer([1, 1, 2]) is None
    assert (state.rounds, state.no_adds, state.edges) == (1, 1, [])


def test_process_step_adds_sorted_edge_once():
    state = ProcessState(10, 3)
    assert state.offer([4, 1, 7]) == (1, 4, 7)
    assert state.offer([7, 4, 1]) is None
    assert state.edges == [(1, 4, 7)]
    assert (state.rounds, state.no_adds) == (2, 1)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(3, 12), rounds=st.integers(0, 60), seed=st.integers(0, 2**32))
def test_process_conservation(n, rounds, seed):
    rng = np.random.default_rng(seed)
    state = ProcessState(n, 3)
    for _ in range(rounds):
        process_step(state, rng)
        assert state.no_adds <= state.rounds
        assert len(state.edges) + state.no_adds == state.rounds
    state.hypergraph().validate()


def test_run_process_matches_offer_semantics():
    state = run_process(ProcessState(20, 3), 50, np.random.default_rng(3))
    assert state.rounds == 50
    assert len(state.edges) + state.no_adds == 50
    assert len(set(state.edges)) == len(state.edges)


def test_text_roundtrip(tmp_path):
    h = gen_uniform(40, 12, 4, seed=3)
    path = tmp_path / "h.txt"
    write_hypergraph(h, path)
    assert path.read_text().splitlines()[0] == "4 40 12"
    assert read_hypergraph(path) == h


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3 5\n",
        "3 5 1\n0 1\n",
        "3 5 1\n0 1 5\n",
        "3 5 1\n0 2 1\n",
        "3 5 1\n0 1 1\n",
        "3 5 2\n0 1 2\n",
        "3 5 1\n0 x 2\n",
        "3 5 2\n0 1 2\n0 1 2\n",
    ],
)
def test_parser_rejects(text):
    with pytest.raises(HypergraphFormatError):
        Hypergraph.from_text(text)


def test_parser_accepts_empty_edge_list():
    h = Hypergraph.from_text("3 5 0\n")
    assert (h.k, h.n, h.m) == (3, 5, 0)
