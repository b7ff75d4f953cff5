import itertools
import math

import pytest

from morsewalk.domset import (AttemptsExhausted, alon_spencer_bound, alon_spencer_bound_expanded,
                              exact_min_dominating_set, greedy_dominating_set, probabilistic_dominating_set,
                              prune, sampling_probability, verify_dominating)
from morsewalk.enumeration import delta, enumerate_walks, m_number
from morsewalk.errors import PreconditionError, ResourceCapError
from morsewalk.walkgraph import Graph, build_graph


@pytest.fixture(scope="module")
def g62():
    return build_graph(enumerate_walks(6, 2))


@pytest.fixture(scope="module")
def g82():
    return build_graph(enumerate_walks(8, 2))


def brute_min_domset_size(graph):
    for k in range(graph.vertex_count + 1):
        for combo in itertools.combinations(range(graph.vertex_count), k):
            if verify_dominating(graph, combo):
                return k


def test_bound_examples():
    assert alon_spencer_bound(2, 1) == pytest.approx(1.5)
    for n in (1, 7, 100):
        assert alon_spencer_bound(n, 1) == pytest.approx(0.75 * n)
    with pytest.raises(PreconditionError):
        alon_spencer_bound(5, 0)


def test_bound_forms_agree():
    for d in range(1, 1001):
        a, b = alon_spencer_bound(1, d), alon_spencer_bound_expanded(1, d)
        assert abs(a - b) <= 1e-12 * abs(b)


def test_bound_fraction_decreasing():
    values = [alon_spencer_bound(1, d) for d in range(1, 101)]
    assert all(x > y for x, y in zip(values, values[1:]))


def test_sampling_probability_minimises():
    for d in (1, 2, 5, 40):
        p = sampling_probability(d)
        f = lambda q: q + (1 - q) ** (d + 1)
        assert f(p) <= f(p - 1e-4) and f(p) <= f(p + 1e-4)
        assert f(p) == pytest.approx(alon_spencer_bound(1, d))


def test_verify(g62):
    assert verify_dominating(g62, {0})
    assert verify_dominating(g62, {0, 1})
    assert not verify_dominating(g62, set())


def test_two_walk_graph(g62):
    for seed in range(10):
        res = probabilistic_dominating_set(g62, seed)
        assert res.size == 1 and verify_dominating(g62, res.vertex_ids)
    assert greedy_dominating_set(g62).size == 1
    assert exact_min_dominating_set(g62).size == 1


def test_probabilistic_rejects_isolated():
    with pytest.raises(PreconditionError):
        probabilistic_dominating_set(Graph.from_edges(1, []), 0)


def test_edgeless_greedy():
    res = greedy_dominating_set(Graph.from_edges(3, []))
    assert res.vertex_ids == (0, 1, 2)


def test_complete_graph_exact():
    k = 9
    G = Graph.from_edges(k, itertools.combinations(range(k), 2))
    assert exact_min_dominating_set(G).size == 1


def test_exact_cap():
    G = Graph.from_edges(31, [(i, i + 1) for i in range(30)])
    with pytest.raises(ResourceCapError, match="too large"):
        exact_min_dominating_set(G)


def test_exact_matches_brute_force():
    # paths, cycles and a few ad-hoc graphs
    graphs = [Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)]) for n in range(1, 11)]
    graphs += [Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)]) for n in range(3, 11)]
    graphs.append(Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6)]))
    for G in graphs:
        assert exact_min_dominating_set(G).size == brute_min_domset_size(G)


def test_seventeen_walks(g82):
    assert g82.vertex_count == 17
    res = probabilistic_dominating_set(g82, 123)
    assert verify_dominating(g82, res.vertex_ids)
    assert res.size <= math.ceil(alon_spencer_bound(17, g82.min_degree)) <= math.ceil(0.75 * 17)
    exact, greedy = exact_min_dominating_set(g82), greedy_dominating_set(g82)
    assert exact.size <= greedy.size <= math.ceil(alon_spencer_bound(17, 1))


def test_prune_keeps_domination(g82):
    everything = list(range(g82.vertex_count))
    kept = prune(g82, everything)
    assert verify_dominating(g82, kept)
    for v in kept:
        assert not verify_dominating(g82, [u for u in kept if u != v])


def test_unpruned_still_within_bound(g82):
    res = probabilistic_dominating_set(g82, 5, minimal=False)
    assert verify_dominating(g82, res.vertex_ids)
    assert res.size <= math.ceil(res.bound)


def test_reproducible(g82):
    a = probabilistic_dominating_set(g82, 77)
    b = probabilistic_dominating_set(g82, 77)
    assert a == b


def test_attempts_exhausted():
    # perfect matching on 40 vertices: |D| has mean 30 = bound, so single attempts often overshoot
    G = Graph.from_edges(40, [(2 * i, 2 * i + 1) for i in range(20)])
    failures = 0
    for seed in range(40):
        try:
            probabilistic_dominating_set(G, seed, max_attempts=1)
        except AttemptsExhausted:
            failures += 1
    assert failures > 0


@pytest.mark.parametrize("g", [2, 3])
def test_methods_on_walk_graphs(g):
    for N in range(2 * g + 2, 15, 2):
        G = build_graph(enumerate_walks(N, g))
        prob = probabilistic_dominating_set(G, seed=N)
        greedy = greedy_dominating_set(G)
        assert verify_dominating(G, prob.vertex_ids) and verify_dominating(G, greedy.vertex_ids)
        assert prob.size <= math.ceil(alon_spencer_bound(G.vertex_count, G.min_degree))
        limit = math.ceil(m_number(N, g) * (1 - delta(g) / (delta(g) + 1) ** (1 + 1 / delta(g))))
        assert prob.size <= limit
        if G.vertex_count <= 30:
            exact = exact_min_dominating_set(G)
            assert verify_dominating(G, exact.vertex_ids)
            assert exact.size <= greedy.size and exact.size <= prob.size
