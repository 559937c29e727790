import numpy as np
import pytest

from regretopt import (
    IntervalDigraph,
    NoFeasibleSolution,
    Path,
    PathConstraint,
    bidirectional_dijkstra,
    constrained_sp,
    dijkstra,
    sp_oracle,
    two_unit_min_flow,
)
from regretopt.harness import GeneratorSpec, gen_instance
from regretopt.harness.brute_force import enumerate_paths
from regretopt.shortest_path import order_path_edges

from _fixtures import six_node_graph, two_arc_graph


def random_graph(i: int) -> IntervalDigraph:
    spec = GeneratorSpec(
        family="R",
        n=4 + (i % 9),
        r=50.0,
        d=(0.0, 0.5, 1.0)[i % 3],
        delta=0.3 + 0.1 * (i % 7),
        seed=i,
    )
    return gen_instance(spec)


# ------------------------------------------------------------- construction


def test_construction_rejects_bad_graphs():
    with pytest.raises(ValueError):
        IntervalDigraph.from_edges(2, [(0, 1, 1.0, 2.0)], 0, 0)
    with pytest.raises(ValueError):  # target unreachable
        IntervalDigraph.from_edges(3, [(1, 0, 1.0, 2.0)], 0, 2)
    with pytest.raises(ValueError):  # arc endpoint out of range
        IntervalDigraph.from_edges(2, [(0, 5, 1.0, 2.0)], 0, 1)
    with pytest.raises(ValueError):  # inverted interval
        IntervalDigraph.from_edges(2, [(0, 1, 3.0, 2.0)], 0, 1)


def test_path_helpers():
    g = six_node_graph()
    p = Path((0, 3, 6))
    assert len(p) == 3
    assert p.value(g.lo) == 5.0
    assert p.indicator().members == {0, 3, 6}
    assert g.path_nodes(p) == (0, 1, 3, 5)
    with pytest.raises(ValueError):
        g.path_nodes(Path((0, 6)))


def test_constraint_validation():
    g = six_node_graph()
    PathConstraint(in_chain=(0, 2), out_set=frozenset({5})).validate(g)
    with pytest.raises(ValueError):
        PathConstraint(in_chain=(0,), out_set=frozenset({0}))
    with pytest.raises(ValueError):
        PathConstraint(in_chain=(2,)).validate(g)  # does not start at the source
    with pytest.raises(ValueError):
        PathConstraint(in_chain=(0, 99)).validate(g)
    assert PathConstraint(in_chain=(0, 2)).chain_end(g) == 2
    assert PathConstraint().chain_end(g) == 0
    assert PathConstraint(in_chain=(0, 2)).chain_nodes(g) == (0, 1, 2)


# ------------------------------------------------------------------ dijkstra


def test_dijkstra_on_the_six_node_graph():
    g = six_node_graph()
    path, value = dijkstra(g, g.lo)
    assert (path.edges, value) == ((0, 3, 6), 5.0)
    path, value = dijkstra(g, g.hi)
    assert (path.edges, value) == ((1, 5, 7), 10.0)
    # midpoint costs tie two routes at 8; the smallest-arc-id rule wins
    mid = (g.lo + g.hi) / 2.0
    path, value = dijkstra(g, mid)
    assert (path.edges, value) == ((0, 3, 6), 8.0)


def test_dijkstra_rejects_bad_costs():
    g = two_arc_graph()
    with pytest.raises(ValueError):
        dijkstra(g, [1.0])
    with pytest.raises(ValueError):
        dijkstra(g, [-1.0, 2.0])
    with pytest.raises(ValueError):
        dijkstra(g, [np.inf, 2.0])


def test_zero_cost_cycle_does_not_trap_the_search():
    g = IntervalDigraph.from_edges(
        4,
        [(0, 1, 0.0, 0.0), (1, 2, 0.0, 0.0), (2, 1, 0.0, 0.0), (1, 3, 1.0, 1.0)],
        0,
        3,
    )
    path, value = dijkstra(g, g.lo)
    assert value == 1.0
    assert g.path_nodes(path) == (0, 1, 3)
    path, value = bidirectional_dijkstra(g, g.lo)
    assert value == 1.0
    assert g.path_nodes(path)[0] == 0 and g.path_nodes(path)[-1] == 3


def test_bidirectional_agrees_with_plain_dijkstra():
    for i in range(1000):
        g = random_graph(i)
        costs = (g.lo + g.hi) / 2.0
        _, value = dijkstra(g, costs)
        path, bi_value = bidirectional_dijkstra(g, costs)
        assert bi_value == pytest.approx(value, abs=1e-9)
        nodes = g.path_nodes(path)
        assert nodes[0] == g.source and nodes[-1] == g.target
        assert path.value(costs) == pytest.approx(bi_value, abs=1e-9)


# -------------------------------------------------------------- constrained


def test_constrained_sp_honors_chain_and_bans():
    g = six_node_graph()
    mid = (g.lo + g.hi) / 2.0
    path, value = constrained_sp(g, mid, PathConstraint(in_chain=(0, 2), out_set=frozenset({5})))
    assert path.edges == (0, 2, 4, 6)
    assert value == pytest.approx(9.5)
    # chain already reaches the target
    path, value = constrained_sp(g, mid, PathConstraint(in_chain=(0, 3, 6)))
    assert path.edges == (0, 3, 6)
    assert value == pytest.approx(8.0)
    # both arcs out of the chain end are forbidden
    assert constrained_sp(g, mid, PathConstraint(in_chain=(0,), out_set=frozenset({2, 3}))) is None


def test_constrained_sp_never_revisits_chain_nodes():
    g = IntervalDigraph.from_edges(
        4,
        [(0, 1, 1.0, 1.0), (1, 2, 1.0, 1.0), (2, 0, 0.0, 0.0), (2, 3, 9.0, 9.0), (0, 3, 1.0, 1.0)],
        0,
        3,
    )
    found = constrained_sp(g, g.lo, PathConstraint(in_chain=(0, 1)))
    assert found is not None
    path, value = found
    # the cheap detour through arc 2 would revisit the source
    assert path.edges == (0, 1, 3)
    assert value == 11.0


def test_oracle_restriction_raises_when_infeasible():
    g = six_node_graph()
    oracle = sp_oracle(g)
    x, value = oracle.solve(np.array(g.lo))
    assert x.members == {0, 3, 6} and value == 5.0
    with pytest.raises(NoFeasibleSolution):
        oracle.solve(np.array(g.lo), PathConstraint(in_chain=(0,), out_set=frozenset({2, 3})))


def test_order_path_edges():
    g = six_node_graph()
    assert order_path_edges(g, frozenset({6, 0, 3})).edges == (0, 3, 6)
    with pytest.raises(ValueError):
        order_path_edges(g, frozenset({0, 6}))


# ------------------------------------------------------------ two-unit flow


def pair_cost(graph, edges_a, edges_b, constraint):
    in_set = set(constraint.in_chain)
    use = {}
    for e in list(edges_a) + list(edges_b):
        use[e] = use.get(e, 0) + 1
    total = 0.0
    for e, count in use.items():
        if e in in_set:
            first, second = graph.hi[e], graph.hi[e]
        elif e in constraint.out_set:
            first, second = graph.lo[e], graph.lo[e]
        else:
            first, second = graph.lo[e], graph.hi[e]
        total += first if count == 1 else first + second
    return total


def brute_pair_minimum(graph, constraint):
    # The constraint only reprices arcs; both units may route anywhere.
    paths = enumerate_paths(graph)
    return min(pair_cost(graph, a.edges, b.edges, constraint) for a in paths for b in paths)


def test_two_unit_flow_on_fixtures():
    g = six_node_graph()
    assert two_unit_min_flow(g, g.lo, g.hi) == pytest.approx(11.0)
    g2 = two_arc_graph()
    assert two_unit_min_flow(g2, g2.lo, g2.hi) == pytest.approx(12.0)


def test_two_unit_flow_matches_pair_enumeration():
    checked = 0
    for i in range(200):
        g = random_graph(i)
        if g.node_count > 7:
            continue
        flow = two_unit_min_flow(g, g.lo, g.hi)
        ref = brute_pair_minimum(g, PathConstraint())
        assert flow == pytest.approx(ref, abs=1e-9)
        checked += 1
        # reprice along a shortest path prefix and re-check
        path, _ = dijkstra(g, g.lo)
        if len(path.edges) >= 2:
            constraint = PathConstraint(in_chain=path.edges[:1], out_set=frozenset({path.edges[-1]}))
            ref = brute_pair_minimum(g, constraint)
            flow = two_unit_min_flow(g, g.lo, g.hi, constraint)
            assert flow == pytest.approx(ref, abs=1e-9)
    assert checked >= 50


def test_two_unit_flow_requires_two_units_smallest_graph():
    # One arc into the target forces both units across it.
    g = IntervalDigraph.from_edges(3, [(0, 1, 1.0, 2.0), (1, 2, 3.0, 5.0)], 0, 2)
    assert two_unit_min_flow(g, g.lo, g.hi) == pytest.approx((1.0 + 2.0) + (3.0 + 5.0))
