import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_simple_paths, brute_count_paths, brute_reachability
from termdag.generate import random_dag, random_dag_with_edges
from termdag.graph import (
    CycleError,
    GraphError,
    PackageGraph,
    UnknownNodeError,
    count_paths,
    neighbors,
    reachable,
)


@st.composite
def dags(draw, max_nodes=12):
    n = draw(st.integers(1, max_nodes))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from([0.1, 0.25, 0.4]))
    return random_dag(n, density, seed=seed)


def test_construction_rules():
    g = PackageGraph([("a", None), ("b", "B")], [("a", "b"), ("a", "b")])
    assert g.edges == (("a", "b"),)
    assert g.label("a") == "a" and g.label("b") == "B"
    with pytest.raises(GraphError, match="self-loop"):
        PackageGraph([("a", None)], [("a", "a")])
    with pytest.raises(GraphError, match="undeclared"):
        PackageGraph([("a", None)], [("a", "z")])
    with pytest.raises(GraphError, match="duplicate"):
        PackageGraph([("a", None), ("a", None)])


def test_cycle_witness():
    with pytest.raises(CycleError) as info:
        PackageGraph([("a", None), ("b", None)], [("a", "b"), ("b", "a")])
    assert info.value.cycle == ["a", "b", "a"]

    with pytest.raises(CycleError) as info:
        PackageGraph([(n, None) for n in "wxyz"], [("w", "x"), ("x", "y"), ("y", "z"), ("z", "x")])
    cyc = info.value.cycle
    assert cyc[0] == cyc[-1]
    assert set(cyc) == {"x", "y", "z"}
    assert all((a, b) in {("x", "y"), ("y", "z"), ("z", "x")} for a, b in zip(cyc, cyc[1:]))


def test_neighbors_diamond(diamond_graph):
    nb = neighbors(diamond_graph, "C")
    assert nb.dependents == {"A", "B"} and nb.dependencies == set()
    nb = neighbors(diamond_graph, "target")
    assert nb.dependents == set() and nb.dependencies == {"A", "B"}


def test_neighbors_isolated():
    g = PackageGraph([("x", None)])
    nb = neighbors(g, "x")
    assert nb.dependents == set() and nb.dependencies == set()


def test_unknown_node(diamond_graph):
    for fn in (neighbors, reachable):
        with pytest.raises(UnknownNodeError):
            fn(diamond_graph, "nope")
    with pytest.raises(UnknownNodeError):
        count_paths(diamond_graph, "target", "nope")


def test_reachable_examples(diamond_graph, chain_graph):
    rs = reachable(diamond_graph, "C")
    assert rs.ancestors == {"A", "B", "target"}
    assert rs.descendants == set()
    assert rs.path_edges == set(diamond_graph.edges)

    rs = reachable(chain_graph, "b")
    assert rs.ancestors == {"a"} and rs.descendants == {"c"}
    assert rs.path_edges == {("a", "b"), ("b", "c")}


def test_reachable_excludes_side_branches():
    # d -> c is not on any path through b
    g = PackageGraph([(n, None) for n in "abcd"], [("a", "b"), ("b", "c"), ("d", "c")])
    rs = reachable(g, "b")
    assert rs.path_edges == {("a", "b"), ("b", "c")}


@pytest.mark.parametrize("seed", range(6))
def test_reachable_matches_path_enumeration(seed):
    g = random_dag_with_edges(15, 30, seed=seed)
    paths = all_simple_paths(g)
    for n in g.nodes:
        anc, desc, edges = brute_reachability(g, n, paths)
        rs = reachable(g, n)
        assert rs.ancestors == anc
        assert rs.descendants == desc
        assert rs.path_edges == edges
        assert n not in rs.ancestors | rs.descendants
        assert not rs.ancestors & rs.descendants


def test_count_paths_examples(diamond_graph):
    assert count_paths(diamond_graph, "target", "C") == 2
    assert count_paths(diamond_graph, "C", "target") == 0
    g = PackageGraph([(n, None) for n in "abc"], [("a", "b"), ("b", "c")])
    assert count_paths(g, "a", "c") == 1


@pytest.mark.parametrize("seed", range(4))
def test_count_paths_matches_enumeration(seed):
    g = random_dag_with_edges(12, 28, seed=100 + seed)
    paths = all_simple_paths(g)
    for a in g.nodes:
        for b in g.nodes:
            assert count_paths(g, a, b) == brute_count_paths(g, a, b, paths)


def test_count_paths_large_is_exact():
    # 2**40 paths through a ladder of diamonds
    nodes, edges = ["s0"], []
    for i in range(40):
        nodes += [f"l{i}", f"r{i}", f"s{i + 1}"]
        edges += [(f"s{i}", f"l{i}"), (f"s{i}", f"r{i}"), (f"l{i}", f"s{i + 1}"), (f"r{i}", f"s{i + 1}")]
    g = PackageGraph([(n, None) for n in nodes], edges)
    assert count_paths(g, "s0", "s40") == 2**40


@settings(max_examples=60, deadline=None)
@given(dags(max_nodes=20))
def test_ancestors_are_dependents_fixed_point(g):
    for n in g.nodes:
        closure = set()
        frontier = {n}
        while frontier:
            step = set()
            for m in frontier:
                step |= neighbors(g, m).dependents
            frontier = step - closure
            closure |= step
        assert reachable(g, n).ancestors == closure


@settings(max_examples=60, deadline=None)
@given(dags())
def test_count_paths_positive_iff_descendant(g):
    for a in g.nodes:
        desc = reachable(g, a).descendants
        for b in g.nodes:
            if a != b:
                assert (count_paths(g, a, b) > 0) == (b in desc)


def test_iteration_order_is_insertion_order():
    g = PackageGraph([("z", None), ("a", None), ("m", None)], [("z", "m"), ("z", "a")])
    assert g.nodes == ("z", "a", "m")
    assert g.edges == (("z", "m"), ("z", "a"))
    assert g.successors("z") == ("m", "a")


def test_topological_order_respects_edges():
    rng = random.Random(7)
    for _ in range(20):
        g = random_dag(rng.randint(1, 25), 0.2, seed=rng.random())
        pos = {n: i for i, n in enumerate(g.topological_order())}
        assert all(pos[s] < pos[t] for s, t in g.edges)
