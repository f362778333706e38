from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cylrig.constructions import fixture
from cylrig.graph import (
    DesignatedPair,
    Graph,
    GraphError,
    complete_graph,
    contract_pair,
    delete_edge,
    induced_edge_count,
    parse_graph,
    serialize_graph,
)

from .conftest import graphs


def test_parse_edges_only():
    g, pair = parse_graph("e a b\ne b c")
    assert set(g.vertices) == {"a", "b", "c"}
    assert g.edges == (("a", "b"), ("b", "c"))
    assert pair is None


def test_parse_pair_and_comments():
    g, pair = parse_graph("# path\nu p\nv q\ne p x\ne q x\n")
    assert pair == DesignatedPair("p", "q")
    assert g.edges == (("p", "x"), ("q", "x"))


def test_parse_isolated_vertex():
    g, _ = parse_graph("n lonely\ne a b")
    assert "lonely" in g and g.degree("lonely") == 0


@pytest.mark.parametrize(
    "text",
    [
        "e a a",
        "e a b\ne b a",
        "e a b c",
        "x a",
        "u a\nv b\ne a c",
        "u a\ne a b",
        "u a\nu b\nv b\ne a b",
    ],
)
def test_parse_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_loop_rejected_by_constructor():
    with pytest.raises(GraphError):
        Graph(["a"], [("a", "a")])


def test_delete_edge():
    k3 = complete_graph("abc")
    assert delete_edge(k3, ("a", "b")) == Graph("abc", [("a", "c"), ("b", "c")])
    assert delete_edge(k3, ("b", "a")).edges == (("a", "c"), ("b", "c"))


def test_delete_absent_edge_is_identity():
    k3 = complete_graph("abc")
    assert delete_edge(k3, ("a", "z")) == k3
    g, pair = fixture("fig1")
    assert delete_edge(g, (pair.u, pair.v)) == g


def test_contract_k4():
    g = contract_pair(complete_graph(["u", "v", "a", "b"]), "u", "v")
    assert len(g) == 3 and len(g.edges) == 3


def test_contract_fig1():
    g, _ = fixture("fig1")
    h = contract_pair(g, "u", "v")
    z = "z(u,v)"
    assert len(h) == 6
    expected = {(z, "v1"), (z, "v2"), (z, "v3"), (z, "v4"), (z, "v5"), ("v1", "v2"), ("v3", "v4"), ("v3", "v5"), ("v4", "v5")}
    assert {tuple(sorted(e)) for e in h.edges} == {tuple(sorted(e)) for e in expected}


def test_contract_isolated_pair():
    h = contract_pair(Graph(["u", "v"]), "u", "v")
    assert len(h) == 1 and not h.edges


def test_contract_label_avoids_collision():
    g = Graph(["u", "v", "z(u,v)"], [("u", "z(u,v)")])
    h = contract_pair(g, "u", "v")
    assert "z(u,v)#2" in h and "z(u,v)" in h


def test_contract_errors():
    g = complete_graph("ab")
    with pytest.raises(GraphError):
        contract_pair(g, "a", "a")
    with pytest.raises(GraphError):
        contract_pair(g, "a", "q")


def test_induced_edge_count():
    g, _ = fixture("fig1")
    assert induced_edge_count(g, {"u", "v", "v3", "v4", "v5"}) == 7
    assert induced_edge_count(g, set()) == 0
    assert induced_edge_count(complete_graph("abcd"), "abcd") == 6
    with pytest.raises(GraphError):
        induced_edge_count(g, {"nope"})


def test_edges_iterate_lexicographically():
    g = Graph(edges=[("d", "c"), ("b", "a"), ("c", "a")])
    assert g.edges == (("a", "b"), ("a", "c"), ("c", "d"))


@given(graphs(max_n=8), st.data())
def test_contraction_drops_one_vertex(g, data):
    u, v = data.draw(st.sampled_from([(a, b) for a in g.vertices for b in g.vertices if a != b]))
    h = contract_pair(g, u, v)
    assert len(h) == len(g) - 1
    assert len(h.edges) <= len(g.edges)


@given(graphs(max_n=8), st.data())
def test_induced_count_monotone_and_supermodular(g, data):
    xs = data.draw(st.sets(st.sampled_from(g.vertices)))
    ys = data.draw(st.sets(st.sampled_from(g.vertices)))
    i = lambda s: induced_edge_count(g, s)  # noqa: E731
    assert i(xs & ys) <= i(xs) <= i(xs | ys)
    assert i(xs) + i(ys) <= i(xs | ys) + i(xs & ys)


@given(graphs(max_n=8), st.booleans())
def test_serialize_round_trip(g, with_pair):
    pair = DesignatedPair("u", "v") if with_pair else None
    text = serialize_graph(g, pair)
    g2, pair2 = parse_graph(text)
    assert g2 == g and pair2 == pair
    assert serialize_graph(g2, pair2) == text
