import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphtoeplitz.graph import GraphError, parse_graph
from graphtoeplitz.words import (
    EMPTY,
    INFINITY,
    GraphPath,
    NonComposable,
    NotPrefix,
    all_words,
    d_st,
    enumerate_paths,
    is_graph_path,
    join,
    le,
    left_quotient,
    longest_common_prefix,
    parse_path,
    parse_word,
    to_path,
)
from oracles import paths_bf

A, B = "a", "b"
words = st.lists(st.sampled_from("ab"), max_size=5).map(tuple)


def test_le_examples():
    assert le((A,), (A, B))
    assert not le((A, B), (A,))
    for t in all_words("ab", 3):
        assert le(EMPTY, t)


def test_join_examples():
    assert join((A,), (A, B)) == (A, B)
    assert join((A,), (B,)) is INFINITY
    assert join((A, B), (A, B)) == (A, B)
    assert join(INFINITY, (A,)) is INFINITY
    assert join((A,), INFINITY) is INFINITY


def test_longest_common_prefix_examples():
    assert longest_common_prefix(("a", "b", "c"), ("a", "b", "d")) == ("a", "b")
    assert longest_common_prefix((A,), (B,)) == EMPTY
    assert longest_common_prefix((A, B), (A, B)) == (A, B)


def test_left_quotient_examples():
    assert left_quotient((A,), ("a", "b", "c")) == ("b", "c")
    assert left_quotient((A, B), (A, B)) == EMPTY
    with pytest.raises(NotPrefix):
        left_quotient((A, B), (A,))


def test_d_st_examples():
    # t^-1 c = e < b = s^-1 c
    assert d_st((A,), (A, B), (A, B)) == (B,)
    # s^-1 c = ab and t^-1 c = b are incomparable
    with pytest.raises(ValueError):
        d_st(EMPTY, (A,), (A, B))
    assert d_st((A,), (A, A), (A, A, A)) == (A,)
    with pytest.raises(ValueError):
        d_st((A,), (A,), (A, A))
    with pytest.raises(ValueError):
        d_st((B,), (A,), (A, A))


@given(words, words, words)
def test_partial_order_axioms(s, t, u):
    assert le(s, s)
    if le(s, t) and le(t, s):
        assert s == t
    if le(s, t) and le(t, u):
        assert le(s, u)


@given(words, words, words)
def test_quasi_lattice_property(s, t, u):
    j = join(s, t)
    if le(s, u) and le(t, u):
        assert j is not INFINITY and le(j, u)
    if j is not INFINITY:
        assert le(s, j) and le(t, j)


@given(words, words, words)
def test_d_st_postcondition(s, t, c):
    if s == t or not (le(s, c) and le(t, c)):
        return
    a, b = left_quotient(s, c), left_quotient(t, c)
    if join(a, b) is INFINITY:
        return
    d = d_st(s, t, c)
    assert d != EMPTY
    assert a + d == b or b + d == a


def test_word_literals():
    assert parse_word("f,g") == ("f", "g")
    assert parse_word("@v") == EMPTY
    assert parse_word("") == EMPTY
    with pytest.raises(ValueError):
        parse_word("f,,g")


def test_graph_paths(loop, edge):
    assert is_graph_path(loop, ("f", "f"))
    assert not is_graph_path(edge, ("f", "f"))
    p = to_path(edge, (), "u")
    assert p == GraphPath((), "u", "u") and p.is_vertex
    with pytest.raises(NonComposable):
        to_path(edge, ("f", "f"))
    with pytest.raises(GraphError):
        to_path(edge, ("x",))
    with pytest.raises(ValueError):
        to_path(edge, ())
    assert parse_path(edge, "@v") == GraphPath((), "v", "v")
    assert parse_path(edge, "f") == GraphPath(("f",), "u", "v")


def test_path_prefix_order(edge):
    f = parse_path(edge, "f")
    assert parse_path(edge, "@u").le(f)
    assert not parse_path(edge, "@v").le(f)
    assert parse_path(edge, "@u").quotient(f) == f
    assert f.quotient(f) == parse_path(edge, "@v")


def test_enumerate_paths_examples(loop, edge, cycle2):
    assert [len(lv) for lv in enumerate_paths(loop, 3)] == [1, 1, 1, 1]
    assert [len(lv) for lv in enumerate_paths(edge, 3)] == [2, 1, 0, 0]
    levels = enumerate_paths(cycle2, 2)
    assert [len(lv) for lv in levels] == [2, 2, 2]
    assert [p.edges for p in levels[2]] == [("f", "g"), ("g", "f")]
    with pytest.raises(GraphError):
        enumerate_paths(parse_graph("vertex v omega"), 1)


def test_enumerate_paths_matches_brute_force(small_graph):
    levels = enumerate_paths(small_graph, 4)
    edges = [(e.id, e.src, e.dst) for e in small_graph.edges]
    for k in range(1, 5):
        assert [p.edges for p in levels[k]] == paths_bf(small_graph.vertices, edges, k)


def test_enumeration_adjacency_recursion(small_graph):
    levels = enumerate_paths(small_graph, 4)
    for k in range(1, 4):
        for e in small_graph.edges:
            starting = [p for p in levels[k + 1] if p.edges[0] == e.id]
            from_range = [p for p in levels[k] if p.start == e.dst]
            assert len(starting) == len(from_range)
