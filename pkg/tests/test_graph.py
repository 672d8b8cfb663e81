import pytest

from flames import GraphParseError, RootedDigraph, is_acyclic, parse_graph, serialize_graph, subgraph_view
from flames.graph import format_weight, graph_from_json, graph_to_json, parse_weight

from corpus import TRIANGLE, CYCLIC, HEAVY_TARGET


def test_parse_with_comments_crlf_and_weights():
    text = "# demo\r\ndigraph 3 4 0\r\n0 1 1\r\n0 2 10\r\n\r\n1 2 1.5\r\n0 2 3\r\n"
    D = parse_graph(text)
    assert D.n == 3 and D.root == 0
    assert D.edges == ((0, 1), (0, 2), (1, 2), (0, 2))
    assert D.weights == (10**9, 10 * 10**9, 1_500_000_000, 3 * 10**9)


@pytest.mark.parametrize(
    "text,kind",
    [
        ("", "header"),
        ("graph 3 1 0\n0 1\n", "header"),
        ("digraph 3 1 5\n0 1\n", "header"),
        ("digraph 3 2 0\n0 1\n", "edge-count"),
        ("digraph 3 1 0\n0 1\n1 2\n", "edge-count"),
        ("digraph 3 1 0\n0 x\n", "edge"),
        ("digraph 3 1 0\n0 3\n", "vertex-range"),
        ("digraph 3 1 0\n1 1\n", "self-loop"),
        ("digraph 3 1 0\n0 1 -2\n", "negative-weight"),
        ("digraph 3 1 0\n0 1 1e3\n", "weight"),
        ("digraph 3 1 0\n0 1 0.1234567891\n", "weight-precision"),
        (b"digraph 3 1 0\n0 1 \xff\n", "encoding"),
    ],
)
def test_parse_errors_are_distinct(text, kind):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.kind == kind


def test_error_reports_line_number():
    with pytest.raises(GraphParseError) as info:
        parse_graph("digraph 3 2 0\n0 1\n# note\n2 2\n")
    assert info.value.line == 4


def test_text_and_json_round_trip():
    for D in (TRIANGLE, CYCLIC, HEAVY_TARGET):
        assert parse_graph(serialize_graph(D)) == D
        assert graph_from_json(graph_to_json(D)) == D


def test_weight_formatting_is_exact():
    assert parse_weight("0.000000001") == 1
    assert format_weight(parse_weight("12.5")) == "12.5"
    assert format_weight(5 * 10**9) == "5"


def test_constructor_rejects_bad_edges():
    with pytest.raises(ValueError):
        RootedDigraph(2, 0, [(0, 0)])
    with pytest.raises(ValueError):
        RootedDigraph(2, 0, [(0, 2)])
    with pytest.raises(ValueError):
        RootedDigraph(2, 0, [(0, 1)], [-1])


def test_views_and_adjacency():
    view = subgraph_view(CYCLIC, {0, 1, 3})
    assert view.in_edges(3) == [3]
    assert view.in_degree(2) == 1
    assert view.entering_edges({2, 3}) == [1]
    assert subgraph_view(view, {0}).edge_ids == (0,)
    with pytest.raises(ValueError):
        view.restrict({2})


def test_acyclicity():
    assert is_acyclic(TRIANGLE)
    assert not is_acyclic(CYCLIC)
    assert is_acyclic(subgraph_view(CYCLIC, {0, 1, 2, 3}))


def test_root_in_edges_are_listed():
    D = RootedDigraph(3, 0, [(0, 1), (1, 0), (2, 0)])
    assert D.root_in_edges == [1, 2]
