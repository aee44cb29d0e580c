import pytest

from totalMatching.graphCore import (
    Element,
    Graph,
    GraphError,
    GraphFormatError,
    Side,
    adjacent,
    delete_edges,
    element_adjacency,
    format_graph,
    induced_subgraph,
    is_chordal,
    is_complete_bipartite,
    is_perfect_elimination_ordering,
    is_tree,
    make_complete_bipartite,
    make_path,
    make_star,
    maximal_cliques,
    parse_graph,
    parse_tree_spec,
    reduced_total_graph,
    reduced_total_graph_cliques,
    sides,
    total_graph,
    trees_up_to,
)

TRIANGLE = Graph(3, ((0, 1), (0, 2), (1, 2)))


def test_complete_bipartite_layout():
    g = make_complete_bipartite(2, 3)
    assert (g.n, g.m) == (5, 6)
    assert sides(g) == ((0, 1), (2, 3, 4))
    assert g.labels == ("v1", "v2", "v3", "v4", "v5", "e1-3", "e1-4", "e1-5", "e2-3", "e2-4", "e2-5")
    assert is_complete_bipartite(g)
    assert not is_complete_bipartite(delete_edges(g, [(0, 2)]))


@pytest.mark.parametrize("r, s", [(0, 2), (2, 0)])
def test_complete_bipartite_rejects_empty_side(r, s):
    with pytest.raises(GraphError):
        make_complete_bipartite(r, s)


@pytest.mark.parametrize(
    "edges, bipartition",
    [
        (((0, 0),), None),
        (((0, 1), (1, 0)), None),
        (((0, 3),), None),
        (((0, 1),), (frozenset({0, 1}), frozenset({2}))),
    ],
)
def test_invalid_graphs(edges, bipartition):
    with pytest.raises(GraphError):
        Graph(3, edges, bipartition)


def test_element_labels_parse_back():
    assert Element.parse("e1-4") == Element.edge(3, 0)
    assert Element.parse("v3") == Element.vertex(2)
    assert Element.edge(0, 3).label == "e1-4"
    with pytest.raises(ValueError):
        Element.parse("x1")


def test_canonical_order_is_tuple_order():
    g = make_complete_bipartite(2, 2)
    assert list(g.elements) == sorted(g.elements)
    assert [g.index_of(d) for d in g.elements] == list(range(8))


def test_adjacency_rules():
    g = make_path(3)
    v1, v2, v3 = (Element.vertex(i) for i in range(3))
    e12, e23 = Element.edge(0, 1), Element.edge(1, 2)
    assert adjacent(g, v1, v2)
    assert not adjacent(g, v1, v3)
    assert adjacent(g, v1, e12)
    assert not adjacent(g, v1, e23)
    assert adjacent(g, e12, e23)
    with pytest.raises(GraphError):
        adjacent(g, v1, v1)
    with pytest.raises(GraphError):
        adjacent(g, v1, Element.edge(0, 2))


def test_element_adjacency_is_symmetric():
    g = make_complete_bipartite(2, 3)
    adjacency = element_adjacency(g)
    for i, neighbors in enumerate(adjacency):
        assert i not in neighbors
        assert all(i in adjacency[j] for j in neighbors)


def test_total_graph_of_k22():
    t = total_graph(make_complete_bipartite(2, 2))
    assert (t.n, t.m) == (8, 16)


def test_total_graph_of_k22_has_five_hole():
    result = is_chordal(total_graph(make_complete_bipartite(2, 2)))
    assert not result
    assert len(result.hole) == 5
    assert result.hole[0] == min(result.hole)


def test_total_graph_of_triangle_is_not_chordal():
    assert not is_chordal(total_graph(TRIANGLE))


def test_total_graphs_of_trees_are_chordal():
    for tree in trees_up_to(8):
        t = total_graph(tree)
        result = is_chordal(t)
        assert result, format_graph(tree)
        assert is_perfect_elimination_ordering(t, result.ordering)


def test_trees_up_to_counts_isomorphism_classes():
    trees = list(trees_up_to(7))
    assert len(trees) == 1 + 1 + 1 + 2 + 3 + 6 + 11
    assert all(is_tree(t) for t in trees)


@pytest.mark.parametrize(
    "text, n, max_degree",
    [("path5", 5, 2), ("star4", 4, 3), ("prufer:1,1", 4, 3), ("prufer:2,3", 4, 2)],
)
def test_tree_specs(text, n, max_degree):
    g = parse_tree_spec(text)
    assert is_tree(g)
    assert g.n == n
    assert max(len(neighbors) for neighbors in g.neighbors) == max_degree


@pytest.mark.parametrize("text", ["cycle4", "pathx", "prufer:a"])
def test_bad_tree_specs(text):
    with pytest.raises(GraphError):
        parse_tree_spec(text)


def test_star_center_is_first_vertex():
    g = make_star(3)
    assert g.neighbors[0] == frozenset({1, 2, 3})


def test_graph_file_round_trip():
    g = make_complete_bipartite(2, 3)
    text = format_graph(g)
    assert text.splitlines()[:2] == ["p tm 5 6", "b 2"]
    assert parse_graph("c a comment\n" + text) == g


@pytest.mark.parametrize(
    "text, line_number",
    [
        ("e 1 2\n", 1),
        ("p tm 2 1\ne 1 1\n", 2),
        ("p tm 2 1\ne 1 3\n", 2),
        ("p tm 3 2\ne 1 2\ne 2 1\n", 3),
        ("p tm 3 2\ne 1 2\n", 2),
        ("p tm 3 1\nb 1\ne 2 3\n", 3),
        ("p tm 3 1\nq 1 2\n", 2),
    ],
)
def test_graph_file_errors_carry_line_numbers(text, line_number):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line_number == line_number


def test_induced_subgraph_keeps_bipartition():
    g = induced_subgraph(make_complete_bipartite(3, 3), [0, 2, 4, 5])
    assert g == make_complete_bipartite(2, 2)


def test_maximal_cliques_of_triangle_total_graph():
    # T(K_3) is the octahedron
    cliques = maximal_cliques(total_graph(TRIANGLE))
    assert len(cliques) == 8
    assert all(len(clique) == 3 for clique in cliques)
    assert cliques == sorted(cliques)


@pytest.mark.parametrize("r, s", [(2, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("removed_side", [Side.A, Side.B])
def test_reduced_total_graph_cliques_match_enumeration(r, s, removed_side):
    reduced, kept = reduced_total_graph(r, s, removed_side)
    enumerated = sorted(
        (frozenset(kept[i] for i in clique) for clique in maximal_cliques(reduced)),
        key=lambda clique: tuple(sorted(clique)),
    )
    expected = reduced_total_graph_cliques(r, s, removed_side)
    assert len(expected) == r + s
    assert enumerated == expected
