from dataclasses import replace
from fractions import Fraction

import pytest

from totalMatching.enumeration import characteristic_vectors
from totalMatching.exactGeometry import LinearInequality
from totalMatching.graphCore import Graph, make_complete_bipartite, make_path, make_star, parse_tree_spec, trees_up_to
from totalMatching.inequalityCatalog import (
    BicliqueSelector,
    CatalogError,
    admissible_selectors,
    balanced_biclique_inequality,
    biclique_catalog,
    clique_inequalities,
    complete_bipartite_description,
    edge_inequality,
    induced_bicliques,
    is_facet,
    is_valid,
    node_inequality,
    nonbalanced_lifted_inequality,
    plain_nonbalanced_inequality,
    relaxation_inequalities,
    tree_description,
    verify_description,
)

K22 = make_complete_bipartite(2, 2)
K23 = make_complete_bipartite(2, 3)
K34 = make_complete_bipartite(3, 4)
# K_{2,2} plus a triangle hanging off vertex 1
TRIANGLE_HOST = Graph(6, ((0, 2), (0, 3), (1, 2), (1, 3), (0, 4), (0, 5), (4, 5)))


def test_node_and_edge_rows():
    g = make_complete_bipartite(1, 1)
    row = node_inequality(g, 0)
    assert (row.coefficients, row.rhs, row.family, row.note) == ((1, 0, 1), 1, "node", "v1")
    row = edge_inequality(g, 0, 1)
    assert (row.coefficients, row.rhs, row.family, row.note) == ((1, 1, 1), 1, "edge", "e1-2")


def test_star_description_drops_leaf_node_rows():
    g = make_star(3)
    assert len(tree_description(g).rows) == 11
    assert len(tree_description(g, keep_leaf_nodes=True).rows) == 14


def test_tree_description_needs_a_tree():
    with pytest.raises(CatalogError):
        tree_description(K22)


@pytest.mark.parametrize("g", [K23, make_complete_bipartite(3, 3), make_path(6), make_star(4), TRIANGLE_HOST])
def test_total_matchings_satisfy_the_relaxation(g):
    rows = relaxation_inequalities(g)
    assert all(row.satisfied_by(z) for z in characteristic_vectors(g) for row in rows)


@pytest.mark.parametrize("g", [make_path(5), make_star(3), make_path(1), make_path(2)])
def test_clique_rows_of_trees_are_node_and_edge_rows(g):
    clique_keys = {row.key for row in clique_inequalities(g)}
    tree_keys = {row.key for row in tree_description(g).rows if row.family != "nonneg"}
    assert clique_keys == tree_keys


@pytest.mark.parametrize("r, s, count", [(2, 2, 17), (2, 3, 27), (2, 4, 44)])
def test_complete_bipartite_description_sizes(r, s, count):
    assert len(complete_bipartite_description(r, s).rows) == count


def test_description_family_counts_for_k23():
    families = [row.family for row in complete_bipartite_description(2, 3).rows]
    assert families.count("node") == 5
    assert families.count("edge") == 6
    assert families.count("nonneg") == 11
    assert families.count("balanced-biclique") == 3
    assert families.count("nonbalanced-lifted") == 2


def test_induced_bicliques():
    assert list(induced_bicliques(K22, 2, 2)) == [((0, 1), (2, 3))]
    assert len(list(induced_bicliques(make_complete_bipartite(3, 3), 2, 2))) == 9
    assert list(induced_bicliques(make_path(4), 1, 2)) == [((1,), (0, 2)), ((2,), (1, 3))]


def test_balanced_row_needs_an_induced_balanced_biclique():
    with pytest.raises(CatalogError):
        balanced_biclique_inequality(K23, (0, 1), (2, 3, 4))
    with pytest.raises(CatalogError):
        balanced_biclique_inequality(K22, (0,), (2,))
    with pytest.raises(CatalogError):
        balanced_biclique_inequality(K22, (0, 2), (1, 3))


def test_balanced_row_on_k22():
    row = balanced_biclique_inequality(K22, (0, 1), (2, 3))
    assert row.coefficients == (1,) * 8
    assert row.rhs == 2
    assert row.note == "A={1,2} B={3,4}"


def test_lifted_row_on_k23():
    sel = BicliqueSelector((0, 1), (2, 3, 4), (0,), ())
    assert sel.beta == 2
    assert sel.rhs == 3
    row = nonbalanced_lifted_inequality(K23, sel)
    assert row.coefficients == (2, 1, 1, 1, 1) + (1,) * 6
    assert row.rhs == 3


def test_lifted_row_with_two_one_selector_on_k34():
    sel = BicliqueSelector((0, 1, 2), (3, 4, 5, 6), (0, 1), (3,))
    assert sel.beta == 2
    assert sel.rhs == 5
    row = nonbalanced_lifted_inequality(K34, sel)
    weights = dict(zip(K34.labels, row.coefficients))
    assert [weights[f"v{i}"] for i in range(1, 8)] == [2, 2, 1, 2, 1, 1, 1]
    assert weights["e1-4"] == weights["e2-4"] == 2
    assert weights["e1-5"] == weights["e3-4"] == 1


def test_fractional_beta():
    sel = BicliqueSelector((0, 1, 2), (3, 4, 5, 6, 7), (0, 1), (3,))
    assert sel.beta == 3
    sel = BicliqueSelector((0, 1, 2, 3), (4, 5, 6, 7, 8), (0, 1, 2), (4,))
    assert sel.beta == Fraction(3, 2)


@pytest.mark.parametrize(
    "sel",
    [
        BicliqueSelector((0, 1), (2, 3), (0,), ()),
        BicliqueSelector((0, 1), (2, 3, 4), (0, 1), (2,)),
        BicliqueSelector((0, 1, 2), (3, 4, 5, 6), (0, 1), ()),
        BicliqueSelector((0, 1), (2, 3, 4), (5,), ()),
    ],
)
def test_inadmissible_selectors(sel):
    with pytest.raises(CatalogError):
        sel.check()


def test_admissible_selector_counts():
    assert len(admissible_selectors((0, 1), (2, 3, 4))) == 2
    assert len(admissible_selectors((0, 1, 2), (3, 4, 5, 6))) == 15
    assert admissible_selectors((0, 1), (2, 3)) == []


@pytest.mark.parametrize("r, s", [(2, 3), (2, 5), (3, 4), (3, 6), (4, 5)])
def test_lifted_rhs_counts_either_side(r, s):
    # the vertex sets A and B weigh the same under the row, and both meet the rhs
    selectors = admissible_selectors(range(r), range(r, r + s))
    assert selectors
    for sel in selectors:
        a1, b1 = len(sel.A1), len(sel.B1)
        assert a1 * (sel.beta - 1) + r == sel.beta * b1 + s - b1 == sel.rhs


def test_plain_row_is_valid_but_not_a_facet():
    row = plain_nonbalanced_inequality(K23, (0, 1), (2, 3, 4))
    assert row.rhs == 3
    assert is_valid(K23, row)
    assert not is_facet(K23, row)


def test_invalid_row_has_a_counterexample():
    row = LinearInequality((1,) * 8, 1)
    result = is_valid(K22, row)
    assert not result
    assert sum(row.coefficients[K22.index_of(d)] for d in result.counterexample) > 1
    with pytest.raises(CatalogError):
        is_facet(K22, row)


def test_balanced_rows_of_k33_are_facets():
    g = make_complete_bipartite(3, 3)
    for A, B in induced_bicliques(g, 2, 2):
        result = is_facet(g, balanced_biclique_inequality(g, A, B))
        assert result.facet
        assert result.rank == len(g.elements)
        assert len(result.certificate) == len(g.elements)


@pytest.mark.parametrize("r, s", [(2, 3), (2, 4), (3, 4)])
def test_lifted_rows_are_facets(r, s):
    g = make_complete_bipartite(r, s)
    A, B = tuple(range(r)), tuple(range(r, r + s))
    for sel in admissible_selectors(A, B):
        result = is_facet(g, nonbalanced_lifted_inequality(g, sel))
        assert result.facet, str(sel)


def test_relaxation_rows_of_k22_are_facets():
    for row in complete_bipartite_description(2, 2).rows:
        assert is_facet(K22, row), row.note


def test_balanced_row_on_a_non_bipartite_host_is_a_facet():
    row = balanced_biclique_inequality(TRIANGLE_HOST, (0, 1), (2, 3))
    assert is_facet(TRIANGLE_HOST, row)


def test_catalog_of_non_bipartite_host_has_no_lifted_rows():
    families = [row.family for row in biclique_catalog(TRIANGLE_HOST).rows]
    assert families.count("balanced-biclique") == 1
    assert "nonbalanced-lifted" not in families


@pytest.mark.parametrize("r, s", [(2, 2), (2, 3)])
def test_complete_bipartite_description_verifies(r, s):
    report = verify_description(make_complete_bipartite(r, s), complete_bipartite_description(r, s))
    assert report.passed
    assert report.facets == len(complete_bipartite_description(r, s).rows)


def test_report_text():
    report = verify_description(K23, complete_bipartite_description(2, 3))
    assert str(report) == "complete: yes, sound: yes, irredundant: yes, facets: 27"


def test_truncated_description_is_incomplete():
    h = complete_bipartite_description(2, 3)
    truncated = h.with_rows(h.rows[:-1])
    report = verify_description(K23, truncated)
    assert not report.complete
    assert report.sound
    assert [row.key for row in report.missing] == [h.rows[-1].key]


def test_extra_rows_are_redundant_and_invalid_rows_unsound():
    h = complete_bipartite_description(2, 3)
    plain = plain_nonbalanced_inequality(K23, (0, 1), (2, 3, 4))
    report = verify_description(K23, h.with_rows(h.rows + (plain, h.rows[0])))
    assert report.complete and report.sound
    assert not report.irredundant
    assert len(report.redundant) == 2

    broken = replace(h.rows[0], rhs=0)
    report = verify_description(K23, h.with_rows((broken,) + h.rows[1:]))
    assert not report.sound
    assert not report.complete


@pytest.mark.parametrize("spec", ["path5", "star4", "prufer:2,2,4"])
def test_tree_descriptions_match_the_hull(spec):
    g = parse_tree_spec(spec)
    assert verify_description(g, tree_description(g)).passed


def test_leaf_node_rows_are_reported_redundant():
    g = make_path(4)
    report = verify_description(g, tree_description(g, keep_leaf_nodes=True))
    assert report.complete and report.sound
    assert sorted(row.note for row in report.redundant) == ["v1", "v4"]


@pytest.mark.slow
def test_k24_description_verifies():
    report = verify_description(make_complete_bipartite(2, 4), complete_bipartite_description(2, 4))
    assert report.passed
    assert report.facets == 44


@pytest.mark.slow
def test_every_small_tree_description_is_complete():
    for g in trees_up_to(7):
        h = tree_description(g)
        report = verify_description(g, h)
        assert report.passed
        leaves = sum(len(neighbors) == 1 for neighbors in g.neighbors)
        if g.n >= 2:
            assert report.facets == (g.n - leaves) + (g.n - 1) + (2 * g.n - 1)
