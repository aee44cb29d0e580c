from fractions import Fraction

import numpy as np
import pytest

from totalMatching.enumeration import (
    EnumerationLimitError,
    characteristic_matrix,
    characteristic_vector,
    enumerate_total_matchings,
    integer_weights,
    is_total_matching,
    max_weight_over_table,
    max_weight_total_matching_bruteforce,
    nu_t,
    random_weights,
    stable_sets_of_total_graph,
)
from totalMatching.graphCore import (
    Element,
    Graph,
    delete_edges,
    induced_subgraph,
    make_complete_bipartite,
    make_path,
    make_star,
)
from totalMatching.utils import LimitExceededError

K11 = make_complete_bipartite(1, 1)
TRIANGLE = Graph(3, ((0, 1), (0, 2), (1, 2)))


def test_total_matchings_of_single_edge():
    v1, v2, e = Element.vertex(0), Element.vertex(1), Element.edge(0, 1)
    assert enumerate_total_matchings(K11) == [(), (v1,), (v2,), (e,)]
    assert enumerate_total_matchings(K11, "maximal") == [(v1,), (v2,), (e,)]
    assert enumerate_total_matchings(K11, "maximum") == [(v1,), (v2,), (e,)]


@pytest.mark.parametrize("r, s, count", [(1, 1, 4), (2, 2, 21), (2, 3, 53), (2, 4, 139), (3, 4, 383)])
def test_total_matching_counts(r, s, count):
    assert len(enumerate_total_matchings(make_complete_bipartite(r, s))) == count


def test_every_enumerated_set_is_a_total_matching():
    g = make_complete_bipartite(2, 3)
    found = enumerate_total_matchings(g)
    assert all(is_total_matching(g, T) for T in found)
    assert len(set(found)) == len(found)


def test_is_total_matching_rejects_adjacent_elements():
    g = make_path(3)
    assert not is_total_matching(g, [Element.vertex(0), Element.edge(0, 1)])
    assert not is_total_matching(g, [Element.vertex(0), Element.vertex(0)])
    assert is_total_matching(g, [Element.vertex(0), Element.vertex(2)])


def test_unknown_mode():
    with pytest.raises(ValueError):
        enumerate_total_matchings(K11, "largest")


def test_enumeration_limit():
    with pytest.raises(EnumerationLimitError):
        enumerate_total_matchings(make_complete_bipartite(2, 2), limit=5)
    assert issubclass(EnumerationLimitError, LimitExceededError)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_nu_t_of_balanced_biclique(r):
    assert nu_t(make_complete_bipartite(r, r)) == r


def test_nu_t_of_triangle():
    assert nu_t(TRIANGLE) == 2


def test_nu_t_of_paths():
    for n in range(1, 8):
        g = make_path(n)
        assert nu_t(g) == len(enumerate_total_matchings(g, "maximum")[0])


@pytest.mark.parametrize(
    "g", [make_complete_bipartite(2, 3), make_complete_bipartite(3, 3), make_path(5), make_star(4), TRIANGLE]
)
def test_nu_t_never_grows_on_subgraphs(g):
    value = nu_t(g)
    for v in range(g.n):
        assert nu_t(induced_subgraph(g, [u for u in range(g.n) if u != v])) <= value
    for edge in g.edges:
        assert nu_t(delete_edges(g, [edge])) <= value
    assert nu_t(delete_edges(induced_subgraph(g, range(g.n - 1)), g.edges[:1])) <= value


def test_characteristic_matrix_rows_are_characteristic_vectors():
    g = make_complete_bipartite(2, 2)
    matrix = characteristic_matrix(g)
    assert matrix.shape == (21, 8)
    vectors = [characteristic_vector(g, T) for T in enumerate_total_matchings(g)]
    assert matrix.tolist() == [[int(value) for value in vector] for vector in vectors]


def test_integer_weights_common_denominator():
    scaled, denominator = integer_weights([Fraction(1, 2), Fraction(-1, 3), Fraction(2)])
    assert denominator == 6
    assert scaled.tolist() == [3, -2, 12]
    assert scaled.dtype == np.int64


def test_brute_force_maximum():
    value, witness = max_weight_total_matching_bruteforce(K11, [1, 1, 3])
    assert value == 3
    assert witness == (Element.edge(0, 1),)
    value, witness = max_weight_total_matching_bruteforce(K11, [-1, -1, -1])
    assert value == 0
    assert witness == ()


def test_brute_force_rejects_wrong_length():
    with pytest.raises(ValueError):
        max_weight_total_matching_bruteforce(K11, [1, 1])


def test_table_matches_single_brute_force(rng):
    g = make_complete_bipartite(2, 3)
    weights = [random_weights(g, rng, denominator=3) for _ in range(25)]
    table = max_weight_over_table(g, weights)
    assert table == [max_weight_total_matching_bruteforce(g, w)[0] for w in weights]


def test_random_weights_are_seeded():
    g = make_complete_bipartite(2, 2)
    first = random_weights(g, np.random.default_rng(7), denominator=5)
    second = random_weights(g, np.random.default_rng(7), denominator=5)
    assert first == second
    assert all(-5 <= value <= 10 for value in first)


@pytest.mark.parametrize("g", [make_complete_bipartite(2, 2), make_path(5), TRIANGLE])
def test_maximal_total_matchings_are_maximal_stable_sets(g):
    assert set(stable_sets_of_total_graph(g)) == set(enumerate_total_matchings(g, "maximal"))
