"""
Brute-force ground truth: every total matching of a small graph, nu_T, and exhaustive max-weight search.

Total matchings are enumerated by depth-first search over element indices in canonical order, so the
output list is lexicographic in the sorted index sequences (the empty set first).
"""

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import List, Sequence, Tuple

import networkx as nx
import numpy as np

from totalMatching.exactGeometry import Vector, as_vector
from totalMatching.graphCore import (
    Element,
    Graph,
    element_adjacency,
    is_complete_bipartite,
    make_complete_bipartite,
    to_networkx,
    total_graph,
)
from totalMatching.utils import DEFAULT_CONFIG, LimitExceededError, check_limit, log

TotalMatching = Tuple[Element, ...]

MODES = ("all", "maximal", "maximum")


def is_total_matching(g: Graph, elements: Sequence[Element]) -> bool:
    adjacency = element_adjacency(g)
    indices = [g.index_of(element) for element in elements]
    if len(set(indices)) != len(indices):
        return False
    return all(j not in adjacency[i] for i in indices for j in indices if i != j)


def characteristic_vector(g: Graph, elements: Sequence[Element]) -> Vector:
    chi = [Fraction(0)] * len(g.elements)
    for element in elements:
        chi[g.index_of(element)] = Fraction(1)
    return tuple(chi)


def _independent_index_sets(masks: Sequence[int]) -> List[Tuple[int, ...]]:
    size = len(masks)
    found = []

    def extend(start, forbidden, chosen):
        found.append(tuple(chosen))
        for i in range(start, size):
            if not forbidden >> i & 1:
                chosen.append(i)
                extend(i + 1, forbidden | masks[i] | (1 << i), chosen)
                chosen.pop()

    extend(0, 0, [])
    return found


@lru_cache(maxsize=64)
def _index_sets(g: Graph) -> Tuple[Tuple[int, ...], ...]:
    masks = [sum(1 << j for j in neighbors) for neighbors in element_adjacency(g)]
    found = _independent_index_sets(masks)
    log(f"DEBUG ENUMERATION: {len(found)} total matchings on {len(masks)} elements")
    return tuple(found)


def _checked_index_sets(g: Graph, limit: int) -> Tuple[Tuple[int, ...], ...]:
    check_limit("element count", len(g.elements), limit, EnumerationLimitError)
    return _index_sets(g)


def enumerate_total_matchings(
    g: Graph, mode: str = "all", limit: int = DEFAULT_CONFIG["enumerationLimit"]
) -> List[TotalMatching]:
    """All, inclusion-maximal or maximum-size total matchings, in canonical order."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {', '.join(MODES)}, got {mode!r}")
    index_sets = _checked_index_sets(g, limit)
    if mode == "maximal":
        adjacency = element_adjacency(g)
        everything = set(range(len(g.elements)))
        selected = []
        for chosen in index_sets:
            covered = set(chosen).union(*(adjacency[i] for i in chosen))
            if covered == everything:
                selected.append(chosen)
        index_sets = selected
    elif mode == "maximum":
        best = max(len(chosen) for chosen in index_sets)
        index_sets = [chosen for chosen in index_sets if len(chosen) == best]
    return [tuple(g.elements[i] for i in chosen) for chosen in index_sets]


def nu_t(g: Graph, limit: int = DEFAULT_CONFIG["enumerationLimit"]) -> int:
    """Size of a maximum total matching; complete bipartite graphs use the assignment solver."""
    r = len(g.bipartition[0]) if is_complete_bipartite(g) else 0
    if r and g == make_complete_bipartite(r, g.n - r):
        from totalMatching.solverSeparation import solve_kbipartite

        value, _ = solve_kbipartite(r, g.n - r, [1] * len(g.elements))
        return int(value)
    return max(len(chosen) for chosen in _checked_index_sets(g, limit))


def characteristic_matrix(g: Graph, limit: int = DEFAULT_CONFIG["enumerationLimit"]) -> np.ndarray:
    """0/1 matrix with one row per total matching (canonical order) and one column per element."""
    index_sets = _checked_index_sets(g, limit)
    matrix = np.zeros((len(index_sets), len(g.elements)), dtype=np.int64)
    for row, chosen in enumerate(index_sets):
        matrix[row, list(chosen)] = 1
    return matrix


def characteristic_vectors(g: Graph, limit: int = DEFAULT_CONFIG["enumerationLimit"]) -> List[Vector]:
    return [characteristic_vector(g, T) for T in enumerate_total_matchings(g, "all", limit)]


def integer_weights(weights: Sequence[Fraction]) -> Tuple[np.ndarray, int]:
    """Weights times their common denominator, as an int64 array when that cannot overflow."""
    denominator = lcm(*(weight.denominator for weight in weights)) if weights else 1
    scaled = [int(weight * denominator) for weight in weights]
    bound = sum(abs(value) for value in scaled)
    dtype = np.int64 if bound < 2**62 else object
    return np.array(scaled, dtype=dtype), denominator


def _check_weights(g: Graph, w: Sequence) -> Vector:
    w = as_vector(w)
    if len(w) != len(g.elements):
        raise ValueError(f"weight vector has length {len(w)}, expected {len(g.elements)}")
    return w


def max_weight_total_matching_bruteforce(
    g: Graph, w: Sequence, limit: int = DEFAULT_CONFIG["enumerationLimit"]
) -> Tuple[Fraction, TotalMatching]:
    """Exhaustive maximum of sum(w_d for d in T); the witness is the canonically first optimal set."""
    w = _check_weights(g, w)
    index_sets = _checked_index_sets(g, limit)
    weights, denominator = integer_weights(w)
    matrix = characteristic_matrix(g, limit)
    if weights.dtype == object:
        matrix = matrix.astype(object)
    values = matrix @ weights
    best = int(np.argmax(values))
    return Fraction(int(values[best]), denominator), tuple(g.elements[i] for i in index_sets[best])


def max_weight_over_table(
    g: Graph, weights_list: Sequence[Sequence], limit: int = DEFAULT_CONFIG["enumerationLimit"]
) -> List[Fraction]:
    """Brute-force optimum for many weight vectors at once (one matrix product over a common denominator)."""
    if not weights_list:
        return []
    rows = [_check_weights(g, w) for w in weights_list]
    flat, denominator = integer_weights([value for row in rows for value in row])
    table = flat.reshape(len(rows), len(g.elements)).T
    matrix = characteristic_matrix(g, limit)
    if table.dtype == object:
        matrix = matrix.astype(object)
    optima = (matrix @ table).max(axis=0)
    return [Fraction(int(value), denominator) for value in optima]


def random_weights(g: Graph, rng: np.random.Generator, low: int = -5, high: int = 10, denominator: int = 1) -> Vector:
    """Seeded random weights p/q with p in [low, high] and q in [1, denominator]."""
    size = len(g.elements)
    numerators = rng.integers(low, high, size=size, endpoint=True)
    denominators = rng.integers(1, denominator, size=size, endpoint=True)
    return tuple(Fraction(int(p), int(q)) for p, q in zip(numerators, denominators))


def stable_sets_of_total_graph(g: Graph) -> List[TotalMatching]:
    """Maximal stable sets of T(g), found as maximal cliques of its complement, mapped back to elements."""
    complement = nx.complement(to_networkx(total_graph(g)))
    found = (tuple(sorted(g.elements[i] for i in clique)) for clique in nx.find_cliques(complement))
    return sorted(found, key=lambda T: [g.index_of(element) for element in T])


class EnumerationLimitError(LimitExceededError):
    pass
