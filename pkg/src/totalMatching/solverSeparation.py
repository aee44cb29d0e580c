"""
Max-weight total matching on complete bipartite graphs via assignment, exact LP cross-checks,
and brute-force separation of biclique inequalities.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple

from totalMatching.assignment import solve_assignment
from totalMatching.enumeration import TotalMatching, enumerate_total_matchings
from totalMatching.exactGeometry import EQ, HPolytope, LinearInequality, Vector, as_vector, nonnegativity
from totalMatching.graphCore import (
    Element,
    Graph,
    GraphError,
    Side,
    is_complete_bipartite,
    make_complete_bipartite,
    reduced_total_graph_cliques,
    sides,
)
from totalMatching.inequalityCatalog import (
    balanced_biclique_inequality,
    complete_bipartite_description,
    edge_inequality,
    element_space,
    tree_description,
)
from totalMatching.simplex import LPResult, lp_solve
from totalMatching.utils import DEFAULT_CONFIG, LimitExceededError, check_limit, log


def _side(r: int, s: int, side: Side) -> List[int]:
    return list(range(r)) if side is Side.A else list(range(r, r + s))


def _check_length(g: Graph, w: Sequence) -> Vector:
    w = as_vector(w)
    if len(w) != len(g.elements):
        raise ValueError(f"vector has length {len(w)}, expected {len(g.elements)}")
    return w


# ----------- max-weight total matching on K_{r,s} ----------- #


def solve_avoiding_side(r: int, s: int, w: Sequence, removed_side: Side) -> Tuple[Fraction, TotalMatching]:
    """Best total matching using no vertex of removed_side, as an assignment problem.

    Rows are the kept vertices; columns are the removed vertices followed by one self-choice column per kept
    vertex. A kept vertex takes an incident edge, its own vertex weight, or a zero-profit column (nothing).
    """
    g = make_complete_bipartite(r, s)
    w = _check_length(g, w)
    kept = _side(r, s, removed_side.other())
    removed = _side(r, s, removed_side)
    weight = {element: w[i] for i, element in enumerate(g.elements)}
    zero = Fraction(0)

    profit = []
    for i, v in enumerate(kept):
        row = [max(zero, weight[Element.edge(v, u)]) for u in removed] + [zero] * len(kept)
        row[len(removed) + i] = max(zero, weight[Element.vertex(v)])
        profit.append(row)
    value, pairs = solve_assignment(profit)

    witness = []
    for i, j in pairs:
        if profit[i][j] <= 0:
            continue
        if j < len(removed):
            witness.append(Element.edge(kept[i], removed[j]))
        else:
            witness.append(Element.vertex(kept[i]))
    return value, tuple(sorted(witness))


def solve_kbipartite(r: int, s: int, w: Sequence) -> Tuple[Fraction, TotalMatching]:
    """Exact max-weight total matching of K_{r,s}: every total matching avoids one side's vertices."""
    best = None
    for removed_side in (Side.B, Side.A):
        value, witness = solve_avoiding_side(r, s, w, removed_side)
        if best is None or value > best[0]:
            best = (value, witness)
    log(f"DEBUG SOLVER: K_{r},{s} optimum {best[0]}")
    return best


def max_weight_avoiding_side_bruteforce(
    r: int, s: int, w: Sequence, removed_side: Side, limit: int = DEFAULT_CONFIG["enumerationLimit"]
) -> Fraction:
    g = make_complete_bipartite(r, s)
    w = _check_length(g, w)
    removed = {Element.vertex(v) for v in _side(r, s, removed_side)}
    best = Fraction(0)
    for T in enumerate_total_matchings(g, "all", limit):
        if not removed.intersection(T):
            best = max(best, sum((w[g.index_of(d)] for d in T), Fraction(0)))
    return best


def reduced_clique_lp(r: int, s: int, removed_side: Side, w: Sequence) -> LPResult:
    """Exact LP over the clique rows of T(K_{r,s}) minus the removed side (removed vertices fixed at 0)."""
    g = make_complete_bipartite(r, s)
    w = _check_length(g, w)
    size = len(g.elements)
    rows = []
    for clique in reduced_total_graph_cliques(r, s, removed_side):
        coefficients = [Fraction(0)] * size
        for element in clique:
            coefficients[g.index_of(element)] = Fraction(1)
        rows.append(LinearInequality(tuple(coefficients), 1, family="clique"))
    for v in _side(r, s, removed_side):
        coefficients = [Fraction(0)] * size
        coefficients[v] = Fraction(1)
        rows.append(LinearInequality(tuple(coefficients), 0, EQ))
    rows += [nonnegativity(size, i) for i in range(size)]
    return lp_solve(HPolytope(element_space(g), tuple(rows)), w, "max")


def is_integral(point: Sequence[Fraction]) -> bool:
    return all(value.denominator == 1 for value in point)


def solve_tree(g: Graph, w: Sequence) -> Tuple[Fraction, TotalMatching]:
    """Max-weight total matching of a tree: the LP over its complete description has an integral optimum."""
    w = _check_length(g, w)
    result = lp_solve(tree_description(g), w, "max")
    if not is_integral(result.point):
        raise GraphError("optimal basic solution over the tree description is fractional")
    return result.value, tuple(element for element, value in zip(g.elements, result.point) if value == 1)


# ----------- separation ----------- #


@dataclass(frozen=True)
class SeparationResult:
    violated: bool
    inequality: Optional[LinearInequality] = None
    violation: Fraction = Fraction(0)

    def __bool__(self):
        return self.violated


def _most_violated(rows: Sequence[LinearInequality], point: Vector) -> SeparationResult:
    best = None
    for row in rows:
        amount = row.lhs(point) - row.rhs
        if amount > 0 and (best is None or amount > best[0]):
            best = (amount, row)
    if best is None:
        return SeparationResult(False)
    return SeparationResult(True, best[1], best[0])


def separate_balanced(
    g: Graph, point: Sequence, r: int, limit: int = DEFAULT_CONFIG["separationLimit"]
) -> SeparationResult:
    """Most violated balanced row with r vertices per side, by exhaustive search over side subsets."""
    if not is_complete_bipartite(g):
        raise GraphError("balanced separation is defined on complete bipartite graphs")
    point = _check_length(g, point)
    if any(value < 0 for value in point):
        raise ValueError("separation point must be nonnegative")
    sideA, sideB = sides(g)
    if not 1 <= r <= min(len(sideA), len(sideB)):
        raise ValueError(f"r must lie in 1..{min(len(sideA), len(sideB))}, got {r}")
    check_limit("candidate subset pairs", comb(len(sideA), r) * comb(len(sideB), r), limit, SeparationLimitError)

    best = None
    for A in combinations(sideA, r):
        xA = sum(point[v] for v in A)
        for B in combinations(sideB, r):
            lhs = xA + sum(point[w] for w in B)
            lhs += sum(point[g.index_of(Element.edge(v, w))] for v in A for w in B)
            if lhs > r and (best is None or lhs - r > best[0]):
                best = (lhs - r, A, B)
    if best is None:
        return SeparationResult(False)
    amount, A, B = best
    row = edge_inequality(g, A[0], B[0]) if r == 1 else balanced_biclique_inequality(g, A, B)
    return SeparationResult(True, row, amount)


def separate_catalog(r: int, s: int, point: Sequence) -> SeparationResult:
    """Exact separation for P_T(K_{r,s}): the most violated row of the complete description."""
    description = complete_bipartite_description(r, s)
    point = _check_length(make_complete_bipartite(r, s), point)
    return _most_violated(description.rows, point)


# ----------- weighted edge biclique problems ----------- #


def max_weight_edge_biclique(
    g: Graph, u: Sequence, q: Optional[int] = None, limit: int = DEFAULT_CONFIG["separationLimit"]
) -> Tuple[Fraction, Tuple[int, ...], Tuple[int, ...]]:
    """Heaviest biclique (A, B), A and B nonempty subsets of the two sides, by edge weight u (canonical edge order).

    With q given, |A| = |B| = q.
    """
    if not is_complete_bipartite(g):
        raise GraphError("weighted edge biclique problems are posed on complete bipartite graphs")
    u = as_vector(u)
    if len(u) != g.m:
        raise ValueError(f"edge weights have length {len(u)}, expected {g.m}")
    sideA, sideB = sides(g)
    weight = {edge: value for edge, value in zip(g.edges, u)}
    if q is None:
        sizes = [(a, b) for a in range(1, len(sideA) + 1) for b in range(1, len(sideB) + 1)]
    else:
        sizes = [(q, q)] if 1 <= q <= min(len(sideA), len(sideB)) else []
    candidates = sum(comb(len(sideA), a) * comb(len(sideB), b) for a, b in sizes)
    check_limit("candidate subset pairs", candidates, limit, SeparationLimitError)

    best = None
    for a, b in sizes:
        for A in combinations(sideA, a):
            for B in combinations(sideB, b):
                value = sum((weight[(min(v, w), max(v, w))] for v in A for w in B), Fraction(0))
                if best is None or value > best[0]:
                    best = (value, A, B)
    if best is None:
        raise ValueError(f"no biclique with {q} vertices per side")
    return best


def webdp(g: Graph, u: Sequence, k) -> bool:
    """Is there a biclique with edge weight at least k?"""
    return max_weight_edge_biclique(g, u)[0] >= k


def webdpc(g: Graph, u: Sequence, k, q: int) -> bool:
    """Is there a biclique with q vertices per side and edge weight at least k?"""
    if not 1 <= q <= min(len(side) for side in sides(g)):
        return False
    return max_weight_edge_biclique(g, u, q)[0] >= k


class SeparationLimitError(LimitExceededError):
    pass
