"""
Inequality families of the total matching polytope and whole descriptions for trees and complete bipartite graphs.

Rows live in the element space of their graph (canonical element order). Validity and facetness are certified
against the enumerated characteristic vectors, completeness against the double description hull.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from totalMatching.doubleDescription import dd_hull
from totalMatching.enumeration import (
    TotalMatching,
    characteristic_matrix,
    characteristic_vectors,
    enumerate_total_matchings,
    integer_weights,
)
from totalMatching.exactGeometry import (
    EQ,
    LE,
    HPolytope,
    LinearInequality,
    VPolytope,
    greedy_independent,
    nonnegativity,
)
from totalMatching.graphCore import (
    Element,
    Graph,
    is_tree,
    make_complete_bipartite,
    maximal_cliques,
    total_graph,
)
from totalMatching.utils import DEFAULT_CONFIG, log


def element_space(g: Graph) -> Tuple[str, ...]:
    return g.labels


def _row(g: Graph, weights: Dict[Element, Fraction], rhs, family: str, note: str = "") -> LinearInequality:
    coefficients = [Fraction(0)] * len(g.elements)
    for element, weight in weights.items():
        coefficients[g.index_of(element)] = Fraction(weight)
    return LinearInequality(tuple(coefficients), Fraction(rhs), LE, family, note)


def _names(vertices: Sequence[int]) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(vertices)) + "}"


# ----------- basic rows ----------- #


def node_inequality(g: Graph, v: int) -> LinearInequality:
    weights = {Element.vertex(v): 1}
    weights.update((element, 1) for element in g.delta(v))
    return _row(g, weights, 1, "node", f"v{v + 1}")


def edge_inequality(g: Graph, u: int, v: int) -> LinearInequality:
    edge = Element.edge(u, v)
    return _row(g, {Element.vertex(u): 1, Element.vertex(v): 1, edge: 1}, 1, "edge", edge.label)


def relaxation_inequalities(g: Graph) -> List[LinearInequality]:
    """Node rows, edge rows, then one nonnegativity row per element."""
    rows = [node_inequality(g, v) for v in range(g.n)]
    rows += [edge_inequality(g, u, v) for u, v in g.edges]
    rows += [nonnegativity(len(g.elements), i, note=element.label) for i, element in enumerate(g.elements)]
    return rows


def clique_inequalities(g: Graph) -> List[LinearInequality]:
    """One row sum(z_d, d in K) <= 1 per maximal clique K of the total graph."""
    rows = []
    for clique in maximal_cliques(total_graph(g)):
        members = [g.elements[i] for i in clique]
        rows.append(_row(g, {element: 1 for element in members}, 1, "clique", " ".join(e.label for e in members)))
    return rows


# ----------- biclique rows ----------- #


def is_induced_biclique(g: Graph, A: Sequence[int], B: Sequence[int]) -> bool:
    A, B = set(A), set(B)
    if not A or not B or A & B:
        return False
    if any(w not in g.neighbors[v] for v in A for w in B):
        return False
    return not any(u in g.neighbors[v] for side in (A, B) for v in side for u in side)


def induced_bicliques(g: Graph, a: int, b: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Every induced K_{a,b} as (A, B) with |A| = a, |B| = b; for a == b each pair once (min A < min B)."""
    for A in combinations(range(g.n), a):
        if any(u in g.neighbors[v] for v, u in combinations(A, 2)):
            continue
        common = set(range(g.n)).intersection(*(g.neighbors[v] for v in A))
        for B in combinations(sorted(common), b):
            if a == b and B[0] < A[0]:
                continue
            if any(u in g.neighbors[v] for v, u in combinations(B, 2)):
                continue
            yield A, B


def _biclique_weights(g: Graph, A: Sequence[int], B: Sequence[int]) -> Dict[Element, Fraction]:
    weights = {Element.vertex(v): Fraction(1) for v in list(A) + list(B)}
    weights.update((Element.edge(v, w), Fraction(1)) for v in A for w in B)
    return weights


def balanced_biclique_inequality(g: Graph, A: Sequence[int], B: Sequence[int]) -> LinearInequality:
    """sum of x over A+B and y over A x B <= r for an induced K_{r,r}, r >= 2."""
    if len(A) != len(B):
        raise CatalogError(f"balanced biclique needs equal sides, got {len(A)} and {len(B)}")
    if len(A) < 2:
        raise CatalogError("a balanced biclique with r = 1 is an edge row, not a biclique row")
    if not is_induced_biclique(g, A, B):
        raise CatalogError(f"A={_names(A)} B={_names(B)} does not induce a complete bipartite subgraph")
    return _row(g, _biclique_weights(g, A, B), len(A), "balanced-biclique", f"A={_names(A)} B={_names(B)}")


@dataclass(frozen=True)
class BicliqueSelector:
    A: Tuple[int, ...]
    B: Tuple[int, ...]
    A1: Tuple[int, ...] = ()
    B1: Tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("A", "B", "A1", "B1"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))

    @property
    def r(self) -> int:
        return len(self.A)

    @property
    def s(self) -> int:
        return len(self.B)

    def check(self):
        """Raise CatalogError unless the selector indexes a non-balanced lifted row."""
        if not set(self.A1) <= set(self.A) or not set(self.B1) <= set(self.B):
            raise CatalogError("A1 must lie in A and B1 in B")
        if not self.s > self.r >= 2:
            raise CatalogError(f"need |B| > |A| >= 2, got |A| = {self.r}, |B| = {self.s}")
        if not self.r > len(self.A1) > len(self.B1) >= 0:
            raise CatalogError(f"need |A| > |A1| > |B1| >= 0, got {self.r}, {len(self.A1)}, {len(self.B1)}")
        if not self.B1 and len(self.A1) != 1:
            raise CatalogError("with B1 empty, A1 must be a single vertex")

    @property
    def beta(self) -> Fraction:
        return Fraction(self.s + len(self.A1) - self.r - len(self.B1), len(self.A1) - len(self.B1))

    @property
    def rhs(self) -> Fraction:
        return len(self.A1) * (self.beta - 1) + self.r

    def __str__(self):
        return f"A={_names(self.A)} B={_names(self.B)} A1={_names(self.A1)} B1={_names(self.B1)}"


def admissible_selectors(A: Sequence[int], B: Sequence[int]) -> List[BicliqueSelector]:
    """All (A1, B1) the lifted family admits for sides (A, B), by |A1|, A1, |B1|, B1."""
    A, B = tuple(sorted(A)), tuple(sorted(B))
    if not len(B) > len(A) >= 2:
        return []
    selectors = []
    for k1 in range(1, len(A)):
        for A1 in combinations(A, k1):
            for k2 in range(0 if k1 == 1 else 1, k1):
                for B1 in combinations(B, k2):
                    selectors.append(BicliqueSelector(A, B, A1, B1))
    return selectors


def nonbalanced_lifted_inequality(g: Graph, sel: BicliqueSelector) -> LinearInequality:
    """beta on A1 + B1 + A1 x B1, 1 elsewhere on the biclique, rhs |A1|(beta - 1) + |A|."""
    sel.check()
    if not is_induced_biclique(g, sel.A, sel.B):
        raise CatalogError(f"{sel} does not induce a complete bipartite subgraph")
    beta = sel.beta
    weights = _biclique_weights(g, sel.A, sel.B)
    for v in sel.A1 + sel.B1:
        weights[Element.vertex(v)] = beta
    for v in sel.A1:
        for w in sel.B1:
            weights[Element.edge(v, w)] = beta
    return _row(g, weights, sel.rhs, "nonbalanced-lifted", str(sel))


def plain_nonbalanced_inequality(g: Graph, A: Sequence[int], B: Sequence[int]) -> LinearInequality:
    """All-ones row with rhs s on an induced K_{r,s}, s > r >= 2. Valid, never a facet."""
    if not len(B) > len(A) >= 2:
        raise CatalogError(f"need |B| > |A| >= 2, got |A| = {len(A)}, |B| = {len(B)}")
    if not is_induced_biclique(g, A, B):
        raise CatalogError(f"A={_names(A)} B={_names(B)} does not induce a complete bipartite subgraph")
    return _row(g, _biclique_weights(g, A, B), len(B), "non-facet", f"A={_names(A)} B={_names(B)}")


# ----------- whole descriptions ----------- #


def _leaf_free_relaxation(g: Graph) -> List[LinearInequality]:
    # a leaf's node row is its edge row minus x of the other endpoint
    leaves = {v for v in range(g.n) if len(g.neighbors[v]) == 1}
    return [row for row in relaxation_inequalities(g) if not (row.family == "node" and _vertex_of(row) in leaves)]


def _vertex_of(row: LinearInequality) -> int:
    return int(row.note[1:]) - 1


def tree_description(g: Graph, keep_leaf_nodes: bool = False) -> HPolytope:
    """Node rows of non-leaf vertices, edge rows and nonnegativity.

    This is not all of relaxation_inequalities(g): a leaf's node row is implied by its edge row, so the default
    is the irredundant facet list (the star K_{1,3} gets 11 rows, not 14). keep_leaf_nodes=True returns exactly
    the relaxation rows.
    """
    if not is_tree(g):
        raise CatalogError("tree_description needs a connected graph with m = n - 1")
    rows = relaxation_inequalities(g) if keep_leaf_nodes else _leaf_free_relaxation(g)
    return HPolytope(element_space(g), tuple(rows))


def biclique_catalog(g: Graph) -> HPolytope:
    """Relaxation rows, balanced rows of every induced K_{k,k} (k >= 2) and, on bipartite hosts,
    lifted rows of every induced K_{a,b} (b > a >= 2) for all admissible selectors. Deduplicated."""
    rows = _leaf_free_relaxation(g)
    for k in range(2, g.n // 2 + 1):
        rows += [balanced_biclique_inequality(g, A, B) for A, B in induced_bicliques(g, k, k)]
    if g.bipartition is not None:
        for a in range(2, g.n):
            for b in range(a + 1, g.n - a + 1):
                for A, B in induced_bicliques(g, a, b):
                    rows += [nonbalanced_lifted_inequality(g, sel) for sel in admissible_selectors(A, B)]
    description = HPolytope(element_space(g), tuple(rows)).deduplicated()
    log(f"INFO CATALOG: {len(description.rows)} rows on {g.n} vertices and {g.m} edges")
    return description


@lru_cache(maxsize=16)
def complete_bipartite_description(r: int, s: int) -> HPolytope:
    return biclique_catalog(make_complete_bipartite(r, s))


# ----------- certification ----------- #


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    counterexample: Optional[TotalMatching] = None

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class FacetResult:
    facet: bool
    rank: int
    certificate: Tuple[TotalMatching, ...] = ()

    def __bool__(self):
        return self.facet


def _lhs_values(g: Graph, ineq: LinearInequality, limit: int) -> Tuple[np.ndarray, int]:
    """Scaled left-hand sides over all total matchings and the scaled rhs."""
    if ineq.dimension != len(g.elements):
        raise CatalogError(f"row has {ineq.dimension} coefficients, graph has {len(g.elements)} elements")
    scaled, denominator = integer_weights(list(ineq.coefficients) + [ineq.rhs])
    matrix = characteristic_matrix(g, limit)
    if scaled.dtype == object:
        matrix = matrix.astype(object)
    return matrix @ scaled[:-1], int(scaled[-1])


def is_valid(g: Graph, ineq: LinearInequality, limit: int = DEFAULT_CONFIG["enumerationLimit"]) -> ValidityResult:
    values, rhs = _lhs_values(g, ineq, limit)
    violated = values != rhs if ineq.relation == EQ else values > rhs
    if not violated.any():
        return ValidityResult(True)
    first = int(np.argmax(violated))
    return ValidityResult(False, enumerate_total_matchings(g, "all", limit)[first])


def is_facet(g: Graph, ineq: LinearInequality, limit: int = DEFAULT_CONFIG["enumerationLimit"]) -> FacetResult:
    """Facet iff the tight characteristic vectors reach affine rank n + m."""
    validity = is_valid(g, ineq, limit)
    if not validity:
        labels = " ".join(element.label for element in validity.counterexample) or "{}"
        raise CatalogError(f"inequality is not valid, violated by {labels}")
    values, rhs = _lhs_values(g, ineq, limit)
    matchings = enumerate_total_matchings(g, "all", limit)
    vectors = characteristic_vectors(g, limit)
    tight = [i for i in np.flatnonzero(values == rhs)]
    if not tight:
        return FacetResult(False, 0)
    base = vectors[tight[0]]
    differences = [[x - y for x, y in zip(vectors[i], base)] for i in tight[1:]]
    chosen = [tight[0]] + [tight[1 + k] for k in greedy_independent(differences)]
    rank = len(chosen)
    log(f"DEBUG CATALOG: {len(tight)} tight total matchings, affine rank {rank} of {len(g.elements)}")
    return FacetResult(rank == len(g.elements), rank, tuple(matchings[int(i)] for i in chosen))


@dataclass(frozen=True)
class VerificationReport:
    complete: bool
    sound: bool
    irredundant: bool
    facets: int
    missing: Tuple[LinearInequality, ...] = ()
    invalid: Tuple[LinearInequality, ...] = ()
    redundant: Tuple[LinearInequality, ...] = ()

    @property
    def passed(self) -> bool:
        return self.complete and self.sound and self.irredundant

    def __str__(self):
        yes = {True: "yes", False: "no"}
        return (
            f"complete: {yes[self.complete]}, sound: {yes[self.sound]}, "
            f"irredundant: {yes[self.irredundant]}, facets: {self.facets}"
        )


def verify_description(
    g: Graph,
    h: HPolytope,
    dim_limit: int = DEFAULT_CONFIG["hullDimLimit"],
    limit: int = DEFAULT_CONFIG["enumerationLimit"],
) -> VerificationReport:
    """Compare h with the hull of the characteristic vectors: complete, sound and irredundant."""
    hull = dd_hull(VPolytope(h.space, tuple(characteristic_vectors(g, limit))), dim_limit)
    hull_keys = {row.key for row in hull.rows}
    keys = [row.key for row in h.rows]
    missing = tuple(row for row in hull.rows if row.key not in set(keys))
    invalid = tuple(row for row in h.rows if not is_valid(g, row, limit))
    seen = set()
    redundant = []
    for row, key in zip(h.rows, keys):
        if key not in hull_keys or key in seen:
            redundant.append(row)
        seen.add(key)
    report = VerificationReport(
        not missing, not invalid, not redundant, len(hull.rows), missing, invalid, tuple(redundant)
    )
    log(f"INFO CATALOG: verify {report}")
    return report


class CatalogError(Exception):
    """Inequality family preconditions violated, or an invalid row handed to a facet check."""

    pass
