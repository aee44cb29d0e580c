"""
Disjunctive extended formulation of P_T(K_{r,s}) as conv(P_A u P_B), its projection cone and ray projection.

P_A holds the total matchings that use no vertex of side B, P_B those that use no vertex of side A. The lifted
space is (x, y, l1, y1): l1 weights the P_A disjunct and y1 is its share of y; the P_B copies are eliminated.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from totalMatching.doubleDescription import dd_rays
from totalMatching.exactGeometry import (
    EQ,
    LE,
    HPolytope,
    LinearInequality,
    Vector,
    as_vector,
    normalize_vector,
    rank,
    row_sort_key,
)
from totalMatching.graphCore import Element, Side, make_complete_bipartite
from totalMatching.inequalityCatalog import element_space, node_inequality
from totalMatching.simplex import feasible_point, is_implied, lp_solve
from totalMatching.utils import DEFAULT_CONFIG, log


def _sides(r: int, s: int) -> Tuple[List[int], List[int]]:
    return list(range(r)), list(range(r, r + s))


# ----------- coordinate spaces ----------- #


def lifted_space(r: int, s: int) -> Tuple[str, ...]:
    g = make_complete_bipartite(r, s)
    edges = [f"{u + 1}-{v + 1}" for u, v in g.edges]
    return (
        tuple(f"x{v + 1}" for v in range(g.n))
        + tuple(f"y{e}" for e in edges)
        + ("l1",)
        + tuple(f"y1_{e}" for e in edges)
    )


def cone_space(r: int, s: int) -> Tuple[str, ...]:
    g = make_complete_bipartite(r, s)
    vertices = [f"v{v + 1}" for v in range(g.n)]
    edges = [Element.edge(u, v).label for u, v in g.edges]
    return (
        tuple(f"u1_{v}" for v in vertices)
        + tuple(f"u2_{v}" for v in vertices)
        + tuple(f"u1_{e}" for e in edges)
        + tuple(f"u2_{e}" for e in edges)
        + ("ul1", "ul2")
    )


class _Lifted:
    """Column indices of the lifted space of K_{r,s}."""

    def __init__(self, r: int, s: int):
        self.g = make_complete_bipartite(r, s)
        self.n, self.m = self.g.n, self.g.m
        self.edge_index = {edge: k for k, edge in enumerate(self.g.edges)}
        self.size = self.n + 2 * self.m + 1
        self.l1 = self.n + self.m

    def x(self, v: int) -> int:
        return v

    def y(self, edge: Tuple[int, int]) -> int:
        return self.n + self.edge_index[edge]

    def y1(self, edge: Tuple[int, int]) -> int:
        return self.n + self.m + 1 + self.edge_index[edge]

    def row(self, terms: Dict[int, int], rhs, label: str, family: str = "other") -> LinearInequality:
        coefficients = [Fraction(0)] * self.size
        for column, value in terms.items():
            coefficients[column] += value
        return LinearInequality(tuple(coefficients), rhs, LE, family, label)


# ----------- P_A, P_B and Q ----------- #


def _disjunct(r: int, s: int, kept: Side) -> HPolytope:
    g = make_complete_bipartite(r, s)
    sideA, sideB = _sides(r, s)
    own, other = (sideA, sideB) if kept is Side.A else (sideB, sideA)
    size = len(g.elements)
    rows = [node_inequality(g, v) for v in own]
    for w in other:
        coefficients = [Fraction(0)] * size
        for element in g.delta(w):
            coefficients[g.index_of(element)] = Fraction(1)
        rows.append(LinearInequality(tuple(coefficients), 1, LE, "star", f"v{w + 1}"))
    for i in range(size):
        coefficients = [Fraction(0)] * size
        coefficients[i] = Fraction(-1)
        rows.append(LinearInequality(tuple(coefficients), 0, LE, "nonneg", g.elements[i].label))
    for w in other:
        coefficients = [Fraction(0)] * size
        coefficients[w] = Fraction(1)
        rows.append(LinearInequality(tuple(coefficients), 0, EQ, "other", f"v{w + 1}"))
    return HPolytope(element_space(g), tuple(rows))


def build_PA_PB(r: int, s: int) -> Tuple[HPolytope, HPolytope]:
    """P_A: node rows on A, star rows on B, x_B = 0; P_B the same with the sides swapped."""
    return _disjunct(r, s, Side.A), _disjunct(r, s, Side.B)


def build_Q(r: int, s: int) -> HPolytope:
    """The extended formulation, rows in fixed order, each labelled with its cone multiplier (note)."""
    L = _Lifted(r, s)
    g = L.g
    sideA, sideB = _sides(r, s)
    rows = []
    for v in sideA:
        terms = {L.x(v): 1, L.l1: -1}
        terms.update((L.y1(edge), 1) for edge in g.incident[v])
        rows.append(L.row(terms, 0, f"u1_v{v + 1}"))
    for w in sideB:
        terms = {L.l1: -1}
        terms.update((L.y1(edge), 1) for edge in g.incident[w])
        rows.append(L.row(terms, 0, f"u1_v{w + 1}"))
    for w in sideB:
        terms = {L.x(w): 1, L.l1: 1}
        for edge in g.incident[w]:
            terms.update({L.y(edge): 1, L.y1(edge): -1})
        rows.append(L.row(terms, 1, f"u2_v{w + 1}"))
    for v in sideA:
        terms = {L.l1: 1}
        for edge in g.incident[v]:
            terms.update({L.y(edge): 1, L.y1(edge): -1})
        rows.append(L.row(terms, 1, f"u2_v{v + 1}"))
    for edge in g.edges:
        rows.append(L.row({L.y1(edge): -1}, 0, f"u1_{Element.edge(*edge).label}", "nonneg"))
    for edge in g.edges:
        rows.append(L.row({L.y1(edge): 1, L.y(edge): -1}, 0, f"u2_{Element.edge(*edge).label}"))
    for v in range(g.n):
        rows.append(L.row({L.x(v): -1}, 0, "", "nonneg"))
    rows.append(L.row({L.l1: -1}, 0, "ul1", "nonneg"))
    rows.append(L.row({L.l1: 1}, 1, "ul2"))
    return HPolytope(lifted_space(r, s), tuple(rows))


def solve_over_Q(r: int, s: int, objective: Sequence) -> Tuple[Fraction, Vector]:
    """Maximum of objective (on x, y) over Q, with the (x, y) part of an optimal point."""
    L = _Lifted(r, s)
    objective = as_vector(objective)
    if len(objective) != L.n + L.m:
        raise ValueError(f"objective has length {len(objective)}, expected {L.n + L.m}")
    result = lp_solve(build_Q(r, s), objective + (Fraction(0),) * (L.m + 1), "max")
    return result.value, result.point[: L.n + L.m]


def lift_point(z: Sequence, r: int, s: int) -> Vector:
    """A point of Q whose (x, y) part is z; LiftError when z is not in P_T(K_{r,s})."""
    L = _Lifted(r, s)
    z = as_vector(z)
    if len(z) != L.n + L.m:
        raise ValueError(f"point has length {len(z)}, expected {L.n + L.m}")
    Q = build_Q(r, s)
    fixed = []
    for i, value in enumerate(z):
        coefficients = [Fraction(0)] * L.size
        coefficients[i] = Fraction(1)
        fixed.append(LinearInequality(tuple(coefficients), value, EQ))
    point = feasible_point(Q.with_rows(Q.rows + tuple(fixed)))
    if point is None:
        raise LiftError("no lifting certificate: the point is outside the total matching polytope")
    return point


# ----------- projection cone ----------- #


def _cone_row(coefficients: Dict[str, int], space: Sequence[str], relation=EQ, rhs=0) -> LinearInequality:
    values = [Fraction(0)] * len(space)
    position = {name: i for i, name in enumerate(space)}
    for name, value in coefficients.items():
        values[position[name]] += value
    return LinearInequality(tuple(values), rhs, relation, "cone")


def _cone_nonnegativity(space: Sequence[str]) -> List[LinearInequality]:
    rows = []
    for i, name in enumerate(space):
        values = [Fraction(0)] * len(space)
        values[i] = Fraction(-1)
        rows.append(LinearInequality(tuple(values), 0, LE, "nonneg", name))
    return rows


def _formula_cone(r: int, s: int) -> HPolytope:
    g = make_complete_bipartite(r, s)
    space = cone_space(r, s)
    rows = []
    for u, v in g.edges:
        e = Element.edge(u, v).label
        # u1_u + u1_v - u1_e = u2_u + u2_v - u2_e
        terms = {f"u1_v{u + 1}": 1, f"u1_v{v + 1}": 1, f"u1_{e}": -1}
        terms.update({f"u2_v{u + 1}": -1, f"u2_v{v + 1}": -1, f"u2_{e}": 1})
        rows.append(_cone_row(terms, space))
    balance = {f"u1_v{v + 1}": 1 for v in range(g.n)}
    balance.update({f"u2_v{v + 1}": -1 for v in range(g.n)})
    balance.update({"ul1": 1, "ul2": -1})
    rows.append(_cone_row(balance, space))
    return HPolytope(space, tuple(rows) + tuple(_cone_nonnegativity(space)))


def projection_cone_from_Q(r: int, s: int) -> HPolytope:
    """{u >= 0 : u B = 0}, B the lifted columns (l1, y1) of Q, rows matched to multipliers by their labels."""
    L = _Lifted(r, s)
    Q = build_Q(r, s)
    space = cone_space(r, s)
    labelled = [row for row in Q.rows if row.note]
    if sorted(row.note for row in labelled) != sorted(space):
        raise ConeError("row labels of Q do not match the cone coordinates")
    rows = []
    for column in [L.l1] + [L.y1(edge) for edge in L.g.edges]:
        coefficients = {row.note: int(row.coefficients[column]) for row in labelled if row.coefficients[column]}
        rows.append(_cone_row(coefficients, space))
    return HPolytope(space, tuple(rows) + tuple(_cone_nonnegativity(space)))


def projection_cone(r: int, s: int) -> HPolytope:
    """Edge equalities, the balance equality and u >= 0; checked against the construction from Q."""
    cone = _formula_cone(r, s)
    if cone.keys() != projection_cone_from_Q(r, s).keys():
        raise ConeError("projection cone disagrees with the lifted columns of Q")
    return cone


def cone_member(u: Sequence, r: int, s: int) -> bool:
    u = as_vector(u)
    cone = _formula_cone(r, s)
    return len(u) == cone.dimension and cone.contains(u)


def _parts(u: Sequence, r: int, s: int) -> Dict[str, Fraction]:
    u = as_vector(u)
    if not cone_member(u, r, s):
        raise ConeError("vector is not in the projection cone")
    return dict(zip(cone_space(r, s), u))


def raw_ray_inequality(u: Sequence, r: int, s: int) -> LinearInequality:
    """u.A x <= u.d over (x, y): the multiplier combination of Q's rows restricted to the original columns."""
    part = _parts(u, r, s)
    g = make_complete_bipartite(r, s)
    sideA, _ = _sides(r, s)
    coefficients = []
    for v in range(g.n):
        coefficients.append(part[f"u1_v{v + 1}"] if v in sideA else part[f"u2_v{v + 1}"])
    for a, b in g.edges:
        coefficients.append(part[f"u2_v{a + 1}"] + part[f"u2_v{b + 1}"] - part[f"u2_{Element.edge(a, b).label}"])
    rhs = sum(part[f"u2_v{v + 1}"] for v in range(g.n)) + part["ul2"]
    return LinearInequality(tuple(coefficients), rhs, LE, "ef-raw").normalized()


def ray_to_inequality(u: Sequence, r: int, s: int) -> LinearInequality:
    """The strengthened image of a cone member: edge coefficient min_j(u^j_v + u^j_w), rhs max_j sum_V u^j."""
    part = _parts(u, r, s)
    g = make_complete_bipartite(r, s)
    sideA, _ = _sides(r, s)
    coefficients = []
    for v in range(g.n):
        coefficients.append(part[f"u1_v{v + 1}"] if v in sideA else part[f"u2_v{v + 1}"])
    for a, b in g.edges:
        coefficients.append(min(part[f"u{j}_v{a + 1}"] + part[f"u{j}_v{b + 1}"] for j in (1, 2)))
    rhs = max(sum(part[f"u{j}_v{v + 1}"] for v in range(g.n)) for j in (1, 2))
    return LinearInequality(tuple(coefficients), rhs, LE, "projected").normalized()


def ray_from_vertex_multipliers(r: int, s: int, u1: Sequence, u2: Sequence) -> Vector:
    """Complete vertex multipliers to a cone member with the smallest edge and l-parts."""
    g = make_complete_bipartite(r, s)
    u1, u2 = as_vector(u1), as_vector(u2)
    if len(u1) != g.n or len(u2) != g.n:
        raise ValueError(f"vertex multipliers need length {g.n}")
    if any(value < 0 for value in u1 + u2):
        raise ConeError("vertex multipliers must be nonnegative")
    edge1, edge2 = [], []
    for a, b in g.edges:
        gap = (u1[a] + u1[b]) - (u2[a] + u2[b])
        edge1.append(max(gap, Fraction(0)))
        edge2.append(max(-gap, Fraction(0)))
    balance = sum(u1) - sum(u2)
    lambdas = (max(-balance, Fraction(0)), max(balance, Fraction(0)))
    return normalize_vector(u1 + u2 + tuple(edge1) + tuple(edge2) + lambdas)


def project_Q(
    r: int, s: int, dim_limit: int = DEFAULT_CONFIG["hullDimLimit"], rays: Optional[Sequence[Vector]] = None
) -> HPolytope:
    """Extreme rays of the projection cone through ray_to_inequality, plus x, y >= 0, minus implied rows."""
    g = make_complete_bipartite(r, s)
    space = element_space(g)
    if rays is None:
        rays = dd_rays(projection_cone(r, s), dim_limit)
    log(f"INFO EF: projection cone of K_{r},{s} has {len(rays)} extreme rays")
    rows = {}
    for ray in rays:
        row = ray_to_inequality(ray, r, s)
        if not row.is_trivial():
            rows.setdefault(row.key, row)
    for i, element in enumerate(g.elements):
        values = [Fraction(0)] * len(g.elements)
        values[i] = Fraction(-1)
        row = LinearInequality(tuple(values), 0, LE, "nonneg", element.label)
        rows.setdefault(row.key, row)

    kept = [rows[key] for key in sorted(rows, key=row_sort_key)]
    i = 0
    while i < len(kept):
        rest = HPolytope(space, tuple(kept[:i] + kept[i + 1 :]))
        if is_implied(kept[i], rest):
            del kept[i]
        else:
            i += 1
    log(f"INFO EF: {len(kept)} irredundant projected rows")
    return HPolytope(space, tuple(kept))


# ----------- reduced ray set ----------- #


def vertex_support_rank(u: Sequence, r: int, s: int) -> int:
    """Rank of the vertex-multiplier constraints u^j_v = 0, u1_v + u1_w = u2_v + u2_w, sum u1 = sum u2 tight at u."""
    part = _parts(u, r, s)
    g = make_complete_bipartite(r, s)
    n = g.n
    p = [part[f"u1_v{v + 1}"] for v in range(n)] + [part[f"u2_v{v + 1}"] for v in range(n)]
    tight = []
    for i in range(2 * n):
        if p[i] == 0:
            tight.append([int(i == k) for k in range(2 * n)])
    for a, b in g.edges:
        row = [0] * (2 * n)
        row[a] += 1
        row[b] += 1
        row[n + a] -= 1
        row[n + b] -= 1
        if sum(c * value for c, value in zip(row, p)) == 0:
            tight.append(row)
    balance = [1] * n + [-1] * n
    if sum(c * value for c, value in zip(balance, p)) == 0:
        tight.append(balance)
    return rank(tight)


def in_reduced_ray_set(u: Sequence, r: int, s: int) -> bool:
    """Nonzero vertex multipliers meeting 2(r + s) - 1 independent constraints with equality."""
    part = _parts(u, r, s)
    if not any(value for name, value in part.items() if "_v" in name):
        return False
    return vertex_support_rank(u, r, s) == 2 * (r + s) - 1


def reduced_ray_report(r: int, s: int, dim_limit: int = DEFAULT_CONFIG["hullDimLimit"]) -> List[Vector]:
    """Extreme rays of the projection cone with nonzero vertex part that fall outside the reduced ray set."""
    outside = []
    for ray in dd_rays(projection_cone(r, s), dim_limit):
        part = dict(zip(cone_space(r, s), ray))
        if any(value for name, value in part.items() if "_v" in name) and not in_reduced_ray_set(ray, r, s):
            outside.append(ray)
    log(f"INFO EF: {len(outside)} extreme rays of K_{r},{s} outside the reduced ray set")
    return outside


class LiftError(Exception):
    """The point has no lift into the extended formulation."""

    pass


class ConeError(Exception):
    pass
