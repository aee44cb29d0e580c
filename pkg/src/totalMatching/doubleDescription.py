"""
Double description: extreme rays of pointed cones, facets of point sets, vertices of polytopes.

Everything runs on Python integers. Rays are kept as coprime integer vectors together with a bitmask of
the constraints they make tight; new rays come from adjacent (positive, negative) pairs.
"""

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from totalMatching.exactGeometry import (
    EQ,
    LE,
    GeometryError,
    HPolytope,
    LinearInequality,
    VPolytope,
    Vector,
    check_dimension,
    integer_scaling,
    normalize_vector,
    nullspace,
    rank,
    rref,
    row_sort_key,
)
from totalMatching.utils import DEFAULT_CONFIG, log


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _primitive(vector: List[int]) -> Tuple[int, ...]:
    divisor = gcd(*vector)
    if divisor > 1:
        vector = [value // divisor for value in vector]
    return tuple(vector)


def _initial_rays(rows: List[List[int]], d: int) -> Tuple[List[int], List[Tuple[int, ...]]]:
    """Greedy basis of d independent rows and the d rays of the simplicial cone they cut out."""
    basis = []
    for i, row in enumerate(rows):
        if rank([rows[j] for j in basis] + [row]) > len(basis):
            basis.append(i)
            if len(basis) == d:
                break
    if len(basis) < d:
        raise GeometryError("cone is not pointed (constraint rank below the dimension)")

    # columns of -inverse(A_S): ray k is tight on every basis row except row k
    augmented = [list(rows[i]) + [1 if j == k else 0 for j in range(d)] for k, i in enumerate(basis)]
    reduced, _ = rref(augmented, d)
    inverse = [row[d:] for row in reduced]
    rays = []
    for k in range(d):
        column = [-inverse[i][k] for i in range(d)]
        rays.append(tuple(int(value) for value in normalize_vector(column)))
    return basis, rays


def cone_rays(rows: Sequence[Sequence[int]], d: int, algebraic: bool = False) -> List[Tuple[int, ...]]:
    """Extreme rays of the pointed cone {x in Z^d : A x <= 0}.

    Rows are inserted in the given order after an initial simplicial basis. Two rays are adjacent when no
    third ray is tight on everything both are tight on; with algebraic=True the rank test is applied too.
    """
    rows = [list(row) for row in rows if any(row)]
    if d == 0:
        return []
    basis, rays = _initial_rays(rows, d)
    basis_set = set(basis)

    tight = []
    for ray in rays:
        mask = 0
        for i in basis:
            if _idot(rows[i], ray) == 0:
                mask |= 1 << i
        tight.append(mask)

    for i, a in enumerate(rows):
        if i in basis_set:
            continue
        bit = 1 << i
        values = [_idot(a, ray) for ray in rays]
        positive = [k for k, value in enumerate(values) if value > 0]
        if not positive:
            for k, value in enumerate(values):
                if value == 0:
                    tight[k] |= bit
            continue
        negative = [k for k, value in enumerate(values) if value < 0]

        created = []
        for p in positive:
            for n in negative:
                common = tight[p] & tight[n]
                if bin(common).count("1") < d - 2:
                    continue
                if any(k != p and k != n and common & tight[k] == common for k in range(len(rays))):
                    continue
                if algebraic and rank([rows[j] for j in range(len(rows)) if common >> j & 1]) != d - 2:
                    continue
                vector = [values[p] * y - values[n] * x for x, y in zip(rays[p], rays[n])]
                created.append((_primitive(vector), common | bit))

        kept = [k for k, value in enumerate(values) if value <= 0]
        rays = [rays[k] for k in kept] + [ray for ray, _ in created]
        tight = [tight[k] | (bit if values[k] == 0 else 0) for k in kept] + [mask for _, mask in created]
    log(f"DEBUG DD: {len(rows)} rows in dimension {d}, {len(rays)} extreme rays")
    return sorted(set(rays))


def dd_rays(c: HPolytope, dim_limit: int = DEFAULT_CONFIG["hullDimLimit"], algebraic: bool = False) -> List[Vector]:
    """One normalized representative per extreme ray of a pointed polyhedral cone (all right-hand sides zero).

    Adjacency defaults to the combinatorial test. algebraic=True adds the rank test on the common tight rows;
    both give the same rays, the rank test is only slower.
    """
    if any(row.rhs != 0 for row in c.rows):
        raise GeometryError("dd_rays needs a homogeneous system (all right-hand sides 0)")
    dimension = c.dimension
    equalities = [row.coefficients for row in c.equalities]
    if equalities:
        basis = nullspace(equalities, dimension)
    else:
        basis = [tuple(Fraction(int(i == j)) for j in range(dimension)) for i in range(dimension)]
    d = len(basis)
    check_dimension("cone dimension", d, dim_limit)
    log(f"INFO DD: cone in {dimension} coordinates, {len(equalities)} equalities, working dimension {d}")

    # A N: the inequality rows in nullspace coordinates
    reduced = [
        integer_scaling([sum(row.coefficients[j] * vector[j] for j in range(dimension)) for vector in basis])
        for row in c.inequalities
    ]
    if d and rank(reduced) < d:
        raise GeometryError("cone is not pointed (contains a line)")
    rays = []
    for t in cone_rays(reduced, d, algebraic):
        rays.append(normalize_vector([sum(t[k] * basis[k][j] for k in range(d)) for j in range(dimension)]))
    return sorted(set(rays))


def affine_hull(points: Sequence[Sequence]) -> List[LinearInequality]:
    """Normalized equalities a.x = b spanning the affine hull's orthogonal complement."""
    dimension = len(points[0])
    homogenized = [list(point) + [1] for point in points]
    rows = []
    for vector in nullspace(homogenized, dimension + 1):
        rows.append(LinearInequality(vector[:-1], -vector[-1], EQ, "hull").normalized())
    return sorted(rows, key=lambda row: row_sort_key(row.key))


def free_coordinates(points: Sequence[Sequence]) -> List[int]:
    """Coordinates onto which the point set projects affinely injectively, chosen greedily in order."""
    base = points[0]
    differences = [[Fraction(x) - Fraction(y) for x, y in zip(point, base)] for point in points[1:]]
    target = rank(differences)
    chosen = []
    for j in range(len(base)):
        if len(chosen) == target:
            break
        if rank([[row[k] for k in chosen + [j]] for row in differences]) > len(chosen):
            chosen.append(j)
    return chosen


def dd_hull(v: VPolytope, dim_limit: int = DEFAULT_CONFIG["hullDimLimit"]) -> HPolytope:
    """Irredundant normalized facet description of conv(vertices), with affine-hull equalities first."""
    if not v.vertices:
        raise GeometryError("convex hull of an empty point set")
    if v.rays:
        raise GeometryError("dd_hull handles bounded point sets only")
    points = [list(vertex) for vertex in v.vertices]
    equalities = affine_hull(points)
    chosen = free_coordinates(points)
    d = len(chosen)
    check_dimension("hull dimension", d, dim_limit)
    log(f"INFO DD: hull of {len(points)} points in {v.dimension} coordinates, affine dimension {d}")

    facets = []
    if d > 0:
        # valid inequalities (a, b) of the projected points form the cone {a.q - b <= 0}
        rows = [integer_scaling([point[j] for j in chosen] + [-1]) for point in points]
        for ray in cone_rays(rows, d + 1):
            a, b = ray[:-1], ray[-1]
            if not any(a):
                continue
            coefficients = [Fraction(0)] * v.dimension
            for j, value in zip(chosen, a):
                coefficients[j] = Fraction(value)
            facets.append(LinearInequality(tuple(coefficients), Fraction(b), LE, "hull").normalized())
    facets.sort(key=lambda row: row_sort_key(row.key))
    return HPolytope(v.space, tuple(equalities) + tuple(facets))


def dd_vertices(h: HPolytope, dim_limit: int = DEFAULT_CONFIG["hullDimLimit"]) -> VPolytope:
    """Vertices and extreme rays of a pointed polyhedron via its homogenization {(x, t) : A x - b t <= 0, t >= 0}."""
    space = tuple(h.space) + ("_t",)
    rows = [
        LinearInequality(tuple(row.coefficients) + (-row.rhs,), Fraction(0), row.relation, row.family)
        for row in h.rows
    ]
    rows.append(LinearInequality((Fraction(0),) * h.dimension + (Fraction(-1),), Fraction(0)))
    vertices = []
    rays = []
    for ray in dd_rays(HPolytope(space, tuple(rows)), dim_limit + 1):
        t = ray[-1]
        if t > 0:
            vertices.append(tuple(value / t for value in ray[:-1]))
        else:
            rays.append(ray[:-1])
    return VPolytope(h.space, tuple(sorted(vertices)), tuple(sorted(rays)))
