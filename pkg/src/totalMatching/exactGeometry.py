"""
Exact rational linear algebra and the polytope value types shared by every module.

Rationals are `fractions.Fraction`. Inequalities compare across modules by their normalized form
(coprime integer coefficients), so "equal up to positive scaling" is plain tuple equality.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from totalMatching.utils import LimitExceededError, check_limit

LE = "<="
EQ = "="

FAMILIES = (
    "nonneg",
    "node",
    "edge",
    "star",
    "clique",
    "balanced-biclique",
    "nonbalanced-lifted",
    "non-facet",
    "ef-raw",
    "projected",
    "cone",
    "hull",
    "other",
)

Vector = Tuple[Fraction, ...]


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(value) for value in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


# ----------- normalization ----------- #


def integer_scaling(values: Sequence[Fraction]) -> List[int]:
    """Positive multiple of `values` with coprime integer entries (all zeros stays all zeros)."""
    values = [Fraction(value) for value in values]
    denominator = lcm(*(value.denominator for value in values)) if values else 1
    integers = [int(value * denominator) for value in values]
    divisor = gcd(*integers) if integers else 0
    if divisor > 1:
        integers = [value // divisor for value in integers]
    return integers


def normalize_vector(values: Sequence) -> Vector:
    return tuple(Fraction(value) for value in integer_scaling(values))


def normalize_row(coefficients: Sequence, rhs, relation: str = LE) -> Tuple[Vector, Fraction]:
    """Coprime integer form of a row. <= rows are only scaled positively; = rows also get a positive leading entry."""
    scaled = integer_scaling(list(coefficients) + [rhs])
    if relation == EQ:
        leading = next((value for value in scaled if value != 0), 0)
        if leading < 0:
            scaled = [-value for value in scaled]
    return tuple(Fraction(value) for value in scaled[:-1]), Fraction(scaled[-1])


# ----------- value types ----------- #


@dataclass(frozen=True)
class LinearInequality:
    coefficients: Vector
    rhs: Fraction
    relation: str = LE
    family: str = "other"
    note: str = ""

    def __post_init__(self):
        if self.relation not in (LE, EQ):
            raise GeometryError(f"unknown relation {self.relation!r}")
        if self.family not in FAMILIES:
            raise GeometryError(f"unknown family tag {self.family!r}")
        object.__setattr__(self, "coefficients", as_vector(self.coefficients))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def normalized(self) -> "LinearInequality":
        coefficients, rhs = normalize_row(self.coefficients, self.rhs, self.relation)
        return replace(self, coefficients=coefficients, rhs=rhs)

    @property
    def key(self) -> Tuple[str, Vector, Fraction]:
        """Identity of the row up to positive scaling; family and note are not part of it."""
        normalized = self.normalized()
        return normalized.relation, normalized.coefficients, normalized.rhs

    def lhs(self, point: Sequence) -> Fraction:
        if len(point) != self.dimension:
            raise GeometryError(f"point has length {len(point)}, row has {self.dimension} coefficients")
        return dot(self.coefficients, point)

    def slack(self, point: Sequence) -> Fraction:
        return self.rhs - self.lhs(point)

    def satisfied_by(self, point: Sequence) -> bool:
        if self.relation == EQ:
            return self.slack(point) == 0
        return self.slack(point) >= 0

    def is_trivial(self) -> bool:
        """0 <= b with b >= 0, or 0 = 0."""
        if any(self.coefficients):
            return False
        return self.rhs == 0 if self.relation == EQ else self.rhs >= 0

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, value in enumerate(self.coefficients) if value != 0)


def nonnegativity(dimension: int, index: int, family: str = "nonneg", note: str = "") -> LinearInequality:
    coefficients = [Fraction(0)] * dimension
    coefficients[index] = Fraction(-1)
    return LinearInequality(tuple(coefficients), Fraction(0), LE, family, note)


@dataclass(frozen=True)
class HPolytope:
    space: Tuple[str, ...]
    rows: Tuple[LinearInequality, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "space", tuple(self.space))
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            if row.dimension != len(self.space):
                raise GeometryError(f"row of length {row.dimension} in a space of dimension {len(self.space)}")

    @property
    def dimension(self) -> int:
        return len(self.space)

    @property
    def inequalities(self) -> Tuple[LinearInequality, ...]:
        return tuple(row for row in self.rows if row.relation == LE)

    @property
    def equalities(self) -> Tuple[LinearInequality, ...]:
        return tuple(row for row in self.rows if row.relation == EQ)

    def keys(self) -> set:
        return {row.key for row in self.rows}

    def contains(self, point: Sequence) -> bool:
        return all(row.satisfied_by(point) for row in self.rows)

    def deduplicated(self) -> "HPolytope":
        """Normalized rows, first occurrence of every key kept, generation order preserved."""
        seen = {}
        for row in self.rows:
            seen.setdefault(row.key, row.normalized())
        return HPolytope(self.space, tuple(seen.values()))

    def sorted(self) -> "HPolytope":
        return HPolytope(self.space, tuple(sorted(self.rows, key=lambda row: row_sort_key(row.key))))

    def with_rows(self, rows: Iterable[LinearInequality]) -> "HPolytope":
        return HPolytope(self.space, tuple(rows))


def row_sort_key(key):
    """Equalities first, then by coefficients reversed in sign so heavier rows come first, then rhs."""
    relation, coefficients, rhs = key
    return (relation != EQ, tuple(-value for value in coefficients), rhs)


@dataclass(frozen=True)
class VPolytope:
    space: Tuple[str, ...]
    vertices: Tuple[Vector, ...] = ()
    rays: Tuple[Vector, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "space", tuple(self.space))
        vertices = tuple(dict.fromkeys(as_vector(vertex) for vertex in self.vertices))
        rays = tuple(dict.fromkeys(normalize_vector(ray) for ray in self.rays))
        for vector in vertices + rays:
            if len(vector) != len(self.space):
                raise GeometryError(f"vector of length {len(vector)} in a space of dimension {len(self.space)}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "rays", rays)

    @property
    def dimension(self) -> int:
        return len(self.space)


def check_space(a: Sequence[str], b: Sequence[str]):
    if tuple(a) != tuple(b):
        raise GeometryError("coordinate spaces differ")


# ----------- linear algebra ----------- #


def _integer_rows(matrix: Iterable[Sequence]) -> List[List[int]]:
    return [integer_scaling(row) for row in matrix]


def rank(matrix: Iterable[Sequence]) -> int:
    """Rank by fraction-free elimination on integer-scaled rows."""
    rows = [row for row in _integer_rows(matrix) if any(row)]
    if not rows:
        return 0
    columns = len(rows[0])
    result = 0
    for column in range(columns):
        pivot = next((i for i in range(result, len(rows)) if rows[i][column] != 0), None)
        if pivot is None:
            continue
        rows[result], rows[pivot] = rows[pivot], rows[result]
        p = rows[result]
        for i in range(result + 1, len(rows)):
            factor = rows[i][column]
            if factor == 0:
                continue
            combined = [p[column] * x - factor * y for x, y in zip(rows[i], p)]
            divisor = gcd(*combined)
            rows[i] = [x // divisor for x in combined] if divisor > 1 else combined
        result += 1
        if result == len(rows):
            break
    return result


def rref(matrix: Sequence[Sequence], columns: Optional[int] = None) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over the rationals: (nonzero rows, pivot columns)."""
    rows = [[Fraction(value) for value in row] for row in matrix]
    if columns is None:
        columns = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for column in range(columns):
        pivot = next((i for i in range(r, len(rows)) if rows[i][column] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = rows[r][column]
        rows[r] = [value / scale for value in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][column] != 0:
                factor = rows[i][column]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(column)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(matrix: Sequence[Sequence], columns: int) -> List[Vector]:
    """Basis of {x : M x = 0}, one vector per free column, each normalized to coprime integers."""
    reduced, pivots = rref(matrix, columns) if matrix else ([], [])
    basis = []
    for free in (c for c in range(columns) if c not in pivots):
        vector = [Fraction(0)] * columns
        vector[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[free]
        basis.append(normalize_vector(vector))
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Maximum number of affinely independent points."""
    if not points:
        raise GeometryError("affine rank of an empty point set")
    base = [Fraction(value) for value in points[0]]
    if any(len(point) != len(base) for point in points):
        raise GeometryError("points have different lengths")
    return rank([Fraction(value) - b for value, b in zip(point, base)] for point in points[1:]) + 1


def greedy_independent(vectors: Sequence[Sequence]) -> List[int]:
    """Indices of a maximal linearly independent subset, scanning in order (incremental elimination)."""
    echelon = []  # (pivot column, row with a 1 there)
    chosen = []
    for index, vector in enumerate(vectors):
        row = [Fraction(value) for value in vector]
        for pivot, basis_row in echelon:
            factor = row[pivot]
            if factor != 0:
                row = [x - factor * y for x, y in zip(row, basis_row)]
        pivot = next((j for j, value in enumerate(row) if value != 0), None)
        if pivot is None:
            continue
        row = [value / row[pivot] for value in row]
        echelon.append((pivot, row))
        chosen.append(index)
    return chosen


def check_dimension(what: str, dimension: int, limit: int):
    check_limit(what, dimension, limit, DimensionLimitError)


class GeometryError(Exception):
    """Malformed geometric input: empty sets, mismatched spaces, non-homogeneous cones, infeasibility."""

    pass


class DimensionLimitError(LimitExceededError):
    pass
