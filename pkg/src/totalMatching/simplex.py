"""Exact two-phase tableau simplex over Fractions with Bland's anti-cycling rule."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from totalMatching.exactGeometry import EQ, LE, GeometryError, HPolytope, LinearInequality, Vector, as_vector
from totalMatching.utils import log

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[Vector] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class SimplexTableau:
    """Dense tableau in canonical form: the basic column of row i is the i-th unit vector."""

    def __init__(self, A: List[List[Fraction]], b: List[Fraction], basis: List[int], columns: int):
        self.A = A
        self.b = b
        self.basis = basis
        # kept apart from A, which may have no rows at all
        self.columns = columns
        self.blocked = set()
        self.pivots = 0

    def pivot(self, i: int, j: int):
        piv = self.A[i][j]
        self.A[i] = [value / piv for value in self.A[i]]
        self.b[i] /= piv
        for k in range(len(self.A)):
            factor = self.A[k][j]
            if k != i and factor != 0:
                self.A[k] = [x - factor * y for x, y in zip(self.A[k], self.A[i])]
                self.b[k] -= factor * self.b[i]
        self.basis[i] = j
        self.pivots += 1

    def reduced_profits(self, c: Sequence[Fraction]) -> List[Fraction]:
        profits = list(c)
        for i, column in enumerate(self.basis):
            cb = c[column]
            if cb != 0:
                profits = [d - cb * a for d, a in zip(profits, self.A[i])]
        return profits

    def bland_primal_step(self, c: Sequence[Fraction]) -> Optional[str]:
        """One pivot of the maximization of c; returns OPTIMAL / UNBOUNDED when no pivot is possible."""
        profits = self.reduced_profits(c)
        entering = next(
            (j for j in range(self.columns) if j not in self.blocked and profits[j] > 0 and j not in self.basis),
            None,
        )
        if entering is None:
            return OPTIMAL
        leaving = None
        best = None
        for i in range(len(self.A)):
            if self.A[i][entering] > 0:
                ratio = self.b[i] / self.A[i][entering]
                if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            return UNBOUNDED
        self.pivot(leaving, entering)
        return None

    def maximize(self, c: Sequence[Fraction]) -> str:
        while True:
            status = self.bland_primal_step(c)
            if status is not None:
                return status

    def value(self, c: Sequence[Fraction]) -> Fraction:
        return sum((c[column] * self.b[i] for i, column in enumerate(self.basis)), Fraction(0))

    def solution(self) -> List[Fraction]:
        x = [Fraction(0)] * self.columns
        for i, column in enumerate(self.basis):
            x[column] = self.b[i]
        return x

    def drop_row(self, i: int):
        del self.A[i]
        del self.b[i]
        del self.basis[i]


def _is_sign_row(row: LinearInequality) -> Optional[int]:
    """Index j when the row reads -t * x_j <= 0 (t > 0)."""
    if row.relation != LE or row.rhs != 0:
        return None
    support = row.support()
    if len(support) == 1 and row.coefficients[support[0]] < 0:
        return support[0]
    return None


def lp_solve(p: HPolytope, objective: Sequence, sense: str = "max") -> LPResult:
    """Exact optimum of objective over p. Variables without an explicit x_j >= 0 row are free (split in two)."""
    objective = as_vector(objective)
    if len(objective) != p.dimension:
        raise GeometryError(f"objective has length {len(objective)}, space has dimension {p.dimension}")
    if sense not in ("max", "min"):
        raise GeometryError(f"unknown sense {sense!r}")

    nonnegative = set()
    rows = []
    for row in p.rows:
        j = _is_sign_row(row)
        if j is not None:
            nonnegative.add(j)
        else:
            rows.append(row)

    # structural columns: (original index, sign)
    structural = []
    for j in range(p.dimension):
        structural.append((j, 1))
        if j not in nonnegative:
            structural.append((j, -1))
    slack_of = {}
    for i, row in enumerate(rows):
        if row.relation == LE:
            slack_of[i] = len(structural) + len(slack_of)
    width = len(structural) + len(slack_of)

    A, b, basis, artificial = [], [], [], []
    for i, row in enumerate(rows):
        line = [row.coefficients[j] * sign for j, sign in structural] + [Fraction(0)] * len(slack_of)
        rhs = row.rhs
        if i in slack_of:
            line[slack_of[i]] = Fraction(1)
        if rhs < 0:
            line = [-value for value in line]
            rhs = -rhs
        A.append(line)
        b.append(rhs)
        if i in slack_of and line[slack_of[i]] == 1:
            basis.append(slack_of[i])
        else:
            basis.append(None)

    # artificial columns for rows without a starting basic slack
    for i in range(len(rows)):
        if basis[i] is None:
            column = width + len(artificial)
            artificial.append(column)
            basis[i] = column
    total = width + len(artificial)
    for i, line in enumerate(A):
        line.extend(Fraction(int(basis[i] == column)) for column in artificial)

    tableau = SimplexTableau(A, b, basis, total)
    if artificial:
        phase1 = [Fraction(0)] * width + [Fraction(-1)] * len(artificial)
        tableau.maximize(phase1)
        if tableau.value(phase1) < 0:
            log(f"DEBUG SIMPLEX: infeasible after {tableau.pivots} phase-1 pivots")
            return LPResult(INFEASIBLE)
        artificial_set = set(artificial)
        i = 0
        while i < len(tableau.basis):
            if tableau.basis[i] in artificial_set:
                j = next((j for j in range(width) if tableau.A[i][j] != 0), None)
                if j is None:
                    tableau.drop_row(i)
                    continue
                tableau.pivot(i, j)
            i += 1
        tableau.blocked = artificial_set

    c = [Fraction(0)] * total
    for column, (j, sign) in enumerate(structural):
        c[column] = objective[j] * sign if sense == "max" else -objective[j] * sign
    status = tableau.maximize(c)
    if status == UNBOUNDED:
        log(f"DEBUG SIMPLEX: unbounded after {tableau.pivots} pivots")
        return LPResult(UNBOUNDED)

    values = tableau.solution()
    point = [Fraction(0)] * p.dimension
    for column, (j, sign) in enumerate(structural):
        point[j] += sign * values[column]
    value = tableau.value(c)
    if sense == "min":
        value = -value
    log(f"DEBUG SIMPLEX: optimal value {value} after {tableau.pivots} pivots")
    return LPResult(OPTIMAL, value, tuple(point))


def feasible_point(p: HPolytope) -> Optional[Vector]:
    result = lp_solve(p, [0] * p.dimension)
    return result.point if result.optimal else None


def is_implied(ineq: LinearInequality, p: HPolytope) -> bool:
    """True iff every point of p satisfies ineq (both directions for equalities)."""
    if ineq.dimension != p.dimension:
        raise GeometryError("inequality and polytope live in different spaces")
    result = lp_solve(p, ineq.coefficients, "max")
    if result.status == INFEASIBLE:
        raise GeometryError("implication against an infeasible polytope")
    if result.status == UNBOUNDED or result.value > ineq.rhs:
        return False
    if ineq.relation == EQ:
        low = lp_solve(p, ineq.coefficients, "min")
        return low.optimal and low.value >= ineq.rhs
    return True
