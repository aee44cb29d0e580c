from fractions import Fraction

import pytest

from totalMatching.exactGeometry import EQ, GeometryError, HPolytope, LinearInequality
from totalMatching.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, is_implied, lp_solve


def F(p, q=1):
    return Fraction(p, q)


def _polytope(space, rows):
    return HPolytope(space, tuple(LinearInequality(*row) for row in rows))


BOX = _polytope(("x", "y"), [((1, 0), 1), ((0, 1), 2), ((-1, 0), 0), ((0, -1), 0)])


def test_box_maximum():
    result = lp_solve(BOX, (1, 1))
    assert result.status == OPTIMAL
    assert result.value == 3
    assert result.point == (1, 2)


def test_box_minimum():
    result = lp_solve(BOX, (1, -1), "min")
    assert result.value == -2
    assert result.point == (0, 2)


def test_unbounded():
    p = _polytope(("x",), [((-1,), 0)])
    assert lp_solve(p, (1,)).status == UNBOUNDED


def test_empty_system_is_unbounded():
    p = HPolytope(("x",), ())
    assert lp_solve(p, (1,), "min").status == UNBOUNDED
    assert lp_solve(p, (1,), "max").status == UNBOUNDED


def test_rowless_tableau_returns_the_zero_point():
    result = lp_solve(HPolytope(("x",), ()), (0,))
    assert (result.status, result.value, result.point) == (OPTIMAL, 0, (0,))
    orthant = _polytope(("x", "y"), [((-1, 0), 0), ((0, -1), 0)])
    assert lp_solve(orthant, (-1, -2)).point == (0, 0)
    assert lp_solve(orthant, (0, 1)).status == UNBOUNDED


def test_trivial_equality_row_is_dropped():
    p = _polytope(("x",), [((0,), 0, EQ), ((-1,), 0)])
    result = lp_solve(p, (-1,))
    assert result.optimal
    assert result.point == (0,)
    assert lp_solve(p, (1,)).status == UNBOUNDED


def test_infeasible():
    p = _polytope(("x",), [((1,), -1), ((-1,), 0)])
    assert lp_solve(p, (1,)).status == INFEASIBLE
    assert feasible_point(p) is None


def test_free_variables_go_negative():
    # x >= -3 is not a sign row, so x stays free
    p = _polytope(("x",), [((-1,), 3)])
    result = lp_solve(p, (-1,))
    assert result.value == 3
    assert result.point == (-3,)


def test_equality_rows():
    p = _polytope(("x", "y"), [((1, 1), 1, EQ), ((-1, 0), 0), ((0, -1), 0)])
    result = lp_solve(p, (2, 1))
    assert result.value == 2
    assert result.point == (1, 0)


def test_redundant_equalities_are_dropped_after_phase_one():
    p = _polytope(("x", "y"), [((1, 1), 1, EQ), ((2, 2), 2, EQ), ((-1, 0), 0), ((0, -1), 0)])
    assert lp_solve(p, (1, 3)).value == 3


def test_degenerate_cycling_example_terminates():
    # a classic instance on which the largest-coefficient rule cycles
    rows = [
        ((F(1, 4), -8, -1, 9), 0),
        ((F(1, 2), -12, F(-1, 2), 3), 0),
        ((0, 0, 1, 0), 1),
    ]
    rows += [(tuple(-int(i == j) for j in range(4)), 0) for i in range(4)]
    p = _polytope(("a", "b", "c", "d"), rows)
    result = lp_solve(p, (F(3, 4), -20, F(1, 2), -6))
    assert result.value == F(5, 4)


def test_objective_length_is_checked():
    with pytest.raises(GeometryError):
        lp_solve(BOX, (1,))


def test_feasible_point_satisfies_rows():
    point = feasible_point(BOX)
    assert BOX.contains(point)


def test_is_implied():
    assert is_implied(LinearInequality((1, 1), 3), BOX)
    assert not is_implied(LinearInequality((1, 1), 2), BOX)
    assert not is_implied(LinearInequality((1, 0), 0, EQ), BOX)
    line = _polytope(("x", "y"), [((1, -1), 0, EQ), ((-1, 0), 0), ((1, 0), 1)])
    assert is_implied(LinearInequality((-1, 1), 0, EQ), line)


def test_is_implied_when_unbounded():
    p = _polytope(("x",), [((-1,), 0)])
    assert not is_implied(LinearInequality((1,), 10), p)
    assert is_implied(LinearInequality((-1,), 1), p)


def test_is_implied_needs_a_nonempty_polytope():
    p = _polytope(("x",), [((1,), -1), ((-1,), 0)])
    with pytest.raises(GeometryError):
        is_implied(LinearInequality((1,), 0), p)
