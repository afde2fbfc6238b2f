import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from relaxcomp.exact import (HPolyhedron, Inequality, LinearConstraint, UnboundedError,
                             conv_membership, lattice_points, lp_feasible, lp_optimize,
                             segment_hits_hull, separating_inequality)
from relaxcomp.lattice import cross

import oracles

small = st.integers(-4, 4)


def pts(d, min_size=1, max_size=6):
    return st.lists(st.tuples(*[small] * d), min_size=min_size, max_size=max_size, unique=True)


def test_lp_feasible_simple():
    cons = [LinearConstraint((1, 1), "<=", 1), LinearConstraint((1, 0), ">=", 0),
            LinearConstraint((0, 1), ">=", Fraction(1, 2))]
    x = lp_feasible(cons, 2)
    assert x is not None and all(c.holds(x) for c in cons)
    cons.append(LinearConstraint((1, 1), ">=", 2))
    assert lp_feasible(cons, 2) is None


def test_lp_optimize_exact_value():
    cons = [LinearConstraint((3, 2), "<=", 7), LinearConstraint((1, 0), ">=", 0),
            LinearConstraint((0, 1), ">=", 0), LinearConstraint((1, -1), "==", Fraction(1, 3))]
    val, x = lp_optimize(cons, (1, 1), 2)
    # x = y + 1/3, 5y + 1 = 7  ->  y = 6/5
    assert val == Fraction(6, 5) * 2 + Fraction(1, 3)
    assert all(c.holds(x) for c in cons)


def test_lp_unbounded_and_infeasible():
    with pytest.raises(UnboundedError):
        lp_optimize([LinearConstraint((1, 0), ">=", 0)], (1, 0), 2)
    assert lp_optimize([LinearConstraint((1,), ">=", 1), LinearConstraint((1,), "<=", 0)], (1,), 1) is None


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=6), st.tuples(small, small))
def test_lp_optimize_matches_scipy(rows, obj):
    # box -5..5 keeps every instance bounded
    cons = [LinearConstraint((a, b), "<=", c) for a, b, c in rows]
    cons += [LinearConstraint(e, "<=", 5) for e in ((1, 0), (0, 1))]
    cons += [LinearConstraint(e, ">=", -5) for e in ((1, 0), (0, 1))]
    res = linprog(-np.array(obj, float), A_ub=[r[:2] for r in rows], b_ub=[r[2] for r in rows],
                  bounds=[(-5, 5)] * 2, method="highs")
    got = lp_optimize(cons, obj, 2)
    if res.status == 2:
        assert got is None
    else:
        assert got is not None
        assert abs(float(got[0]) + res.fun) < 1e-7
        assert all(c.holds(got[1]) for c in cons)


@given(pts(2), pts(2), st.sampled_from([2, 3]))
def test_separation_matches_scipy(inner, outer, d):
    if d == 3:
        inner = [p + (p[0] % 2,) for p in inner]
        outer = [p + (p[1] % 3 - 1,) for p in outer]
    w = separating_inequality(inner, outer)
    assert (w is not None) == oracles.lp_separable(inner, outer)
    if w is not None:
        assert all(w.contains(x) for x in inner)
        assert all(w.slack(y) <= -1 for y in outer)


@given(pts(3, max_size=7), st.tuples(small, small, small))
def test_conv_membership_matches_scipy(S, q):
    assert conv_membership(q, S) == oracles.in_hull(q, S)


@given(pts(2, max_size=5), st.tuples(small, small), st.tuples(small, small))
def test_segment_matches_scipy(S, p, q):
    assert segment_hits_hull(p, q, S) == oracles.segment_meets_hull(p, q, S)


def test_normalized_is_coprime_integer():
    w = Inequality((Fraction(2, 3), Fraction(-4, 9)), Fraction(8, 3)).normalized()
    assert w.a == (6, -4) and w.b == 24 or w.a == (3, -2) and w.b == 12
    assert w == Inequality((3, -2), 12)


def test_lattice_points_box_and_cross():
    P = HPolyhedron.from_matrix([[1, 0], [-1, 0], [0, 1], [0, -1]], [2, 1, Fraction(3, 2), 0])
    assert lattice_points(P) == frozenset(itertools.product(range(-1, 3), range(0, 2)))
    Q = HPolyhedron.from_matrix([[8, 12, -13], [-8, -12, -13], [12, -8, 13], [-12, 8, 13]], [13] * 4)
    assert lattice_points(Q) == cross(3).points


def test_lattice_points_unbounded_and_empty():
    with pytest.raises(UnboundedError):
        lattice_points(HPolyhedron.from_matrix([[1, 0], [0, 1]], [0, 0]))
    empty = HPolyhedron.from_matrix([[1, 0], [-1, 0], [0, 1], [0, -1]],
                                    [Fraction(1, 3), Fraction(-1, 4), 5, 5])
    assert lattice_points(empty) == frozenset()


def test_mixed_dimension_rejected():
    with pytest.raises(ValueError):
        HPolyhedron((Inequality((1, 0), 1), Inequality((1,), 1)))


@given(pts(3, max_size=8), st.tuples(small, small, small))
def test_conv_membership_caratheodory(S, q):
    # q is in conv(S) iff it is in the hull of at most d + 1 points of S
    expected = any(oracles.in_hull(q, list(c)) for r in range(1, 5) for c in itertools.combinations(S, r))
    assert conv_membership(q, S) == expected


@given(pts(2, max_size=5), st.tuples(small, small), st.tuples(small, small))
def test_segment_symmetry(S, p, q):
    assert segment_hits_hull(p, q, S) == segment_hits_hull(q, p, S)
    assert segment_hits_hull(p, p, S) == conv_membership(p, S)


@given(st.permutations(range(4)))
def test_lattice_points_row_order(perm):
    A = [[8, 12, -13], [-8, -12, -13], [12, -8, 13], [-12, 8, 13]]
    Q = HPolyhedron.from_matrix([A[i] for i in perm], [13] * 4)
    assert lattice_points(Q) == cross(3).points


def test_extreme_points():
    from relaxcomp.exact import extreme_points
    sq = [(x, y) for x in range(3) for y in range(3)]
    assert sorted(extreme_points(sq)) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert extreme_points([(1, 1), (1, 1)]) == [(1, 1)]
