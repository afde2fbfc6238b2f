import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from relaxcomp.lattice import LatticeSet, ball, box, cross, cube, simplex, unimodular_image
from relaxcomp.separation import (SeparationCertificate, eps_constant, eps_inner, eps_region,
                                  maximal_separable, rc_eps, rc_finite, separable, solve_separation)

import oracles

SMALL_SETS = [cube(2), simplex(2), cross(2), box([(0, 2), (0, 1)]), LatticeSet.of([(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)])]


def test_square_against_unit_ball():
    # x >= 0 and y >= 0 cut off every point of B_1 outside the square
    k, cert = rc_finite(cube(2), ball(2, 1))
    assert k == 2
    assert oracles.brute_rc(cube(2).sorted(), [y for y in ball(2, 1).sorted() if y not in cube(2)]) == 2


def test_known_values():
    assert rc_finite(cube(2), ball(2, 2))[0] == 3
    assert rc_finite(simplex(2), ball(2, 2))[0] == 3
    assert rc_finite(cross(2), ball(2, 1))[0] == 4
    assert rc_finite(cube(2), [])[0] == 0


@settings(max_examples=25)
@given(st.sampled_from(SMALL_SETS), st.sets(st.tuples(st.integers(-2, 3), st.integers(-2, 3)), max_size=9))
def test_rc_matches_brute_force(X, Y):
    outer = sorted(y for y in Y if y not in X)
    k, cert = rc_finite(X, Y)
    assert k == oracles.brute_rc(X.sorted(), outer)
    cert.check(X.sorted(), outer)


@given(st.sampled_from(SMALL_SETS), st.sets(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=20),
       st.sets(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=10))
def test_monotone_in_Y(X, Y, extra):
    assert rc_finite(X, Y)[0] <= rc_finite(X, Y | extra)[0]


@given(st.sampled_from(SMALL_SETS), st.sampled_from([((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1))]),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_unimodular_invariance(X, U, t):
    Y = ball(X, 2)
    XU = unimodular_image(X, U, t)
    YU = unimodular_image(Y, U, t)
    assert rc_finite(X, Y)[0] == rc_finite(XU, YU)[0]


def test_point_in_hull_rejected():
    with pytest.raises(ValueError):
        solve_separation([(0, 0), (2, 0), (0, 2)], [(1, 1)])


def test_certificate_check_catches_errors():
    cert = SeparationCertificate([], {})
    with pytest.raises(AssertionError):
        cert.check([(0, 0)], [(1, 1)])
    assert not cert.is_valid([(0, 0)], [(1, 1)])


def test_separable_and_maximal():
    X = cube(2).sorted()
    assert separable(X, [(2, 0), (2, 1), (2, 2)]) is not None
    assert separable(X, [(-1, 0), (2, 0)]) is None
    grown = maximal_separable(X, ball(2, 2).sorted(), [(2, 0)])
    assert (2, 0) in grown and separable(X, grown) is not None
    for y in ball(2, 2).sorted():
        if y not in grown and y not in cube(2):
            assert separable(X, grown + [y]) is None


def test_chromatic_lower_bound_option():
    X = simplex(3)
    assert rc_finite(X, ball(X, 1), lower_bound="chromatic")[0] == rc_finite(X, ball(X, 1))[0]


def test_eps_constant():
    assert eps_constant(2, 3, 1) == 16
    assert eps_constant(3, 4, Fraction(1, 2)) == 2 * 6 * 5 * 4
    with pytest.raises(ValueError):
        eps_constant(2, 3, 0)


def test_eps_inner():
    pts = eps_inner(LatticeSet.of([(0,), (1,)]), Fraction(1, 2))
    assert pts == [(Fraction(-1, 2),), (0,), (Fraction(1, 2),), (1,), (Fraction(3, 2),)]


def test_rc_eps_segment():
    X = LatticeSet.of([(0,), (1,)])
    region = eps_region(X, Fraction(1, 2))
    assert region.constant == 6
    assert rc_eps(X, Fraction(1, 2), region.certificate_set)[0] == 2


def test_eps_region_membership_is_exact():
    X = simplex(2)
    region = eps_region(X, 1)
    c = region.constant
    for z in itertools.product(range(-20, 22), repeat=2):
        # conv(X) + c[-1,1]^2 is the hexagon below
        inside = -c <= z[0] and -c <= z[1] and z[0] <= 1 + c and z[1] <= 1 + c \
            and z[0] + z[1] <= 1 + 2 * c and z[0] + z[1] >= -2 * c
        assert (z in region.certificate_set) == inside


@pytest.mark.parametrize("X", [cube(2), simplex(2), simplex(3)])
def test_nested_balls(X):
    vals = [rc_finite(X, ball(X, t))[0] for t in (1, 2)]
    assert vals[0] <= vals[1]
