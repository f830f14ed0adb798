import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tropsev import polygon as pg
from tropsev import rational as ra
from tropsev.errors import (
    DegenerateABC,
    DegenerateParameters,
    HypothesesNotMet,
    ParameterAtPole,
    ProfileMismatch,
)

POLYGONS = [pg.unit_triangle().scaled(3), pg.kite(3, 3), pg.kite(1, 2), pg.height2_polygon(1, 2)]

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=30)


def test_factored_functions():
    f = ra.FactoredRationalFunction(Fraction(2), ((1, 2), (3, -1), (1, 1)))
    assert f.factors == ((1, 3), (3, -1))
    assert f(0) == Fraction(2) * (-1) ** 3 / (-3)
    with pytest.raises(ParameterAtPole):
        f(3)
    A, B = f.numerator_denominator()
    t = sympy.Symbol("t")
    assert sympy.simplify(A.as_expr() / B.as_expr() - 2 * (t - 1) ** 3 / (t - 3)) == 0
    with pytest.raises(ValueError):
        ra.FactoredRationalFunction(Fraction(0))


def test_parametrization_validation():
    P = pg.kite(1, 2)
    prof = pg.trivial_profile(P)
    with pytest.raises(DegenerateParameters):
        ra.RationalParametrization(P, prof, ((1,), (1,), (2,), (3,)))
    with pytest.raises(DegenerateParameters):
        ra.RationalParametrization(P, prof, ((1,), (2,), (3,), (4,)), (0, 1))
    with pytest.raises(ProfileMismatch):
        ra.RationalParametrization(P, prof, ((1,), (2,), (3,)))
    R = ra.RationalParametrization(P, prof, ((1,), (2,), (3,), (4,)))
    assert json.loads(json.dumps(R.to_dict()))["parameters"] == [["1"], ["2"], ["3"], ["4"]]


def test_height2_pullbacks():
    fx, fy = ra.height2_parametrization(1, 2, Fraction(1, 3))
    assert fx.factors == ((0, 1), (Fraction(1, 3), -1), (1, -1))
    assert fy.factors == ((0, 2), (1, 1))


def test_kite_divisors_by_side():
    rel = ra.boundary_divisor_relations(pg.kite(3, 3))
    assert sorted(rel["x"].values()) == [-1, -1, 1, 1]
    assert sorted(rel["y"].values()) == [-3, -3, 3, 3]
    assert sum(rel["x"].values()) == sum(rel["y"].values()) == 0


@pytest.mark.parametrize("P", POLYGONS)
def test_side_choice_certificate(P):
    for k in range(len(pg.sides(P))):
        l, cert = ra.choose_side_l(P, k)
        assert cert["holds"] and cert["l"] == l
        assert abs(cert["pairing"]) <= cert["width"] == pg.width(P)


@pytest.mark.parametrize("P", POLYGONS)
def test_random_parametrizations_are_immersions(P):
    R = ra.random_parametrization(P, None, 1)
    assert ra.boundary_injectivity_check(R)
    ok, witnesses = ra.immersion_check(R)
    assert ok and witnesses
    with pytest.raises(HypothesesNotMet):
        ra.immersion_check(R, char=2)


def test_a_critical_boundary_point_is_found():
    """Side 2 of 3 * triangle has normal (-1, 0); its log-derivative along (0, -1) vanishes at 0."""
    P = pg.unit_triangle().scaled(3)
    R = ra.RationalParametrization(P, pg.trivial_profile(P), ((1, 2, -3), (Fraction(3, 2), 3, 6), (0, 5, 7)))
    # residues of the y-direction log-derivative at the side-0 points cancel at t = 0
    m = tuple(pg.sides(P)[2].primitive_direction)
    value = sum(Fraction(r) / (0 - c) for c, r in ra.log_derivative(R, m) if c != 0)
    assert value == 0
    ok, witnesses = ra.immersion_check(R)
    assert not ok
    assert {"point": [2, 0], "t": "0", "functional": list(m), "value": "0"} in witnesses


def test_tacnode_remainder_by_hand():
    # F = t^2 - (4c + 2)/3 t + c and G = t (t - 1); G - F = (4c - 1)/3 t - c
    c = sympy.Symbol("c")
    A, B = ra.tacnode_remainder(1, 1, c)
    assert sympy.simplify(A - (4 * c - 1) / 3) == 0
    assert sympy.simplify(B + c) == 0


def test_tacnode_test_rejects_degenerate_input():
    for c in (0, 1):
        with pytest.raises(DegenerateABC):
            ra.tacnode_test_height2(2, 3, c)
    with pytest.raises(DegenerateABC):
        ra.tacnode_test_height2(0, 0, 2)
    assert ra.tacnode_test_height2(2, 3, Fraction(5, 7))


@pytest.mark.parametrize(
    "P", [pg.kite(1, 2), pg.height2_polygon(1, 2), pg.unit_triangle().scaled(4)], ids=["kite12", "h2", "tri4"]
)
def test_node_count_matches_interior_points(P):
    report = ra.nodal_check(P, seed=3)
    assert report["match"] and report["node_count"] == len(pg.interior_lattice_points(P))
    assert all(n["transverse"] for n in report["nodes"])


def test_nodal_check_is_deterministic():
    P = pg.kite(1, 2)
    assert json.dumps(ra.nodal_check(P, seed=4)) == json.dumps(ra.nodal_check(P, seed=4))


directions = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(POLYGONS), st.integers(0, 10**5), directions, directions)
def test_pullback_is_a_homomorphism(P, seed, m1, m2):
    R = ra.random_parametrization(P, None, seed)
    total = (m1[0] + m2[0], m1[1] + m2[1])
    prod = ra.monomial_pullback(R, m1) * ra.monomial_pullback(R, m2)
    assert prod == ra.monomial_pullback(R, total)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(POLYGONS), st.integers(0, 10**5), directions)
def test_divisors_have_degree_zero(P, seed, m):
    R = ra.random_parametrization(P, None, seed)
    f = ra.monomial_pullback(R, m)
    assert sum(e for _, e in f.factors) == 0
    # orders along each side are <n, m> times the tangency
    for _, _, c, d, n in R.points():
        assert f.exponent(c) == d * (n[0] * m[0] + n[1] * m[1])


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(POLYGONS), st.integers(0, 10**5), directions)
def test_log_derivative_identity(P, seed, m):
    R = ra.random_parametrization(P, None, seed)
    assert ra.verify_log_derivative(R, m)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), fractions)
def test_tacnode_quadratic_vanishes_at_its_roots_sum(a, b, c):
    F = ra.tacnode_quadratic(a, b, c)
    coeffs = F.all_coeffs()
    # Vieta: roots sum to ((2a+2b)c + 2b)/(a+2b) and multiply to c
    assert sympy.Rational(-coeffs[1]) == sympy.Rational((2 * a + 2 * b) * c + 2 * b) / (a + 2 * b)
    assert sympy.Rational(coeffs[2]) == sympy.Rational(c.numerator, c.denominator)
