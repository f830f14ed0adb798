from fractions import Fraction

import pytest

from tropsev import floors as fl
from tropsev import polygon as pg
from tropsev.errors import FunctionalContractsEverything, NotDual, NotFloorDecomposed
from tropsev.tropical import Edge, Leg, ParametrizedTropicalCurve, Vertex


def test_cubic_decomposes_into_three_floors(cubic_genus_one):
    dec = fl.decompose(cubic_genus_one)
    assert len(dec.floors) == 3
    assert len(dec.contracted_legs) == 9
    ys = [min(cubic_genus_one.position(v)[1] for v in f.vertices) for f in dec.floors]
    assert ys == sorted(ys)
    assert fl.is_floor_decomposed(cubic_genus_one)


def test_not_floor_decomposed():
    C = ParametrizedTropicalCurve.from_parts(
        [Vertex(0)], [], [Leg(0, 0, (-2, -1)), Leg(1, 0, (1, 0)), Leg(2, 0, (1, 1))], {}, {0: (0, 0)}
    )
    assert not fl.is_floor_decomposed(C)
    with pytest.raises(NotFloorDecomposed):
        fl.decompose(C)


def test_basic_elevators_of_the_cubic(cubic_genus_one):
    basics = fl.basic_floor_to_floor_elevators(cubic_genus_one)
    assert basics
    for E in basics:
        lo, hi = cubic_genus_one.position(E.lower), cubic_genus_one.position(E.upper)
        assert lo[0] == hi[0] and lo[1] < hi[1]
    assert fl.vertical_complexity(cubic_genus_one) >= 1


def test_rational_curve_has_no_cycles(build):
    from tropsev.enumeration import enumerate_through_points

    C = enumerate_through_points(build.triangle(2), None, 0)[0]
    assert fl.vertical_complexity(C) is None


def test_projection_degree_of_the_cubic(cubic_genus_one, build):
    P = build.triangle(3)
    for m in ((0, 1), (1, 0), (1, 1), (1, -1), (2, 1), (1, 3)):
        d, cert = fl.projection_degree(cubic_genus_one, m)
        # oracle: the spread of the polygon under the rotated functional
        vals = [-m[1] * x + m[0] * y for x, y in P.vertices]
        assert d == max(vals) - min(vals) and cert.verified
    with pytest.raises(FunctionalContractsEverything):
        fl.projection_degree(
            ParametrizedTropicalCurve.from_parts([Vertex(0, 1)], [], [], {}, {0: (0, 0)}), (1, 0)
        )


def test_inscribed_parallelograms():
    corners, m = fl.inscribe_parallelogram(pg.kite(2, 3))
    assert m == (0, 1)
    corners, m = fl.inscribe_parallelogram(pg.LatticePolygon.hull([(0, 0), (2, 0), (5, 3), (3, 3)]))
    assert m == (1, 1)
    xs = sorted({c[0] - c[1] for c in corners})
    assert xs[-1] - xs[0] == 2


def test_width_bound_rejects_wrong_polygon(cubic_genus_one):
    with pytest.raises(NotDual):
        fl.elevator_multiplicity_bound_check(cubic_genus_one, pg.kite(1, 2))


def test_width_bound_certificate(cubic_genus_one, build):
    ok, cert = fl.elevator_multiplicity_bound_check(cubic_genus_one, build.triangle(3))
    assert ok and cert.width == 3
    for _, _, k, _, fiber in cert.elevators:
        assert k <= fiber <= cert.width


def test_elevator_as_wide_as_the_polygon():
    """A multiplicity-3 elevator in a polygon of width 3 fills the whole fiber."""
    C = ParametrizedTropicalCurve.from_parts(
        [Vertex(0), Vertex(1)],
        [Edge(0, 0, 1, (0, 3))],
        [Leg(0, 0, (-1, -1)), Leg(1, 0, (1, -2)), Leg(2, 1, (-1, 1)), Leg(3, 1, (1, 2))],
        {0: 1},
        {0: (0, 0), 1: (0, 3)},
    )
    P = pg.polygon_of_degree(C.type.degree)
    assert pg.width(P) == 3
    ok, cert = fl.elevator_multiplicity_bound_check(C, P)
    assert ok
    assert [(k, fiber) for _, _, k, _, fiber in cert.elevators] == [(3, 3)]


def test_fiber_count_along_a_leg():
    C = ParametrizedTropicalCurve.from_parts(
        [Vertex(0)], [], [Leg(0, 0, (-1, 0)), Leg(1, 0, (0, -1)), Leg(2, 0, (1, 1))], {}, {0: (0, 0)}
    )
    assert fl.fiber_count(C, (1, 0), Fraction(1)) == 1
    assert fl.fiber_count(C, (1, 0), Fraction(-1)) == 1
    assert fl.fiber_count(C, (0, 1), Fraction(-5)) == 1
