from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropsev import realizability as rz
from tropsev.errors import NotFloorDecomposed
from tropsev.tropical import Edge, Leg, ParametrizedTropicalCurve, Vertex


def elliptic_tail(y):
    """Elevator of height 3 with a contracted edge to a weight-1 leaf at height ``y``."""
    y = Fraction(y)
    return ParametrizedTropicalCurve.from_parts(
        [Vertex(0), Vertex(1), Vertex(2), Vertex(3, 1)],
        [Edge(0, 0, 1, (0, 1)), Edge(1, 1, 2, (0, 1)), Edge(2, 1, 3, (0, 0))],
        [Leg(0, 0, (-1, 0)), Leg(1, 0, (1, -1)), Leg(2, 2, (-1, 0)), Leg(3, 2, (1, 1))],
        {0: y, 1: 3 - y, 2: 1},
        {0: (0, 0), 1: (0, y), 2: (0, 3), 3: (0, y)},
    )


def kinds(C):
    return sorted(O.kind for O in rz.find_special_subgraphs(C))


def test_special_subgraphs(build):
    assert kinds(build.elevator_with_elliptic_vertex(1)) == [rz.ELLIPTIC_COMPONENT]
    assert kinds(build.flattened_cycle(1, 3)) == [rz.FLATTENED_CYCLE]
    assert rz.CONTRACTED_ELLIPTIC_TAIL in kinds(elliptic_tail(1))


def test_centered_configurations_pass(build):
    centered = (
        build.elevator_with_elliptic_vertex(Fraction(3, 2)),
        build.flattened_cycle(1, 3),
        elliptic_tail(Fraction(3, 2)),
    )
    for C in centered:
        rep = rz.realizability_filter(C)
        assert rep["violations"] == [] and rep["checked"] >= 1
        assert rep["verdict"] == "no violation found"


def test_off_center_tail_is_rejected():
    rep = rz.realizability_filter(elliptic_tail(1))
    assert rep["violations"] and rep["verdict"] == "violations found"


def test_gaps_are_reported_exactly(build):
    rep = rz.realizability_filter(build.elevator_with_elliptic_vertex(Fraction(1, 3)))
    (v,) = rep["violations"]
    assert (v["lower_gap"], v["upper_gap"]) == ("1/3", "8/3")


def test_filter_needs_floor_decomposition():
    C = ParametrizedTropicalCurve.from_parts(
        [Vertex(0)], [], [Leg(0, 0, (-2, -1)), Leg(1, 0, (1, 0)), Leg(2, 0, (1, 1))], {}, {0: (0, 0)}
    )
    with pytest.raises(NotFloorDecomposed):
        rz.realizability_filter(C)


def test_transform_keeps_balancing(build):
    C = build.flattened_cycle(1, 3)
    D = rz.transform_curve(C, ((-1, 0), (0, 1)))
    assert D.type.balancing_defect() is None
    assert D.position(3) == (0, 4)


def test_enumerated_curves_pass(cubic_genus_one, kite33_genus_one):
    for C in [cubic_genus_one] + list(kite33_genus_one):
        assert rz.realizability_filter(C)["violations"] == []


heights = st.fractions(min_value=Fraction(1, 100), max_value=Fraction(299, 100), max_denominator=100)


@settings(max_examples=60, deadline=None)
@given(heights)
def test_elliptic_vertex_passes_only_at_the_midpoint(y):
    C = ParametrizedTropicalCurve.from_parts(
        [Vertex(0), Vertex(1, 1), Vertex(2)],
        [Edge(0, 0, 1, (0, 1)), Edge(1, 1, 2, (0, 1))],
        [Leg(0, 0, (-1, 0)), Leg(1, 0, (1, -1)), Leg(2, 2, (-1, 0)), Leg(3, 2, (1, 1))],
        {0: y, 1: 3 - y},
        {0: (0, 0), 1: (0, y), 2: (0, 3)},
    )
    assert (rz.realizability_filter(C)["violations"] == []) == (y == Fraction(3, 2))
