import os
import time
from contextlib import contextmanager
from fractions import Fraction
from types import SimpleNamespace

import pytest

from tropsev import polygon as pg
from tropsev.enumeration import enumerate_through_points
from tropsev.tropical import Edge, Leg, ParametrizedTropicalCurve, Vertex

LONG = os.environ.get("TROPSEV_LONG_TESTS") == "1"

_acceptance_lines = []


def triangle(d):
    return pg.LatticePolygon.hull([(0, 0), (d, 0), (0, d)])


def elevator_with_elliptic_vertex(y):
    """Two one-vertex floors joined by an elevator of height 3 through a weight-1 vertex at height ``y``."""
    y = Fraction(y)
    return ParametrizedTropicalCurve.from_parts(
        [Vertex(0), Vertex(1, 1), Vertex(2)],
        [Edge(0, 0, 1, (0, 1)), Edge(1, 1, 2, (0, 1))],
        [Leg(0, 0, (-1, 0)), Leg(1, 0, (1, -1)), Leg(2, 2, (-1, 0)), Leg(3, 2, (1, 1))],
        {0: y, 1: 3 - y},
        {0: (0, 0), 1: (0, y), 2: (0, 3)},
    )


def flattened_cycle(y1, y2):
    """A weight-2 elevator of height 4 that splits into two parallel edges between heights ``y1`` and ``y2``."""
    y1, y2 = Fraction(y1), Fraction(y2)
    return ParametrizedTropicalCurve.from_parts(
        [Vertex(0), Vertex(1), Vertex(2), Vertex(3)],
        [Edge(0, 0, 1, (0, 2)), Edge(1, 1, 2, (0, 1)), Edge(2, 1, 2, (0, 1)), Edge(3, 2, 3, (0, 2))],
        [Leg(0, 0, (-1, 0)), Leg(1, 0, (1, -2)), Leg(2, 3, (-1, 0)), Leg(3, 3, (1, 2))],
        {0: y1 / 2, 1: y2 - y1, 2: y2 - y1, 3: (4 - y2) / 2},
        {0: (0, 0), 1: (0, y1), 2: (0, y2), 3: (0, 4)},
    )


def weight_one_vertex(kappa):
    """A single weight-1 vertex on a vertical line of multiplicity ``kappa``."""
    return ParametrizedTropicalCurve.from_parts(
        [Vertex(0, 1)], [], [Leg(0, 0, (0, kappa)), Leg(1, 0, (0, -kappa))], {}, {0: (0, 0)}
    )


@pytest.fixture(scope="session")
def build():
    """Hand-built polygons and curves shared by several test modules."""
    return SimpleNamespace(
        triangle=triangle,
        elevator_with_elliptic_vertex=elevator_with_elliptic_vertex,
        flattened_cycle=flattened_cycle,
        weight_one_vertex=weight_one_vertex,
    )


@pytest.fixture(scope="session")
def cubic_genus_one():
    return enumerate_through_points(triangle(3), None, 1)[0]


@pytest.fixture(scope="session")
def kite12_genus_one():
    return enumerate_through_points(pg.kite(1, 2), None, 1)


@pytest.fixture(scope="session")
def kite33_genus_one():
    return enumerate_through_points(pg.kite(3, 3), None, 1)


@pytest.fixture
def criterion():
    """Context manager recording one acceptance line with its timing bound."""

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < limit
            status = "PASS" if ok and in_time else "FAIL"
            note = "" if in_time else f" (over the {limit:g} s bound)"
            line = f"criterion {number:>2} {status}  {title}  [{elapsed:.2f} s]{note}"
            _acceptance_lines.append(line)
            print(line)
        assert in_time, f"criterion {number} took {elapsed:.2f} s, bound {limit} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
