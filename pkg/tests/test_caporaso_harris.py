import pytest

from tropsev import caporaso_harris as ch
from tropsev.errors import OutOfRange


@pytest.mark.parametrize("d", range(1, 7))
def test_smooth_curves_are_unique(d):
    assert ch.severi_degree(d, 0) == 1


@pytest.mark.parametrize("d", range(2, 7))
def test_one_node_is_the_discriminant_degree(d):
    assert ch.severi_degree(d, 1) == 3 * (d - 1) ** 2


@pytest.mark.parametrize("d", range(3, 7))
def test_two_nodes_closed_form(d):
    assert 2 * ch.severi_degree(d, 2) == 3 * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11)


def test_irreducible_counts():
    assert ch.irreducible_severi_degree(1, 0) == 1
    assert ch.irreducible_severi_degree(2, 0) == 1
    assert ch.irreducible_severi_degree(3, 0) == 12
    assert ch.irreducible_severi_degree(3, 1) == 1
    assert ch.irreducible_severi_degree(4, 0) == 620
    # a quartic with at most two nodes cannot be reducible
    assert ch.irreducible_severi_degree(4, 2) == ch.severi_degree(4, 1)
    assert ch.irreducible_severi_degree(4, 1) == ch.severi_degree(4, 2)


def test_reducible_quartics_are_removed():
    # three-nodal quartics: the irreducible ones plus a cubic through 9 points and a line through 2
    assert ch.severi_degree(4, 3) == ch.irreducible_severi_degree(4, 0) + 1 * 1 * 55


def test_top_genus_is_one():
    for d in range(1, ch.MAX_DEGREE + 1):
        assert ch.irreducible_severi_degree(d, ch.arithmetic_genus(d)) == 1


def test_range_checks():
    with pytest.raises(OutOfRange):
        ch.irreducible_severi_degree(0, 0)
    with pytest.raises(OutOfRange):
        ch.irreducible_severi_degree(ch.MAX_DEGREE + 1, 0)
    with pytest.raises(OutOfRange):
        ch.irreducible_severi_degree(3, 2)


def test_relative_counts_with_fixed_tangencies():
    # a line through one point and a fixed point of the reference line
    assert ch.relative_count(1, 0, (1,), ()) == 1
    # conics through three points tangent to the line at a fixed point
    assert ch.relative_count(2, 0, (0, 1), ()) == 1
    # conics through four points tangent to the line somewhere
    assert ch.relative_count(2, 0, (), (0, 1)) == 2
    assert ch.relative_count(2, 0, (3,), ()) == 0
