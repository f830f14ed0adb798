"""Plane Severi degrees through the Caporaso-Harris recursion.

Deliberately independent of every tropical code path: it shares nothing with
:mod:`tropsev.enumeration` except the integers it returns, so the two can be
compared as separate routes to the same number.

``relative_count(d, delta, alpha, beta)`` counts reduced (possibly reducible)
degree-``d`` curves with ``delta`` nodes, tangent to a fixed line at
prescribed fixed points (``alpha``) and at free points (``beta``), through
the matching number of general points.  Tangency vectors are tuples whose
``k``-th entry (1-based) counts contacts of order ``k``.
"""

from functools import lru_cache
from itertools import product
from math import comb

from .errors import OutOfRange

MAX_DEGREE = 5


def _weight(v):
    return sum((k + 1) * a for k, a in enumerate(v))


def _trim(v):
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _pad(v, n):
    return tuple(v) + (0,) * (n - len(v))


def _point_count(d, delta, alpha, beta):
    return d * (d + 3) // 2 - delta - _weight(alpha) - _weight(beta) + sum(beta)


@lru_cache(maxsize=None)
def relative_count(d, delta, alpha, beta):
    alpha, beta = _trim(alpha), _trim(beta)
    if delta < 0 or _weight(alpha) + _weight(beta) != d:
        return 0
    if _point_count(d, delta, alpha, beta) < 0:
        return 0
    if d == 0:
        return 1 if delta == 0 else 0
    n = d  # room for every tangency order a degree-(d-1) curve can have
    a, b = _pad(alpha, n), _pad(beta, n)
    total = 0
    # a free tangency point specializes to a fixed one
    for k in range(n):
        if b[k] > 0:
            a2 = list(a)
            b2 = list(b)
            a2[k] += 1
            b2[k] -= 1
            total += (k + 1) * relative_count(d, delta, _trim(a2), _trim(b2))
    # the curve breaks off the line
    for a_prime in product(*(range(x + 1) for x in a)):
        rest = d - 1 - _weight(a_prime)
        if rest < 0:
            continue
        for b_prime in _vectors_at_least(b, rest):
            diff = [y - x for x, y in zip(b, b_prime)]
            delta_prime = delta - (d - 1) + sum(diff)
            if delta_prime < 0:
                continue
            factor = 1
            for k in range(n):
                factor *= comb(a[k], a_prime[k]) * comb(b_prime[k], b[k]) * (k + 1) ** diff[k]
            total += factor * relative_count(d - 1, delta_prime, _trim(a_prime), _trim(b_prime))
    return total


def _vectors_at_least(lower, weight):
    """Vectors ``v >= lower`` (entrywise, same length) with ``_weight(v) == weight``."""
    n = len(lower)

    def rec(k, remaining):
        if k == n:
            if remaining == 0:
                yield ()
            return
        w = k + 1
        start = lower[k]
        for x in range(start, remaining // w + 1):
            for tail in rec(k + 1, remaining - w * x):
                yield (x,) + tail

    yield from rec(0, weight)


def severi_degree(d, delta):
    """All reduced degree-``d`` curves with ``delta`` nodes through the right points."""
    return relative_count(d, delta, (), (d,))


def arithmetic_genus(d):
    return (d - 1) * (d - 2) // 2


@lru_cache(maxsize=None)
def _all_curves(d, n):
    """Reduced degree-``d`` curves through ``n`` points, by point count."""
    if d == 0:
        return 1 if n == 0 else 0
    g = n - 3 * d + 1
    delta = arithmetic_genus(d) - g
    return severi_degree(d, delta)


@lru_cache(maxsize=None)
def irreducible_severi_degree(d, g):
    """Irreducible genus-``g`` degree-``d`` curves through ``3d + g - 1`` points.

    Reducible curves are removed by splitting off the component through the
    first point: its degree and genus fix how many of the points it passes
    through, and the rest of the curve must interpolate the others.
    """
    if not 1 <= d <= MAX_DEGREE:
        raise OutOfRange(f"degree {d} outside 1..{MAX_DEGREE}")
    if not 0 <= g <= arithmetic_genus(d):
        raise OutOfRange(f"genus {g} outside 0..{arithmetic_genus(d)}")
    n = 3 * d + g - 1
    total = _all_curves(d, n)
    for d1 in range(1, d):
        for g1 in range(arithmetic_genus(d1) + 1):
            s = 3 * d1 + g1 - 1
            if not 1 <= s <= n:
                continue
            rest = _all_curves(d - d1, n - s)
            if rest:
                total -= comb(n - 1, s - 1) * irreducible_severi_degree(d1, g1) * rest
    return total
