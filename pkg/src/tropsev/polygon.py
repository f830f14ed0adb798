"""Convex lattice polygons, tangency profiles and the hypothesis reports.

Coordinates are integers.  A polygon is stored counterclockwise, starting at
its lexicographically smallest vertex, so two equal polygons compare equal.

>>> P = kite(1, 2)
>>> P.vertices
(LatticePoint(x=0, y=0), LatticePoint(x=1, y=-1), LatticePoint(x=3, y=0), LatticePoint(x=1, y=1))
>>> width(P), height(P), is_h_transverse(P)
(3, 2, True)
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import NamedTuple

from .errors import (
    InvalidKiteParameters,
    NonConvexInput,
    NotHTransverse,
    ProfileMismatch,
)
from .linalg import smith_diagonal


class LatticePoint(NamedTuple):
    x: int
    y: int


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _canonical_ccw(points):
    pts = [LatticePoint(int(p[0]), int(p[1])) for p in points]
    if len(pts) < 3:
        raise NonConvexInput("a polygon needs at least 3 vertices")
    if len(set(pts)) != len(pts):
        raise NonConvexInput("repeated vertex")
    turns = [_cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]
    if any(t == 0 for t in turns):
        raise NonConvexInput("three consecutive collinear vertices")
    if not (all(t > 0 for t in turns) or all(t < 0 for t in turns)):
        raise NonConvexInput("vertices do not bound a convex polygon")
    if turns[0] < 0:
        pts.reverse()
    # a star-shaped winding twice around would still turn consistently
    total = sum(_cross(pts[0], pts[i], pts[i + 1]) for i in range(1, len(pts) - 1))
    angle_sum_ok = _winds_once(pts)
    if total <= 0 or not angle_sum_ok:
        raise NonConvexInput("vertices do not bound a convex polygon")
    start = pts.index(min(pts))
    return tuple(pts[start:] + pts[:start])


def _winds_once(pts):
    # each edge direction must advance the polar angle; count half-plane flips
    n = len(pts)
    flips = 0
    for i in range(n):
        a = (pts[(i + 1) % n][0] - pts[i][0], pts[(i + 1) % n][1] - pts[i][1])
        b = (pts[(i + 2) % n][0] - pts[(i + 1) % n][0], pts[(i + 2) % n][1] - pts[(i + 1) % n][1])
        if (a[1] < 0 or (a[1] == 0 and a[0] > 0)) != (b[1] < 0 or (b[1] == 0 and b[0] > 0)):
            flips += 1
    return flips == 2


@dataclass(frozen=True)
class LatticePolygon:
    """Strictly convex lattice polygon with vertices in canonical order."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", _canonical_ccw(self.vertices))

    @classmethod
    def hull(cls, points):
        """Convex hull of lattice points (corners only)."""
        pts = sorted(set((int(p[0]), int(p[1])) for p in points))
        if len(pts) < 3:
            raise NonConvexInput("hull of fewer than 3 points")
        lower, upper = [], []
        for p in pts:
            while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
                lower.pop()
            lower.append(p)
        for p in reversed(pts):
            while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
                upper.pop()
            upper.append(p)
        ring = lower[:-1] + upper[:-1]
        if len(ring) < 3:
            raise NonConvexInput("points are collinear")
        return cls(tuple(ring))

    def transformed(self, matrix):
        (a, b), (c, d) = matrix
        return LatticePolygon.hull([(a * x + b * y, c * x + d * y) for x, y in self.vertices])

    def scaled(self, k):
        return LatticePolygon(tuple((k * x, k * y) for x, y in self.vertices))

    def to_dict(self):
        return {"vertices": [[p.x, p.y] for p in self.vertices]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(tuple(v) for v in data["vertices"]))


@dataclass(frozen=True)
class Side:
    tail: LatticePoint
    head: LatticePoint
    primitive_direction: LatticePoint
    primitive_outer_normal: LatticePoint
    lattice_length: int

    @property
    def is_horizontal(self):
        return self.primitive_direction.y == 0


def sides(P):
    """Sides in counterclockwise order, with primitive direction and outer normal."""
    out = []
    vs = P.vertices
    for i, tail in enumerate(vs):
        head = vs[(i + 1) % len(vs)]
        dx, dy = head.x - tail.x, head.y - tail.y
        g = gcd(dx, dy)
        m = LatticePoint(dx // g, dy // g)
        out.append(Side(tail, head, m, LatticePoint(m.y, -m.x), g))
    return out


def unit_triangle():
    return LatticePolygon(((0, 0), (1, 0), (0, 1)))


def kite(k, k2):
    """The kite with vertices (0,0), (k,±1), (k+k',0).

    For ``k = 0`` two of the defining points collapse onto a side and the
    convex hull (a triangle) is returned.
    """
    if not (isinstance(k, int) and isinstance(k2, int)) or k < 0 or k2 < k or k2 <= 0:
        raise InvalidKiteParameters(f"need 0 <= k <= k' and k' > 0, got ({k}, {k2})")
    return LatticePolygon.hull([(0, 0), (k, -1), (k + k2, 0), (k, 1)])


def height2_polygon(a, b):
    """Polygon (0,0), (a,1), (a+b,0), (0,-1) of the height-2 tacnode test."""
    return LatticePolygon.hull([(0, 0), (a, 1), (a + b, 0), (0, -1)])


def is_h_transverse(P):
    return all(abs(s.primitive_direction.y) <= 1 for s in sides(P))


def slice_interval(P, y):
    """Exact endpoints of the horizontal slice at height ``y`` or ``None``."""
    xs = []
    for s in sides(P):
        (x0, y0), (x1, y1) = s.tail, s.head
        if y0 == y1:
            if y0 == y:
                xs += [Fraction(x0), Fraction(x1)]
        elif min(y0, y1) <= y <= max(y0, y1):
            xs.append(Fraction(x0) + Fraction((y - y0) * (x1 - x0), y1 - y0))
    if not xs:
        return None
    return min(xs), max(xs)


def slices_are_lattice_intervals(P):
    """The slice form of h-transversality, used to cross-check the edge form."""
    ys = [p.y for p in P.vertices]
    for y in range(min(ys), max(ys) + 1):
        lo, hi = slice_interval(P, y)
        if lo.denominator != 1 or hi.denominator != 1:
            return False
    return True


def height(P):
    ys = [p.y for p in P.vertices]
    return max(ys) - min(ys)


def width(P):
    if not is_h_transverse(P):
        raise NotHTransverse("width is only defined for h-transverse polygons")
    ys = [p.y for p in P.vertices]
    best = 0
    for y in range(min(ys), max(ys) + 1):
        lo, hi = slice_interval(P, y)
        best = max(best, int(hi - lo))
    return best


def slice_widths(P):
    """Slice lengths at the integer heights min_y, ..., max_y."""
    if not is_h_transverse(P):
        raise NotHTransverse("slices are lattice intervals only for h-transverse polygons")
    ys = [p.y for p in P.vertices]
    return [int(hi - lo) for lo, hi in (slice_interval(P, y) for y in range(min(ys), max(ys) + 1))]


def _strictly_inside(P, pt):
    vs = P.vertices
    return all(_cross(vs[i], vs[(i + 1) % len(vs)], pt) > 0 for i in range(len(vs)))


def interior_lattice_points(P):
    xs = [p.x for p in P.vertices]
    ys = [p.y for p in P.vertices]
    return [
        LatticePoint(x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if _strictly_inside(P, (x, y))
    ]


def lattice_points(P):
    xs = [p.x for p in P.vertices]
    ys = [p.y for p in P.vertices]
    vs = P.vertices
    return [
        LatticePoint(x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if all(_cross(vs[i], vs[(i + 1) % len(vs)], (x, y)) >= 0 for i in range(len(vs)))
    ]


def h_transverse_coordinates(P):
    """A unimodular matrix ``U`` with ``U * P`` h-transverse, or ``None``.

    The new vertical coordinate is a primitive functional ``n`` with
    ``|<m_i, n>| <= 1`` for every primitive edge direction ``m_i``.  These
    functionals form a bounded polygon; its lattice points are enumerated
    inside the integer bounding box of its corners.
    """
    dirs = sorted({tuple(s.primitive_direction) for s in sides(P)})
    # corners of {n : |<m, n>| <= 1 for all m}
    corners = []
    for i, m1 in enumerate(dirs):
        for m2 in dirs[i + 1:]:
            det = m1[0] * m2[1] - m1[1] * m2[0]
            if det == 0:
                continue
            for s1 in (-1, 1):
                for s2 in (-1, 1):
                    nx = Fraction(s1 * m2[1] - s2 * m1[1], det)
                    ny = Fraction(s2 * m1[0] - s1 * m2[0], det)
                    if all(abs(m[0] * nx + m[1] * ny) <= 1 for m in dirs):
                        corners.append((nx, ny))
    if not corners:
        return None
    x_lo, x_hi = floor(min(c[0] for c in corners)), ceil(max(c[0] for c in corners))
    y_lo, y_hi = floor(min(c[1] for c in corners)), ceil(max(c[1] for c in corners))
    candidates = [
        (a, b)
        for a in range(x_lo, x_hi + 1)
        for b in range(y_lo, y_hi + 1)
        if (a, b) != (0, 0) and gcd(a, b) == 1 and all(abs(m[0] * a + m[1] * b) <= 1 for m in dirs)
    ]
    if not candidates:
        return None
    a, b = min(candidates, key=lambda n: ((n[0], n[1]) != (0, 1), abs(n[0]) + abs(n[1]), n))
    c, d = _complete_row(a, b)
    return ((c, d), (a, b))


def _complete_row(a, b):
    """Find (c, d) with c*b - d*a = 1, so [[c, d], [a, b]] has determinant 1."""
    # extended Euclid on (b, -a)
    def egcd(x, y):
        if y == 0:
            return (x, 1, 0) if x >= 0 else (-x, -1, 0)
        g, s, t = egcd(y, x % y)
        return g, t, s - (x // y) * t

    g, s, t = egcd(b, -a)
    assert g == 1
    return s, t


def apply_unimodular(U, P):
    (a, b), (c, d) = U
    if abs(a * d - b * c) != 1:
        raise ValueError("matrix is not unimodular")
    return P.transformed(U)


# -- tangency profiles -------------------------------------------------------


@dataclass(frozen=True)
class TangencyProfile:
    """Per-side multisets, stored as sorted tuples in canonical side order."""

    sides: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "sides", tuple(tuple(sorted(int(d) for d in s)) for s in self.sides)
        )
        for s in self.sides:
            if any(d <= 0 for d in s):
                raise ProfileMismatch("tangency orders must be positive")

    @property
    def size(self):
        """|d|, the total number of boundary points."""
        return sum(len(s) for s in self.sides)

    def to_dict(self):
        return {"sides": [{"tangencies": list(s)} for s in self.sides]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(tuple(s["tangencies"]) for s in data["sides"]))


def trivial_profile(P):
    return TangencyProfile(tuple((1,) * s.lattice_length for s in sides(P)))


def check_profile(P, profile):
    ss = sides(P)
    if len(profile.sides) != len(ss):
        raise ProfileMismatch(f"profile has {len(profile.sides)} sides, polygon has {len(ss)}")
    for i, (s, ds) in enumerate(zip(ss, profile.sides)):
        if sum(ds) != s.lattice_length:
            raise ProfileMismatch(
                f"side {i}: tangencies sum to {sum(ds)}, lattice length is {s.lattice_length}"
            )


def profile_valid_for_theorem(P, profile):
    if not is_h_transverse(P):
        raise NotHTransverse("profile check needs an h-transverse polygon")
    check_profile(P, profile)
    return all(s.is_horizontal or all(d == 1 for d in ds) for s, ds in zip(sides(P), profile.sides))


def dual_degree(P, profile=None):
    """Leg slopes d_{i,j} * n_i, side by side in canonical order."""
    if profile is None:
        profile = trivial_profile(P)
    check_profile(P, profile)
    out = []
    for s, ds in zip(sides(P), profile.sides):
        n = s.primitive_outer_normal
        out += [(d * n.x, d * n.y) for d in ds]
    return tuple(out)


def severi_dimension(profile, g):
    if g < 0:
        raise ValueError("genus must be non-negative")
    return profile.size + g - 1


def normal_sublattice_index(P):
    """Index of the lattice spanned by the outer normals (``None`` if infinite)."""
    normals = [s.primitive_outer_normal for s in sides(P)]
    g = 0
    for i, a in enumerate(normals):
        for b in normals[i + 1:]:
            g = gcd(g, a.x * b.y - a.y * b.x)
    return g if g else None


def normal_sublattice_index_smith(P):
    """The same index from the Smith normal form of the normal matrix."""
    diag = smith_diagonal([list(s.primitive_outer_normal) for s in sides(P)])
    if len(diag) < 2 or 0 in diag[:2]:
        return None
    return diag[0] * diag[1]


def monodromy_threshold(P):
    return 5 * max(s.primitive_direction.x ** 2 + s.primitive_direction.y ** 2 for s in sides(P))


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def hypothesis_report(P, profile=None, g=0, char=0):
    """Which theorem hypotheses hold for ``(P, profile, g)`` in characteristic ``char``.

    The monodromy check on ample classes only tests the boundary divisors
    (every side lattice length at least the threshold); it is flagged partial.
    """
    if not is_h_transverse(P):
        raise NotHTransverse("hypothesis report needs an h-transverse polygon")
    if char != 0 and not _is_prime(char):
        raise ValueError("characteristic must be 0 or a prime")
    if profile is None:
        profile = trivial_profile(P)
    w = width(P)
    interior = len(interior_lattice_points(P))
    threshold = monodromy_threshold(P)
    index = normal_sublattice_index(P)
    short_sides = [i for i, s in enumerate(sides(P)) if s.lattice_length < threshold]

    def verdict(failures):
        return {"holds": not failures, "violations": failures}

    main = []
    if not profile_valid_for_theorem(P, profile):
        main.append("profile is non-trivial on a non-horizontal side")
    if not (char == 0 or 2 * char > w):
        main.append(f"char {char} is not > w/2 = {Fraction(w, 2)}")
    if g < 0:
        main.append("negative genus")
    zariski = []
    if not (char == 0 or char > w):
        zariski.append(f"char {char} is not > w = {w}")
    if profile != trivial_profile(P):
        zariski.append("profile is not trivial")
    monodromy = []
    if char != 0:
        monodromy.append("char is not 0")
    if index != 1:
        monodromy.append(f"normal sublattice index is {index}, not 1")
    if short_sides:
        monodromy.append(
            f"sides {short_sides} have lattice length below the threshold {threshold}"
        )
    if not 0 <= g <= interior:
        monodromy.append(f"genus {g} outside 0..{interior}")
    return {
        "polygon": P.to_dict(),
        "profile": profile.to_dict(),
        "genus": g,
        "char": char,
        "h_transverse": True,
        "width": w,
        "height": height(P),
        "interior_points": interior,
        "severi_dimension": severi_dimension(profile, g),
        "normal_sublattice_index": index,
        "monodromy_threshold": threshold,
        "main_theorem": verdict(main),
        "zariski": verdict(zariski),
        "monodromy": dict(verdict(monodromy), ample_class_check="partial: boundary divisors only"),
    }


def polygon_of_degree(degree):
    """Polygon (up to translation) whose dual degree is the given multiset of leg slopes.

    Each leg slope ``(a, b)`` contributes the side vector ``(-b, a)``; the
    sides are chained by angle starting at the origin.
    """
    from math import atan2

    vecs = [(-b, a) for a, b in degree if (a, b) != (0, 0)]
    if sum(v[0] for v in vecs) or sum(v[1] for v in vecs):
        raise NonConvexInput("leg slopes do not sum to zero")
    vecs.sort(key=lambda v: atan2(v[1], v[0]))
    pts = [(0, 0)]
    for v in vecs[:-1]:
        pts.append((pts[-1][0] + v[0], pts[-1][1] + v[1]))
    return LatticePolygon.hull(pts)
