"""Floor-decomposed tropical curves through vertically stretched points.

With the points far apart vertically, every interpolating curve splits into
floors (one per unit strip of the polygon) joined by vertical elevators, and
each floor and each elevator passes through exactly one point.  The search
below enumerates that combinatorics directly: floor slots in the height
order of the points, elevator endpoints and weights subject to the
divergence of every floor, and then solves the curve exactly from the
points.  Every produced curve is checked for balancing, immersion, the width
bound and tropical general position.
"""

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice

from . import polygon as pg
from .errors import NonConvexInput, NotHTransverse, NotStretched, UnsupportedProfile
from .tropical import (
    Edge,
    Leg,
    ParametrizedTropicalCurve,
    CombinatorialType,
    Vertex,
    ZERO,
    frac_point,
    is_balanced,
    is_immersed,
    is_stable,
    local_dimension,
)


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple
    stretched: bool = False
    threshold: object = None

    def __post_init__(self):
        pts = tuple(frac_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")

    def to_dict(self):
        from .tropical import _fstr

        return {
            "points": [[_fstr(c) for c in p] for p in self.points],
            "stretched": self.stretched,
            "threshold": None if self.threshold is None else _fstr(self.threshold),
        }


@dataclass(frozen=True)
class CountReport:
    curves: tuple
    multiplicities: tuple
    total: int
    multiplicity_rule: str = "product over trivalent vertices of |det| of two adjacent slopes"

    def to_dict(self):
        return {
            "total": self.total,
            "curves": len(self.curves),
            "multiplicities": list(self.multiplicities),
            "multiplicity_rule": self.multiplicity_rule,
        }


# -- polygon data ----------------------------------------------------------------------


@dataclass(frozen=True)
class StripData:
    """Left/right leg slopes per unit strip and horizontal-side tangencies."""

    ymin: int
    h: int
    left: tuple  # a_L per strip: leg slope (-1, a_L)
    right: tuple  # a_R per strip: leg slope (1, a_R)
    bottom: tuple  # weights of legs (0, -d)
    top: tuple  # weights of legs (0, d)
    width: int


def strip_data(P, profile=None):
    if not pg.is_h_transverse(P):
        raise NotHTransverse("enumeration needs an h-transverse polygon")
    if profile is None:
        profile = pg.trivial_profile(P)
    if not pg.profile_valid_for_theorem(P, profile):
        raise UnsupportedProfile("profile must be trivial on non-horizontal sides")
    ys = [p.y for p in P.vertices]
    ymin, ymax = min(ys), max(ys)
    sl = [pg.slice_interval(P, y) for y in range(ymin, ymax + 1)]
    left = tuple(int(sl[j + 1][0] - sl[j][0]) for j in range(ymax - ymin))
    right = tuple(int(-(sl[j + 1][1] - sl[j][1])) for j in range(ymax - ymin))
    bottom, top = (), ()
    for s, ds in zip(pg.sides(P), profile.sides):
        if s.is_horizontal:
            if s.primitive_outer_normal.y < 0:
                bottom = tuple(ds)
            else:
                top = tuple(ds)
    return StripData(ymin, ymax - ymin, left, right, bottom, top, pg.width(P))


# -- configurations -------------------------------------------------------------------


def stretch_threshold(width, xs, slope_bound):
    """(w+1) * (horizontal diameter + travel budget), the budget being slope_bound * diameter."""
    diameter = max(xs) - min(xs) if xs else 0
    return (width + 1) * (diameter + 1 + slope_bound * (diameter + 1))


def _slope_bound(S):
    return max([abs(a) for a in S.left + S.right] + [0]) + 2 * S.width


def stretched_config(P, profile=None, g=0, seed=0):
    """Deterministic vertically stretched configuration of ``|d| + g - 1`` points."""
    if profile is None:
        profile = pg.trivial_profile(P)
    S = strip_data(P, profile)
    n = profile.size + g - 1
    rng = random.Random(seed)
    xs = list(range(n))
    rng.shuffle(xs)
    # a small seeded rational shift keeps x-coordinates generic across seeds
    xs = [Fraction(x) + Fraction(rng.randrange(1, 97), 97) for x in xs]
    T = stretch_threshold(S.width, xs, _slope_bound(S))
    gap = T + 1
    pts = tuple((x, gap * (i + 1)) for i, x in enumerate(xs))
    return PointConfiguration(pts, True, T)


def is_stretched(config, P, profile=None):
    S = strip_data(P, profile)
    xs = [p[0] for p in config.points]
    T = stretch_threshold(S.width, xs, _slope_bound(S))
    ys = sorted(p[1] for p in config.points)
    return all(b - a > T for a, b in zip(ys, ys[1:])), T


# -- floor diagrams ----------------------------------------------------------------------


def _floor_diagrams(S, g, assignment):
    """Elevator multisets ``(lo, hi, w)`` with lo = 0 / hi = h+1 for unbounded ends.

    ``assignment`` is a pair of permutations giving which left and right leg
    each floor (in height order) carries.
    """
    h = S.h
    perm_left, perm_right = assignment
    div = [-(S.left[perm_left[j]] + S.right[perm_right[j]]) for j in range(h)]
    n_bounded = g + h - 1
    if n_bounded < 0:
        return
    for down in _distribute(S.bottom, h):
        for up in _distribute(S.top, h):
            # net bounded outflow (up minus down) required at each floor
            need = [div[j] - sum(up[j]) + sum(down[j]) for j in range(h)]
            flows = []
            acc = 0
            ok = True
            for j in range(h - 1):
                acc += need[j]
                if acc <= 0:
                    ok = False  # disconnected or impossible
                flows.append(acc)
            if not ok or acc + need[h - 1] != 0:
                continue
            unbounded = [(0, j + 1, w) for j in range(h) for w in down[j]]
            unbounded += [(j + 1, h + 1, w) for j in range(h) for w in up[j]]
            for bounded in _bounded_elevators(flows, h, n_bounded):
                if _connected(h, bounded):
                    yield tuple(sorted(unbounded + bounded))


def _distribute(weights, h):
    """All ways to hand a multiset of weights to floors 0..h-1 (as lists per floor)."""
    items = sorted(Counter(weights).items())

    def rec(i):
        if i == len(items):
            yield [[] for _ in range(h)]
            return
        w, k = items[i]
        for rest in rec(i + 1):
            for comp in _compositions(k, h):
                yield [rest[j] + [w] * comp[j] for j in range(h)]

    yield from rec(0)


def _compositions(k, parts):
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for tail in _compositions(k - first, parts - 1):
            yield (first,) + tail


def _bounded_elevators(flows, h, count):
    """Multisets of bounded elevators (i, j, w), 1 <= i < j <= h, with given gap flows."""
    kinds = [(i, j) for i in range(1, h + 1) for j in range(i + 1, h + 1)]
    # gap k (between floor k and k+1) is crossed by (i, j) iff i <= k < j
    def rec(start, remaining, left):
        if left == 0:
            if all(r == 0 for r in remaining):
                yield []
            return
        for idx in range(start, len(kinds)):
            i, j = kinds[idx]
            cap = min(remaining[k - 1] for k in range(i, j))
            for w in range(1, cap + 1):
                nxt = list(remaining)
                for k in range(i, j):
                    nxt[k - 1] -= w
                # keep (kind, weight) non-decreasing to list multisets once
                for tail in rec_w(idx, w, nxt, left - 1):
                    yield [(i, j, w)] + tail

    def rec_w(idx, w_min, remaining, left):
        if left == 0:
            if all(r == 0 for r in remaining):
                yield []
            return
        for idx2 in range(idx, len(kinds)):
            i, j = kinds[idx2]
            cap = min(remaining[k - 1] for k in range(i, j))
            lo = w_min if idx2 == idx else 1
            for w in range(lo, cap + 1):
                nxt = list(remaining)
                for k in range(i, j):
                    nxt[k - 1] -= w
                for tail in rec_w(idx2, w, nxt, left - 1):
                    yield [(i, j, w)] + tail

    if h == 1:
        if count == 0:
            yield []
        return
    yield from rec(0, list(flows), count)


def _connected(h, bounded):
    parent = list(range(h + 1))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for i, j, _ in bounded:
        parent[find(i)] = find(j)
    return len({find(j) for j in range(1, h + 1)}) == 1


def _markings(diagram, floor_slots, n, h):
    """Assign elevator kinds to the non-floor slots, respecting the height order."""
    slots = [s for s in range(n) if s not in set(floor_slots)]
    gap = {s: sum(1 for f in floor_slots if f < s) for s in slots}
    counts = Counter(diagram)
    kinds = sorted(counts)

    def rec(k):
        if k == len(slots):
            yield []
            return
        s = slots[k]
        for kind in kinds:
            if counts[kind] == 0:
                continue
            lo, hi, _ = kind
            if not (lo <= gap[s] < hi):
                continue
            counts[kind] -= 1
            for tail in rec(k + 1):
                yield [(s, kind)] + tail
            counts[kind] += 1

    yield from rec(0)


# -- curve construction ------------------------------------------------------------------


def _build_curve(S, assignment, points, order, floor_slots, marking):
    """Solve the curve for one marked floor diagram; ``None`` if lengths fail."""
    h = S.h
    perm_left, perm_right = assignment
    floors = []  # per floor: mark index
    for j, slot in enumerate(floor_slots):
        floors.append(order[slot])
    elevators = [(order[s], kind) for s, kind in marking]
    attach = {j: [] for j in range(1, h + 1)}  # floor -> [(x, mark, +w for up / -w for down)]
    for mark, (lo, hi, w) in elevators:
        x = points[mark][0]
        if 1 <= lo <= h:
            attach[lo].append((x, mark, w))
        if 1 <= hi <= h:
            attach[hi].append((x, mark, -w))

    vertices, edges, legs = [], [], []
    lengths, positions = {}, {}
    vid = [0]
    eid = [0]
    lid = [len(points)]  # leg ids 0..n-1 are the contracted legs

    def new_vertex(pos):
        v = vid[0]
        vid[0] += 1
        vertices.append(Vertex(v, 0))
        positions[v] = pos
        return v

    def new_edge(a, b, slope, length):
        if length <= 0:
            raise _Infeasible
        e = eid[0]
        eid[0] += 1
        edges.append(Edge(e, a, b, slope))
        lengths[e] = length
        return e

    def new_leg(v, slope):
        legs.append(Leg(lid[0], v, slope))
        lid[0] += 1

    floor_vertex = {}  # (floor, mark of elevator) -> vertex id
    try:
        for j in range(1, h + 1):
            fmark = floors[j - 1]
            fx, fy = points[fmark]
            items = sorted(attach[j] + [(fx, fmark, 0)])
            xs = [it[0] for it in items]
            if len(set(xs)) != len(xs):
                raise _Infeasible
            a_left = S.left[perm_left[j - 1]]
            a_right = S.right[perm_right[j - 1]]
            slopes = [-a_left]
            for _, _, w in items:
                slopes.append(slopes[-1] - w)
            if slopes[-1] != a_right:
                raise _Infeasible
            # heights from the floor mark
            k0 = [it[1] for it in items].index(fmark)
            ys = [None] * len(items)
            ys[k0] = fy
            for k in range(k0 + 1, len(items)):
                ys[k] = ys[k - 1] + slopes[k] * (xs[k] - xs[k - 1])
            for k in range(k0 - 1, -1, -1):
                ys[k] = ys[k + 1] - slopes[k + 1] * (xs[k + 1] - xs[k])
            vs = []
            for (x, mark, w), y in zip(items, ys):
                v = new_vertex((x, y))
                vs.append(v)
                if w == 0:
                    legs.append(Leg(mark, v, ZERO, mark))
                else:
                    floor_vertex[(j, mark)] = v
            new_leg(vs[0], (-1, a_left))
            for k in range(len(vs) - 1):
                new_edge(vs[k], vs[k + 1], (1, slopes[k + 1]), xs[k + 1] - xs[k])
            new_leg(vs[-1], (1, a_right))
        for mark, (lo, hi, w) in elevators:
            x, y = points[mark]
            m = new_vertex((x, y))
            legs.append(Leg(mark, m, ZERO, mark))
            if lo == 0:
                new_leg(m, (0, -w))
            else:
                a = floor_vertex[(lo, mark)]
                new_edge(a, m, (0, w), (y - positions[a][1]) / w)
            if hi == h + 1:
                new_leg(m, (0, w))
            else:
                b = floor_vertex[(hi, mark)]
                new_edge(m, b, (0, w), (positions[b][1] - y) / w)
    except _Infeasible:
        return None
    T = CombinatorialType(tuple(vertices), tuple(edges), tuple(legs))
    return ParametrizedTropicalCurve(T, tuple(lengths.items()), tuple(positions.items()))


class _Infeasible(Exception):
    pass


def _assignments(S, mode):
    from itertools import permutations

    h = S.h
    ident = tuple(range(h))
    if mode == "ordered":
        return [(ident, ident)]
    seen = set()
    out = []
    for pl in permutations(range(h)):
        for pr in permutations(range(h)):
            key = (tuple(S.left[i] for i in pl), tuple(S.right[i] for i in pr))
            if key not in seen:
                seen.add(key)
                out.append((pl, pr))
    return out


def vertex_multiplicity_product(C):
    """Product over vertices with three non-contracted germs of |det(s1, s2)|."""
    total = 1
    for v in C.type.vertices:
        slopes = [g.slope for g in C.type.star(v.id) if g.slope != ZERO]
        if len(slopes) == 3:
            a, b = slopes[0], slopes[1]
            total *= abs(a[0] * b[1] - a[1] * b[0])
    return total


def enumerate_through_points(P, profile=None, g=0, config=None, *, check=True, leg_assignment="all"):
    """All floor-decomposed genus-``g`` curves of degree dual to ``P`` through ``config``."""
    if profile is None:
        profile = pg.trivial_profile(P)
    S = strip_data(P, profile)
    n = profile.size + g - 1
    if config is None:
        config = stretched_config(P, profile, g)
    if len(config.points) != n:
        raise ValueError(f"need {n} points, got {len(config.points)}")
    ok, _ = is_stretched(config, P, profile)
    if not ok:
        raise NotStretched("points are not vertically stretched")
    points = config.points
    order = sorted(range(n), key=lambda i: points[i][1])
    curves = []
    for assignment in _assignments(S, leg_assignment):
        for diagram in _floor_diagrams(S, g, assignment):
            if len(diagram) != n - S.h:
                continue
            for floor_slots in combinations(range(n), S.h):
                for marking in _markings(diagram, floor_slots, n, S.h):
                    C = _build_curve(S, assignment, points, order, floor_slots, marking)
                    if C is None:
                        continue
                    if check:
                        _check_enumerated(C, P, profile, g, S.width)
                    curves.append(C)
    curves.sort(key=_canonical_key)
    return curves


def _canonical_key(C):
    return (
        tuple((e.v, e.w, e.slope) for e in C.type.edges),
        tuple((l.v, l.slope) for l in C.type.legs),
        tuple(C.positions),
    )


def _check_enumerated(C, P, profile, g, w):
    from .tropical import is_dual_to

    problems = []
    if not is_balanced(C)[0]:
        problems.append("unbalanced")
    if not is_stable(C):
        problems.append("unstable")
    if not is_immersed(C):
        problems.append("not immersed")
    if C.genus != g:
        problems.append(f"genus {C.genus}")
    if not is_dual_to(C, P, profile):
        problems.append("wrong degree")
    if any(l.slope[0] not in (-1, 0, 1) for l in C.type.legs) or any(
        e.slope[0] not in (-1, 0, 1) for e in C.type.edges
    ):
        problems.append("not floor decomposed")
    for e in C.type.edges:
        if e.slope[0] == 0 and abs(e.slope[1]) > w:
            problems.append("width bound")
    if local_dimension(C) != 0:
        problems.append("not in general position")
    if problems:
        raise AssertionError(f"enumerated curve fails: {problems}")


def count_with_multiplicity(P, profile=None, g=0, config=None, **kw):
    if profile is not None and profile != pg.trivial_profile(P):
        raise UnsupportedProfile("multiplicities are validated for the trivial profile only")
    curves = enumerate_through_points(P, profile, g, config, **kw)
    mults = tuple(vertex_multiplicity_product(C) for C in curves)
    return CountReport(tuple(curves), mults, sum(mults))


def caporaso_harris_oracle(d, g):
    from .caporaso_harris import irreducible_severi_degree

    return irreducible_severi_degree(d, g)


# -- random instances ----------------------------------------------------------------------


def random_h_transverse_polygon(rng, max_width=8, max_height=3):
    """Random h-transverse polygon: convex left boundary, concave right boundary."""
    while True:
        h = rng.randint(1, max_height)
        left_steps = sorted(rng.randint(-3, 3) for _ in range(h))
        right_steps = sorted((rng.randint(-3, 3) for _ in range(h)), reverse=True)
        lo = [0]
        hi = [rng.randint(0, max_width)]
        for a, b in zip(left_steps, right_steps):
            lo.append(lo[-1] + a)
            hi.append(hi[-1] + b)
        widths = [r - l for l, r in zip(lo, hi)]
        if min(widths) < 0 or max(widths) > max_width or max(widths) == 0:
            continue
        pts = [(x, y) for y in range(h + 1) for x in (lo[y], hi[y])]
        try:
            return pg.LatticePolygon.hull(pts)
        except NonConvexInput:
            continue


def random_floor_decomposed_curve(P, g=0, seed=0, max_tries=200, sample=40):
    """A floor decomposed curve of genus ``g`` dual to ``P`` through a stretched configuration.

    Floor diagrams, floor slots and markings are drawn at random from the
    first ``sample`` candidates of each stage; ``None`` after ``max_tries``
    failed draws.
    """
    rng = random.Random(seed)
    S = strip_data(P)
    n = pg.trivial_profile(P).size + g - 1
    config = stretched_config(P, None, g, seed)
    points = config.points
    order = sorted(range(n), key=lambda i: points[i][1])
    for _ in range(max_tries):
        pl = list(range(S.h))
        pr = list(range(S.h))
        rng.shuffle(pl)
        rng.shuffle(pr)
        diagrams = list(islice(_floor_diagrams(S, g, (tuple(pl), tuple(pr))), sample))
        diagrams = [d for d in diagrams if len(d) == n - S.h]
        if not diagrams:
            continue
        diagram = rng.choice(diagrams)
        floor_slots = tuple(sorted(rng.sample(range(n), S.h)))
        markings = list(islice(_markings(diagram, floor_slots, n, S.h), sample))
        if not markings:
            continue
        C = _build_curve(S, (tuple(pl), tuple(pr)), points, order, floor_slots, rng.choice(markings))
        if C is not None and C.genus == g:
            return C
    return None
