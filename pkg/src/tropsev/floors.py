"""Floors, elevators and the width bound on elevator multiplicities.

A curve is floor decomposed when every edge and leg has x-slope 0 or +-1.
Non-contracted vertical pieces are elevators; what remains after cutting
the elevators out are floors (when they carry a non-contracted edge or leg).
"""

from dataclasses import dataclass
from fractions import Fraction

from . import polygon as pg
from .errors import (
    FunctionalContractsEverything,
    InvalidCurve,
    NotDual,
    NotFloorDecomposed,
    NotHTransverse,
)
from .tropical import (
    ZERO,
    ParametrizedTropicalCurve,
    is_balanced,
    is_dual_to,
    multiplicity_of_slope,
    simple_cycles,
)


def _type(C):
    return C.type if isinstance(C, ParametrizedTropicalCurve) else C


def is_floor_decomposed(C):
    T = _type(C)
    return all(e.slope[0] in (-1, 0, 1) for e in T.edges) and all(
        l.slope[0] in (-1, 0, 1) for l in T.legs
    )


def _require_fd(C):
    if not is_floor_decomposed(C):
        raise NotFloorDecomposed("some edge or leg has x-slope outside {0, 1, -1}")


@dataclass(frozen=True)
class Floor:
    vertices: frozenset
    edges: frozenset
    legs: frozenset


@dataclass(frozen=True)
class FloorDecomposition:
    elevator_edges: frozenset
    elevator_legs: frozenset
    floors: tuple
    detached: tuple  # vertex sets of components carrying no non-contracted edge or leg
    contracted_legs: frozenset

    def to_dict(self):
        return {
            "elevator_edges": sorted(self.elevator_edges),
            "elevator_legs": sorted(self.elevator_legs),
            "floors": [
                {"vertices": sorted(f.vertices), "edges": sorted(f.edges), "legs": sorted(f.legs)}
                for f in self.floors
            ],
            "detached": [sorted(d) for d in self.detached],
            "contracted_legs": sorted(self.contracted_legs),
        }


def _is_elevator(slope):
    return slope[0] == 0 and slope[1] != 0


def decompose(C):
    _require_fd(C)
    T = _type(C)
    el_edges = frozenset(e.id for e in T.edges if _is_elevator(e.slope))
    el_legs = frozenset(l.id for l in T.legs if _is_elevator(l.slope))
    parent = {v.id: v.id for v in T.vertices}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in T.edges:
        if e.id not in el_edges:
            a, b = find(e.v), find(e.w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for v in T.vertices:
        groups.setdefault(find(v.id), set()).add(v.id)
    floors, detached = [], []
    for members in sorted(groups.values(), key=min):
        edges = frozenset(e.id for e in T.edges if e.id not in el_edges and e.v in members)
        legs = frozenset(l.id for l in T.legs if l.v in members and l.id not in el_legs)
        carries = any(not T.edge_map[e].contracted for e in edges) or any(
            not T.leg_map[l].contracted for l in legs
        )
        if carries:
            floors.append(Floor(frozenset(members), edges, legs))
        else:
            detached.append(frozenset(members))
    floors.sort(key=lambda f: _floor_key(C, f))
    return FloorDecomposition(
        el_edges, el_legs, tuple(floors), tuple(detached), frozenset(l.id for l in T.contracted_legs)
    )


def _floor_key(C, f):
    if isinstance(C, ParametrizedTropicalCurve):
        return (min(C.position(v)[1] for v in f.vertices), min(f.vertices))
    return (min(f.vertices),)


def floor_vertices(C):
    """Vertices with a non-contracted germ of nonzero x-slope."""
    T = _type(C)
    return {v.id for v in T.vertices if any(g.slope[0] != 0 for g in T.star(v.id))}


# -- basic floor-to-floor elevators ----------------------------------------------------


@dataclass(frozen=True)
class BasicElevator:
    """Maximal vertical subgraph between two floor vertices.

    ``lower`` and ``upper`` are the endpoint vertices; ``inner`` the vertices
    strictly inside, ``edges`` every edge of the subgraph and ``legs`` the
    contracted legs at inner vertices.
    """

    lower: int
    upper: int
    inner: frozenset
    edges: frozenset
    legs: frozenset

    @property
    def vertices(self):
        return self.inner | {self.lower, self.upper}

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "inner": sorted(self.inner),
            "edges": sorted(self.edges),
            "legs": sorted(self.legs),
        }


def vertical_pieces(T, cut):
    """Components of x-slope-0 edges glued only at vertices outside ``cut``.

    Yields ``(inner vertices, edges, terminal vertices)``.
    """
    vertical = [e for e in T.edges if e.slope[0] == 0]
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            a = parent[a]
        return a

    # union edges sharing a vertex outside ``cut``
    by_vertex = {}
    for e in vertical:
        find(("e", e.id))
        for x in (e.v, e.w):
            if x not in cut:
                by_vertex.setdefault(x, []).append(e.id)
    for x, es in by_vertex.items():
        for a in es[1:]:
            ra, rb = find(("e", es[0])), find(("e", a))
            if ra != rb:
                parent[ra] = rb
    comps = {}
    for e in vertical:
        comps.setdefault(find(("e", e.id)), set()).add(e.id)
    for es in sorted(comps.values(), key=min):
        verts = set()
        for eid in es:
            e = T.edge_map[eid]
            verts |= {e.v, e.w}
        inner = {v for v in verts if v not in cut}
        terminals = sorted(v for v in verts if v in cut)
        yield frozenset(inner), frozenset(es), terminals


def _basic_candidate(C, inner, edges, terminals, slope_transform=None):
    """Check the three axioms; returns a BasicElevator or the failing reason."""
    T = C.type
    tr = slope_transform or (lambda s: s)
    if len(terminals) != 2:
        return f"{len(terminals)} endpoint vertices"
    for v in inner:
        for g in T.star(v):
            s = tr(g.slope)
            if g.kind == "leg" and s != ZERO:
                return "non-contracted leg inside"
            if s[0] != 0:
                return "non-vertical germ inside"
    pos = {v: C.position(v) for v in inner | set(terminals)}
    xs = {pos[v][0] for v in pos} if slope_transform is None else None
    a, b = terminals
    ya, yb = pos[a][1], pos[b][1]
    if slope_transform is None:
        if len(xs) != 1:
            return "image is not a vertical segment"
        if ya == yb:
            return "image is a point"
        lower, upper = (a, b) if ya < yb else (b, a)
        lo, hi = min(ya, yb), max(ya, yb)
        for v in inner:
            if not lo < pos[v][1] < hi:
                return "inner vertex over an endpoint"
    else:
        lower, upper = a, b
    for u in (lower, upper):
        ext = [tr(g.slope) for g in T.star(u) if not (g.kind == "edge" and g.id in edges)]
        ext = [s for s in ext if s != ZERO]
        if len(ext) != 2 or sorted(s[0] for s in ext) != [-1, 1]:
            return f"endpoint {u} does not have exactly two external slopes with x = +1, -1"
    legs = frozenset(l.id for l in T.legs if l.v in inner)
    return BasicElevator(lower, upper, inner, edges, legs)


def basic_floor_to_floor_elevators(C):
    _require_fd(C)
    T = C.type
    cut = floor_vertices(C)
    found = []
    for inner, edges, terminals in vertical_pieces(T, cut):
        if not any(not T.edge_map[e].contracted for e in edges):
            continue
        cand = _basic_candidate(C, inner, edges, terminals)
        if isinstance(cand, BasicElevator):
            found.append(cand)
    return found


# -- complexity and special points ---------------------------------------------------------


def _cycle_vertices(T, cycle):
    vs = set()
    for eid in cycle:
        e = T.edge_map[eid]
        vs |= {e.v, e.w}
    return vs


def elevator_in_cycle(T, E, cycle):
    """``E`` counts as contained in ``cycle`` when the cycle runs through it end to end."""
    if not (E.edges & cycle) or E.edges >= cycle:
        return False
    return {E.lower, E.upper} <= _cycle_vertices(T, cycle)


def vertical_complexity(C, cycle=None):
    """Basic elevators in ``cycle``; without a cycle, the minimum over all cycles (``None`` if none)."""
    _require_fd(C)
    T = C.type
    basics = basic_floor_to_floor_elevators(C)
    if cycle is not None:
        cycle = frozenset(cycle)
        return sum(1 for E in basics if elevator_in_cycle(T, E, cycle))
    cycles = simple_cycles(T)
    if not cycles:
        return None
    return min(sum(1 for E in basics if elevator_in_cycle(T, E, O)) for O in cycles)


def special_points(C):
    """Images of floor vertices (contracted legs on floors sit at such vertices)."""
    dec = decompose(C)
    pts = set()
    for f in dec.floors:
        for v in f.vertices:
            pts.add(C.position(v))
    return pts


# -- projections and the width bound --------------------------------------------------------


def _pair(m, s):
    return m[0] * s[0] + m[1] * s[1]


def fiber_count(C, m, t):
    """Preimages of the value ``t`` under ``m . h``, with stretching factors."""
    T = C.type
    t = Fraction(t)
    total = 0
    for e in T.edges:
        k = _pair(m, e.slope)
        if k == 0:
            continue
        a, b = _pair(m, C.position(e.v)), _pair(m, C.position(e.w))
        if min(a, b) < t < max(a, b):
            total += abs(k)
    for l in T.legs:
        k = _pair(m, l.slope)
        if k == 0:
            continue
        a = _pair(m, C.position(l.v))
        if (k > 0 and t > a) or (k < 0 and t < a):
            total += abs(k)
    return total


def generic_values(C, m):
    """Values between consecutive vertex images, plus one beyond each end."""
    crit = sorted({_pair(m, p) for _, p in C.positions})
    vals = [crit[0] - 1] + [(a + b) / 2 for a, b in zip(crit, crit[1:])] + [crit[-1] + 1]
    return [Fraction(v) for v in vals]


@dataclass(frozen=True)
class ProjectionCertificate:
    functional: tuple
    degree: int
    values: tuple
    fibers: tuple

    @property
    def verified(self):
        return all(f == self.degree for f in self.fibers)

    def to_dict(self):
        from .tropical import _fstr

        return {
            "functional": list(self.functional),
            "degree": self.degree,
            "values": [_fstr(v) for v in self.values],
            "fibers": list(self.fibers),
            "verified": self.verified,
        }


def projection_degree(C, m):
    """``d_m`` = sum of ``<m, s>`` over legs with positive pairing, with fiber verification."""
    if not is_balanced(C)[0]:
        raise InvalidCurve("projection degree needs a balanced curve")
    m = tuple(int(c) for c in m)
    T = C.type
    if all(_pair(m, s) == 0 for s in [e.slope for e in T.edges] + [l.slope for l in T.legs]):
        raise FunctionalContractsEverything(f"{m} contracts every edge and leg")
    d = sum(_pair(m, l.slope) for l in T.legs if _pair(m, l.slope) > 0)
    vals = generic_values(C, m)
    cert = ProjectionCertificate(m, d, tuple(vals), tuple(fiber_count(C, m, t) for t in vals))
    return d, cert


def inscribe_parallelogram(P):
    """Parallelogram with horizontal sides containing ``P`` and of the same width.

    Returns ``(parallelogram vertices, m)`` with ``m = (a, 1)`` the direction
    of its slanted sides; among optimal slants the one with smallest ``|a|``
    (then smallest ``a``) is returned.
    """
    if not pg.is_h_transverse(P):
        raise NotHTransverse("the polygon is not h-transverse")
    w = pg.width(P)
    ys = [p.y for p in P.vertices]
    ymin, ymax = min(ys), max(ys)
    bound = max(abs(p.x) for p in P.vertices) + w + 2
    best = None
    for a in sorted(range(-bound, bound + 1), key=lambda a: (abs(a), a)):
        vals = [p.x - a * p.y for p in P.vertices]
        spread = max(vals) - min(vals)
        if spread == w:
            best = (a, min(vals), max(vals))
            break
    if best is None:  # pragma: no cover - excluded by the h-transverse precondition
        raise NotHTransverse("no parallelogram of the polygon's width")
    a, lo, hi = best
    corners = [(lo + a * ymin, ymin), (hi + a * ymin, ymin), (hi + a * ymax, ymax), (lo + a * ymax, ymax)]
    if ymin == ymax:
        corners = corners[:2]
    return corners, (a, 1)


@dataclass(frozen=True)
class WidthCertificate:
    width: int
    functional: tuple
    projection: ProjectionCertificate
    elevators: tuple  # (kind, id, multiplicity, witness value, fiber there)

    def to_dict(self):
        from .tropical import _fstr

        return {
            "width": self.width,
            "functional": list(self.functional),
            "projection": self.projection.to_dict(),
            "elevators": [
                {"kind": k, "id": i, "multiplicity": w, "value": _fstr(t), "fiber": f}
                for k, i, w, t, f in self.elevators
            ],
        }


def elevator_multiplicity_bound_check(C, P, profile=None):
    """Every elevator multiplicity is at most the width; returns ``(ok, certificate)``.

    The certificate follows the argument: the slanted functional ``m`` of the
    inscribed parallelogram has projection degree equal to the width, and an
    elevator of multiplicity ``k`` alone contributes ``k`` to the fiber over
    any generic value inside its image.
    """
    _require_fd(C)
    if not is_balanced(C)[0]:
        raise InvalidCurve("the curve is not balanced")
    if not pg.is_h_transverse(P):
        raise NotHTransverse("the polygon is not h-transverse")
    if not is_dual_to(C, P, profile):
        raise NotDual("the curve's degree is not dual to the polygon")
    w = pg.width(P)
    _, m = inscribe_parallelogram(P)
    d, proj = projection_degree(C, m)
    T = C.type
    vals = proj.values
    witnesses = []
    ok = proj.verified and d == w
    for e in T.edges:
        if _is_elevator(e.slope):
            a, b = sorted((_pair(m, C.position(e.v)), _pair(m, C.position(e.w))))
            t = next(v for v in vals if a < v < b)
            k = multiplicity_of_slope(e.slope)
            witnesses.append(("edge", e.id, k, t, fiber_count(C, m, t)))
    for l in T.legs:
        if _is_elevator(l.slope):
            a = _pair(m, C.position(l.v))
            t = next(v for v in (vals if l.slope[1] > 0 else reversed(vals)) if (v > a if l.slope[1] > 0 else v < a))
            k = multiplicity_of_slope(l.slope)
            witnesses.append(("leg", l.id, k, t, fiber_count(C, m, t)))
    for _, _, k, _, f in witnesses:
        if k > w or k > f:
            ok = False
    return ok, WidthCertificate(w, m, proj, tuple(witnesses))
