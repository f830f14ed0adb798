"""Genus-carrying local configurations and the midpoint (well-spacedness) filter.

Three kinds of subgraph carry genus invisibly: a flattened cycle (a cycle
mapped onto a segment with a single vertex over each end), an elliptic
component (a weight-one vertex, or a contracted loop) and a contracted
elliptic tail.  When such a piece sits inside a basic floor-to-floor
elevator, a realizable curve must place it in the middle: the two leftover
intervals of the elevator have equal length, unless the piece spans it.

The check is a necessary condition only, so reports say "no violation
found" and never claim realizability.
"""

from dataclasses import dataclass

from .errors import HypothesesNotMet, NotFloorDecomposed
from .floors import (
    BasicElevator,
    _basic_candidate,
    floor_vertices,
    is_floor_decomposed,
    vertical_pieces,
)
from .tropical import (
    CombinatorialType,
    Edge,
    Leg,
    ParametrizedTropicalCurve,
    _fstr,
    simple_cycles,
)

FLATTENED_CYCLE = "FlattenedCycle"
ELLIPTIC_COMPONENT = "EllipticComponent"
CONTRACTED_ELLIPTIC_TAIL = "ContractedEllipticTail"

IDENTITY = ((1, 0), (0, 1))
STANDARD_TRANSFORMS = (IDENTITY, ((-1, 0), (0, 1)), ((0, 1), (1, 0)))


@dataclass(frozen=True)
class SpecialSubgraph:
    kind: str
    vertices: frozenset
    edges: frozenset
    endpoints: tuple = ()

    def to_dict(self):
        return {
            "kind": self.kind,
            "vertices": sorted(self.vertices),
            "edges": sorted(self.edges),
            "endpoints": list(self.endpoints),
        }


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _flattened(C, cycle):
    T = C.type
    slopes = [T.edge_map[e].slope for e in cycle if not T.edge_map[e].contracted]
    if not slopes:
        return None
    d = slopes[0]
    if any(d[0] * s[1] - d[1] * s[0] for s in slopes):
        return None
    verts = set()
    for e in cycle:
        verts |= {T.edge_map[e].v, T.edge_map[e].w}
    vals = {v: _dot(d, C.position(v)) for v in verts}
    lo, hi = min(vals.values()), max(vals.values())
    bottom = [v for v in verts if vals[v] == lo]
    top = [v for v in verts if vals[v] == hi]
    if len(bottom) != 1 or len(top) != 1:
        return None
    return SpecialSubgraph(FLATTENED_CYCLE, frozenset(verts), frozenset(cycle), (bottom[0], top[0]))


def find_special_subgraphs(C):
    T = C.type
    found = []
    for cycle in simple_cycles(T):
        if len(cycle) == 1:
            continue  # a contracted loop: reported with its vertex below
        s = _flattened(C, cycle)
        if s is not None:
            found.append(s)
    loops = {}
    for e in T.edges:
        if e.is_loop:
            loops.setdefault(e.v, []).append(e.id)
    for v in T.vertices:
        if v.weight == 1 and not loops.get(v.id):
            found.append(SpecialSubgraph(ELLIPTIC_COMPONENT, frozenset({v.id}), frozenset()))
        elif v.weight == 0 and len(loops.get(v.id, [])) == 1:
            found.append(SpecialSubgraph(ELLIPTIC_COMPONENT, frozenset({v.id}), frozenset(loops[v.id])))
    for e in T.edges:
        if not e.contracted or e.is_loop:
            continue
        for outer, inner in ((e.v, e.w), (e.w, e.v)):
            if T.vertex_map[outer].weight != 0:
                continue
            star = T.star(inner)
            w = T.vertex_map[inner].weight
            if w == 1 and len(star) == 1:
                found.append(
                    SpecialSubgraph(CONTRACTED_ELLIPTIC_TAIL, frozenset({outer, inner}), frozenset({e.id}))
                )
            elif w == 0 and len(loops.get(inner, [])) == 1 and len(star) == 3:
                found.append(
                    SpecialSubgraph(
                        CONTRACTED_ELLIPTIC_TAIL,
                        frozenset({outer, inner}),
                        frozenset({e.id} | set(loops[inner])),
                    )
                )
    found.sort(key=lambda s: (s.kind, sorted(s.vertices), sorted(s.edges)))
    return found


# -- coordinates ------------------------------------------------------------------------


def _apply(A, p):
    return (A[0][0] * p[0] + A[0][1] * p[1], A[1][0] * p[0] + A[1][1] * p[1])


def transform_curve(C, A):
    """Image of ``C`` under an integral unimodular linear map ``A``."""
    T = C.type
    NT = CombinatorialType(
        T.vertices,
        tuple(Edge(e.id, e.v, e.w, _apply(A, e.slope)) for e in T.edges),
        tuple(Leg(l.id, l.v, _apply(A, l.slope), l.mark) for l in T.legs),
    )
    return ParametrizedTropicalCurve(NT, C.lengths, tuple((v, _apply(A, p)) for v, p in C.positions))


# -- the midpoint check --------------------------------------------------------------------


def _components(T, edge_ids):
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            a = parent[a]
        return a

    for eid in edge_ids:
        e = T.edge_map[eid]
        ra, rb = find(e.v), find(e.w)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for eid in edge_ids:
        groups.setdefault(find(T.edge_map[eid].v), set()).add(eid)
    return list(groups.values())


def _check_hypotheses(C, E, O):
    T = C.type
    if not (O.vertices <= E.vertices and O.edges <= E.edges):
        raise HypothesesNotMet("O is not contained in E")
    rest = set(E.edges) - set(O.edges)
    comps = _components(T, rest)
    if len(comps) > 2:
        raise HypothesesNotMet(f"E minus O has {len(comps)} components")
    for comp in comps:
        verts = set()
        for eid in comp:
            e = T.edge_map[eid]
            if e.contracted:
                raise HypothesesNotMet(f"edge {eid} of E minus O is contracted")
            verts |= {e.v, e.w}
        for v in verts - O.vertices:
            if T.vertex_map[v].weight:
                raise HypothesesNotMet(f"vertex {v} of E minus O has positive weight")
            ups = downs = 0
            for eid in comp:
                e = T.edge_map[eid]
                if v in (e.v, e.w):
                    y = e.slope[1] if e.v == v else -e.slope[1]
                    ups += y > 0
                    downs += y < 0
            if ups > 1 or downs > 1:
                raise HypothesesNotMet(f"E minus O is not injective at vertex {v}")


def elevator_in_coordinates(C, E, A=IDENTITY):
    """Re-validate ``E`` as a basic elevator after the coordinate change ``A``."""
    D = transform_curve(C, A) if A != IDENTITY else C
    cand = _basic_candidate(D, set(E.inner), set(E.edges), sorted({E.lower, E.upper}))
    if not isinstance(cand, BasicElevator):
        raise HypothesesNotMet(f"E is not a basic floor-to-floor elevator: {cand}")
    return D, cand


def midpoint_intervals(C, E, O, transform=None):
    """``(h(E), h(O), lower gap, upper gap)`` as exact heights in the given coordinates."""
    D, E2 = elevator_in_coordinates(C, E, transform or IDENTITY)
    _check_hypotheses(D, E2, O)
    y_lo, y_hi = D.position(E2.lower)[1], D.position(E2.upper)[1]
    ys = [D.position(v)[1] for v in O.vertices]
    o_lo, o_hi = min(ys), max(ys)
    return (y_lo, y_hi), (o_lo, o_hi), o_lo - y_lo, y_hi - o_hi


def wellspaced_check(C, E, O, transform=None):
    (y_lo, y_hi), (o_lo, o_hi), below, above = midpoint_intervals(C, E, O, transform)
    if (o_lo, o_hi) == (y_lo, y_hi):
        return True
    return below == above


def realizability_filter(C, transforms=STANDARD_TRANSFORMS):
    """All (elevator, special subgraph) pairs violating the midpoint condition."""
    if not is_floor_decomposed(C):
        raise NotFloorDecomposed("the filter expects a floor decomposed curve")
    specials = find_special_subgraphs(C)
    violations = []
    checked = []
    seen = set()
    for A in transforms:
        D = transform_curve(C, A) if A != IDENTITY else C
        cut = floor_vertices(D)
        for inner, edges, terminals in vertical_pieces(D.type, cut):
            E = _basic_candidate(D, inner, edges, terminals)
            if not isinstance(E, BasicElevator):
                continue
            for O in specials:
                if not (O.vertices <= E.vertices and O.edges <= E.edges):
                    continue
                key = (E.edges, O.vertices, O.edges)
                if key in seen:
                    continue
                try:
                    (y_lo, y_hi), (o_lo, o_hi), below, above = midpoint_intervals(D, E, O)
                except HypothesesNotMet:
                    continue
                seen.add(key)
                ok = (o_lo, o_hi) == (y_lo, y_hi) or below == above
                entry = {
                    "transform": [list(r) for r in A],
                    "E": E.to_dict(),
                    "O": O.to_dict(),
                    "lower_gap": _fstr(below),
                    "upper_gap": _fstr(above),
                }
                checked.append(entry)
                if not ok:
                    violations.append(entry)
    return {
        "violations": violations,
        "checked": len(checked),
        "pairs": checked,
        "verdict": "violations found" if violations else "no violation found",
    }
