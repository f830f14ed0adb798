"""Wall-crossing moves and the genus-reduction engine.

Every move maps a curve to a curve and is deterministic given its recorded
parameters, so a :class:`MoveCertificate` can be replayed from its initial
curve.  Motions inside a stratum use :class:`~tropsev.tropical.LinearModel`:
with all but one mark fixed, the constrained locus is a segment (or a ray),
and walls are reached exactly where some edge length drops to zero.

The engine follows the degeneration argument for floor decomposed curves:

* :func:`stretch_points` spreads the marks vertically by block translations
  of floors, without changing the combinatorial type;
* :func:`reduce_to_two_elevators` frees the mark on an elevator of a cycle
  of least vertical complexity and slides that elevator sideways until it
  meets the next elevator of the cycle.  When the configuration found is not
  yet terminal, the elevator is rerouted so that the cycle loses one basic
  elevator, re-marked, and the search restarts;
* :func:`genus_reduction_step` turns the terminal configuration into a ray
  along which a contracted edge, loop or elliptic tail grows without bound,
  and removes it, dropping the genus by one.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import polygon as pg
from .errors import (
    CharacteristicGate,
    HypothesesNotMet,
    InvalidCurve,
    InvalidPairing,
    NoFreedom,
    NotFlattenedCycleWall,
    NotFourValent,
    NotOnWall,
    NotWeightOneVertex,
    SearchExhausted,
    UnboundedMove,
)
from .floors import (
    BasicElevator,
    _basic_candidate,
    basic_floor_to_floor_elevators,
    decompose,
    elevator_in_cycle,
    floor_vertices,
    is_floor_decomposed,
    vertical_pieces,
)
from .linalg import nullspace
from .realizability import find_special_subgraphs, realizability_filter
from .tropical import (
    ZERO,
    CombinatorialType,
    Edge,
    Leg,
    LinearModel,
    ParametrizedTropicalCurve,
    Vertex,
    _fstr,
    add,
    contract_edges,
    is_balanced,
    is_stable,
    local_dimension,
    multiplicity_of_slope,
    remove_edge,
    remove_leg,
    remove_vertex,
    simple_cycles,
    smooth_vertex,
    split_vertex,
)

_NUMERIC = {"amount", "dy", "y"}


# -- moves and certificates ---------------------------------------------------------------


@dataclass
class Move:
    kind: str
    params: dict = field(default_factory=dict)

    def to_dict(self):
        out = {}
        for k, v in self.params.items():
            out[k] = _fstr(v) if k in _NUMERIC else _jsonable(v)
        return {"kind": self.kind, "params": out}

    @classmethod
    def from_dict(cls, data):
        params = {}
        for k, v in data["params"].items():
            params[k] = Fraction(v) if k in _NUMERIC else _tupled(v)
        return cls(data["kind"], params)


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return _fstr(v)
    return v


def _tupled(v):
    if isinstance(v, list):
        return tuple(_tupled(x) for x in v)
    return v


def type_dict(T):
    return {
        "vertices": [[v.id, v.weight] for v in T.vertices],
        "edges": [[e.id, e.v, e.w, list(e.slope)] for e in T.edges],
        "legs": [[l.id, l.v, list(l.slope), l.mark] for l in T.legs],
    }


@dataclass
class MoveCertificate:
    initial: ParametrizedTropicalCurve
    steps: list = field(default_factory=list)  # (Move, type dict, evaluations)
    terminal: dict = field(default_factory=dict)
    threshold: object = None

    def record(self, move, C):
        self.steps.append((move, type_dict(C.type), [[_fstr(c) for c in p] for p in _evaluations(C)]))

    def to_dict(self):
        return {
            "initial": self.initial.to_dict(),
            "threshold": None if self.threshold is None else _fstr(self.threshold),
            "steps": [
                {"move": m.to_dict(), "type": t, "evaluations": ev} for m, t, ev in self.steps
            ],
            "terminal": self.terminal,
        }

    @classmethod
    def from_dict(cls, data):
        cert = cls(ParametrizedTropicalCurve.from_dict(data["initial"]))
        cert.threshold = None if data.get("threshold") is None else Fraction(data["threshold"])
        for s in data["steps"]:
            cert.steps.append((Move.from_dict(s["move"]), s["type"], s["evaluations"]))
        cert.terminal = data.get("terminal", {})
        return cert

    def replay(self):
        """Re-apply every move; returns the list of curves, raising on any mismatch."""
        C = self.initial
        curves = [C]
        for i, (move, recorded, evals) in enumerate(self.steps):
            C = apply_move(C, move)
            got = type_dict(C.type)
            if _normalize(got) != _normalize(recorded):
                raise AssertionError(f"replay diverges at step {i} ({move.kind})")
            if [[_fstr(c) for c in p] for p in _evaluations(C)] != evals:
                raise AssertionError(f"evaluations diverge at step {i} ({move.kind})")
            curves.append(C)
        return curves


def _normalize(td):
    return {k: [list(map(_tupled_list, x)) for x in v] for k, v in td.items()}


def _tupled_list(x):
    return list(x) if isinstance(x, (list, tuple)) else x


def _evaluations(C):
    return [C.position(l.v) for l in C.type.contracted_legs]


# -- exact families ------------------------------------------------------------------------


def _curve_from_vector(model, x):
    """Curve at the point ``x`` of the model; zero-length edges are contracted."""
    T = model.T
    zero = [e.id for e in T.edges if x[model.edge_index[e.id]] == 0]
    if any(x[model.edge_index[e.id]] < 0 for e in T.edges):
        raise InvalidCurve("negative edge length")
    positions = {v.id: model.position_at(v.id, x) for v in T.vertices}
    if not zero:
        return ParametrizedTropicalCurve(
            T, tuple(model.lengths_at(x).items()), tuple(positions.items())
        )
    for eid in zero:
        e = T.edge_map[eid]
        if positions[e.v] != positions[e.w]:
            raise InvalidCurve("a zero-length edge joins distinct points")
    NT = contract_edges(T, zero)
    lengths = tuple((e.id, x[model.edge_index[e.id]]) for e in NT.edges)
    return ParametrizedTropicalCurve(NT, lengths, tuple((v.id, positions[v.id]) for v in NT.vertices))


def _midpoint_row(model, pair):
    lo, hi, ob, ot = pair
    row = [Fraction(0)] * model.n
    for v, c in ((ob, 1), (lo, -1), (hi, -1), (ot, 1)):
        for k, a in model.pos[v][1].items():
            row[k] += c * a
    return row


def midpoint_pairs(C):
    """``(E lower, E upper, O bottom, O top)`` for special pieces inside basic elevators.

    Only pairs where the piece does not span the whole elevator contribute a
    constraint; those are exactly the pairs the midpoint condition acts on.
    """
    T = C.type
    specials = find_special_subgraphs(C)
    if not specials:
        return []
    out = []
    cut = floor_vertices(C)
    for inner, edges, terminals in vertical_pieces(T, cut):
        E = _basic_candidate(C, inner, edges, terminals)
        if not isinstance(E, BasicElevator):
            continue
        for O in specials:
            if not (O.vertices <= E.vertices and O.edges <= E.edges):
                continue
            ob = min(O.vertices, key=lambda v: (C.position(v)[1], v))
            ot = max(O.vertices, key=lambda v: (C.position(v)[1], -v))
            if (C.position(ob)[1], C.position(ot)[1]) == (C.position(E.lower)[1], C.position(E.upper)[1]):
                continue
            out.append((E.lower, E.upper, ob, ot))
    return out


def _rows(model, pairs):
    rows = model.cycle_rows + model.mark_rows(model.T.marks)
    return rows + [_midpoint_row(model, p) for p in pairs]


def family_basis(C, pairs=None):
    model = LinearModel(C.type)
    if pairs is None:
        pairs = midpoint_pairs(C)
    return model, nullspace(_rows(model, pairs), model.n)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _wall_distance(model, x, d, skip=()):
    best, hit = None, []
    for e in model.T.edges:
        if e.id in skip:
            continue
        i = model.edge_index[e.id]
        if d[i] < 0:
            t = x[i] / -d[i]
            if best is None or t < best:
                best, hit = t, [e.id]
            elif t == best:
                hit.append(e.id)
    return best, hit


def _direction(C, vertex, axis, pairs=None):
    model, basis = family_basis(C, pairs)
    if len(basis) != 1:
        raise NoFreedom(f"the constrained family has dimension {len(basis)}, expected 1")
    d = basis[0]
    rate = model.evaluate_form(model.pos[vertex][axis], d)
    if rate == 0:
        raise NoFreedom(f"vertex {vertex} does not move along the family")
    return model, [c / rate for c in d]


def _translate(C, vertex, axis, amount, pairs=None):
    model, d = _direction(C, vertex, axis, pairs)
    x = model.vector_of(C)
    x1 = [a + amount * b for a, b in zip(x, d)]
    return _curve_from_vector(model, x1)


def probe_translation(C, vertex, axis, sign, pairs=None):
    """Distance to the first wall when ``vertex`` moves with unit speed along ``axis``.

    Returns ``(distance, edges reaching length zero)``; raises
    :class:`UnboundedMove` carrying the ray when there is no wall.
    """
    model, d = _direction(C, vertex, axis, pairs)
    if sign < 0:
        d = [-c for c in d]
    x = model.vector_of(C)
    t, hit = _wall_distance(model, x, d)
    if t is None:
        raise UnboundedMove(
            "no wall in this direction",
            ray={"base": C.to_dict(), "direction": [_fstr(c) for c in d]},
        )
    return t, hit


def translate_within_stratum(C, vertex, axis=0, sign=1, pairs=None):
    """Move ``vertex`` along ``axis`` (0 = x, 1 = y) until the first wall.

    All marks present on ``C`` stay fixed.  Returns ``(curve at the wall,
    descriptor)``; the wall curve has the zero-length edges contracted.
    """
    t, hit = probe_translation(C, vertex, axis, sign, pairs)
    kind = "TranslateElevator" if axis == 0 else "TranslateFloor"
    move = Move(kind, {"vertex": vertex, "axis": axis, "amount": sign * t})
    W = apply_move(C, move)
    return W, {"distance": t, "contracted_edges": hit, "move": move}


def _split_type(T, splits):
    new_edges = []
    for v, moving in splits:
        if T.valence(v) != 4:
            raise NotFourValent(f"vertex {v} has valence {T.valence(v)}")
        star = {g.key for g in T.star(v)}
        moving = {tuple(k) for k in moving}
        if len(moving) != 2 or not moving <= star:
            raise InvalidPairing(f"pairing {sorted(moving)} is not two germs of vertex {v}")
        T, _, ne = split_vertex(T, v, moving)
        new_edges.append(ne)
    return T, new_edges


def _split_and_step(C, splits, amount=None, pairs=(), fraction=Fraction(1, 2)):
    """Split 4-valent vertices and step into the new stratum.

    The family direction is normalized so the first new edge grows with unit
    speed; every new edge must grow.  Without an explicit ``amount`` the step
    goes ``fraction`` of the way to the next wall (or 1 along a ray).
    """
    T, new_edges = _split_type(C.type, splits)
    model = LinearModel(T)
    lengths = dict(C.length_map)
    for ne in new_edges:
        lengths[ne] = Fraction(0)
    x0 = model.vector(lengths, C.position(model.root))
    basis = nullspace(_rows(model, list(pairs)), model.n)
    idx = [model.edge_index[e] for e in new_edges]
    if len(basis) != 1:
        # contracted new edges leave the rest of the curve rigid: use the
        # direction that only grows them when it is the unique one moving them
        grow = [b for b in basis if any(b[i] for i in idx)]
        if len(grow) != 1:
            raise NoFreedom(f"split family has dimension {len(basis)}")
        basis = grow
    d = basis[0]
    if d[idx[0]] == 0:
        raise InvalidPairing("the split is not reached by the constrained family")
    d = [c / d[idx[0]] for c in d]
    if any(d[i] <= 0 for i in idx):
        raise InvalidPairing("the split would shrink a new edge")
    t_max, _ = _wall_distance(model, x0, d, skip=set(new_edges))
    if amount is None:
        amount = Fraction(1) if t_max is None else t_max * fraction
    elif t_max is not None and amount >= t_max:
        raise InvalidPairing("step overshoots the next wall")
    x1 = [a + amount * b for a, b in zip(x0, d)]
    return _curve_from_vector(model, x1), new_edges, amount


def split_four_valent(T, v, pairing):
    """Split ``v`` so that the two germs in ``pairing`` move to a new vertex."""
    if isinstance(T, ParametrizedTropicalCurve):
        T = T.type
    NT, _ = _split_type(T, [(v, pairing)])
    return NT


def pairings(T, v):
    """The three ways to split the star of a 4-valent vertex into two pairs."""
    star = sorted(g.key for g in T.star(v))
    if len(star) != 4:
        raise NotFourValent(f"vertex {v} has valence {len(star)}")
    a = star[0]
    return [(a, b) for b in star[1:]]


def cross_simple_wall(C, vertex, pairing, amount=None):
    """Leave a simple wall into the adjacent nice stratum given by ``pairing``."""
    if C.type.valence(vertex) != 4:
        raise NotOnWall(f"vertex {vertex} is not 4-valent")
    move = Move("CrossSimpleWall", {"splits": ((vertex, tuple(sorted(pairing))),)})
    D, _, amount = _split_and_step(C, move.params["splits"], amount)
    move.params["amount"] = amount
    return D, move


# -- applying moves --------------------------------------------------------------------------


def apply_move(C, move):
    k, p = move.kind, move.params
    if k in ("TranslateElevator", "TranslateFloor", "SlideVertex", "ShrinkFlattenedCycle"):
        return _translate(C, p["vertex"], p["axis"], p["amount"], p.get("pairs"))
    if k in ("CrossSimpleWall", "SplitFourValent", "FlattenedCycleSplit"):
        D, _, _ = _split_and_step(C, p["splits"], p["amount"], p.get("pairs", ()))
        return D
    if k == "FreeMark":
        return _free_mark(C, p["mark"])
    if k == "AddMark":
        return _add_mark(C, p["edge"], p["y"], p["mark"])
    if k == "StretchBlock":
        return _stretch_block(C, p["vertex"], p["dy"])
    if k == "SlideMark":
        return _slide_mark(C, p["mark"], p["dy"])
    if k == "DevelopContractedLoop":
        return develop_contracted_loop(C, p["vertex"], p["p"])
    if k == "DevelopEllipticTail":
        return develop_elliptic_tail(C, p["vertex"], p["p"])
    if k == "StretchToLimit":
        return C
    if k == "ForgetContractedEdge":
        return _forget(C, p["edge"])
    raise ValueError(f"unknown move kind {k}")


def _free_mark(C, mark):
    T = C.type
    leg = next(l for l in T.contracted_legs if l.mark == mark)
    D = remove_leg(C, leg.id)
    v = leg.v
    if D.type.valence(v) == 2 and D.type.vertex_map[v].weight == 0:
        D = smooth_vertex(D, v)
    return D


def _add_mark(C, edge_id, y, mark):
    """Subdivide a non-horizontal edge at height ``y`` and hang a contracted leg there."""
    T = C.type
    e = T.edge_map[edge_id]
    a = C.position(e.v)
    if e.slope[1] == 0:
        raise InvalidCurve("cannot place a mark by height on a horizontal edge")
    t = (Fraction(y) - a[1]) / e.slope[1]
    if not 0 < t < C.length(edge_id):
        raise InvalidCurve("mark height outside the edge")
    nv = T.next_vertex_id()
    ne = T.next_edge_id()
    pos = (a[0] + t * e.slope[0], Fraction(y))
    edges = [x for x in T.edges if x.id != edge_id] + [
        Edge(edge_id, e.v, nv, e.slope),
        Edge(ne, nv, e.w, e.slope),
    ]
    legs = list(T.legs) + [Leg(T.next_leg_id(), nv, ZERO, mark)]
    NT = CombinatorialType(tuple(T.vertices) + (Vertex(nv, 0),), tuple(edges), tuple(legs))
    lengths = dict(C.length_map)
    lengths[edge_id] = t
    lengths[ne] = C.length(edge_id) - t
    positions = dict(C.position_map)
    positions[nv] = pos
    return ParametrizedTropicalCurve(NT, tuple(lengths.items()), tuple(positions.items()))


def _forget(C, edge_id):
    """Remove a contracted edge, loop or elliptic tail and smooth what is left."""
    T = C.type
    e = T.edge_map[edge_id]
    if not e.contracted:
        raise InvalidCurve(f"edge {edge_id} is not contracted")
    D = remove_edge(C, edge_id)
    ends = {e.v, e.w}
    for v in sorted(ends):
        DT = D.type
        if v not in DT.vertex_map:
            continue
        if DT.valence(v) == 0:
            D = remove_vertex(D, v)
            continue
        if DT.vertex_map[v].weight == 0 and DT.valence(v) == 2:
            star = DT.star(v)
            if all(g.kind == "edge" for g in star) and add(star[0].slope, star[1].slope) == ZERO:
                D = smooth_vertex(D, v)
            elif any(g.kind == "leg" for g in star):
                D = _smooth_leg_vertex(D, v)
    return D


def _smooth_leg_vertex(C, v):
    """Merge a 2-valent weight-0 vertex carrying an edge and a collinear leg."""
    T = C.type
    star = T.star(v)
    eg = next(g for g in star if g.kind == "edge")
    lg = next(g for g in star if g.kind == "leg")
    if add(eg.slope, lg.slope) != ZERO:
        raise InvalidCurve(f"vertex {v} cannot be smoothed")
    other = T.germ_other_vertex(eg)
    legs = [Leg(l.id, other if l.id == lg.id else l.v, l.slope, l.mark) for l in T.legs]
    edges = [x for x in T.edges if x.id != eg.id]
    NT = CombinatorialType(tuple(x for x in T.vertices if x.id != v), tuple(edges), tuple(legs))
    lengths = tuple((k, x) for k, x in C.lengths if k != eg.id)
    return ParametrizedTropicalCurve(NT, lengths, tuple((k, p) for k, p in C.positions if k != v))


# -- characteristic gates ----------------------------------------------------------------------


def _is_power(k, p):
    if p < 2 or k < p:
        return False
    while k % p == 0:
        k //= p
    return k == 1


def _weight_one_multiplicity(C, v):
    T = C.type
    if v not in T.vertex_map or T.vertex_map[v].weight != 1 or T.valence(v) != 2:
        raise NotWeightOneVertex(f"vertex {v} is not a 2-valent weight-1 vertex")
    ks = [multiplicity_of_slope(g.slope) for g in T.star(v)]
    if ks[0] != ks[1]:
        raise NotWeightOneVertex("the two adjacent multiplicities differ")
    return ks[0]


def loop_allowed(kappa, p):
    return p == 0 or kappa % p != 0


def tail_allowed(kappa, p):
    return p > 0 and _is_power(kappa, p)


def develop_contracted_loop(C, v, p):
    """Replace the weight-1 vertex by a weight-0 vertex with a contracted loop."""
    kappa = _weight_one_multiplicity(C, v)
    if not loop_allowed(kappa, p):
        raise CharacteristicGate(f"characteristic {p} divides the multiplicity {kappa}")
    T = C.type
    ne = T.next_edge_id()
    NT = CombinatorialType(
        tuple(Vertex(x.id, 0 if x.id == v else x.weight) for x in T.vertices),
        tuple(T.edges) + (Edge(ne, v, v, ZERO),),
        T.legs,
    )
    return ParametrizedTropicalCurve(NT, C.lengths + ((ne, Fraction(1)),), C.positions)


def develop_elliptic_tail(C, v, p):
    """Move the genus onto a contracted edge ending at a new weight-1 leaf."""
    kappa = _weight_one_multiplicity(C, v)
    if not tail_allowed(kappa, p):
        raise CharacteristicGate(f"multiplicity {kappa} is not a power of the characteristic {p}")
    T = C.type
    ne, nv = T.next_edge_id(), T.next_vertex_id()
    NT = CombinatorialType(
        tuple(Vertex(x.id, 0 if x.id == v else x.weight) for x in T.vertices) + (Vertex(nv, 1),),
        tuple(T.edges) + (Edge(ne, v, nv, ZERO),),
        T.legs,
    )
    positions = C.positions + ((nv, C.position(v)),)
    return ParametrizedTropicalCurve(NT, C.lengths + ((ne, Fraction(1)),), positions)


# -- flattened-cycle walls --------------------------------------------------------------------


def flattened_cycle_crossing(C, bottom, top):
    """Far-side types at a wall whose two 4-valent vertices bound a flattened cycle.

    Returns one entry per way of splitting the endpoints.  Splitting only
    one endpoint while the other stays 4-valent is pruned (a flattened cycle
    with a single split end cannot sit in the middle of its elevator); all
    remaining entries are checked against the constrained family.
    """
    T = C.type
    for v in (bottom, top):
        if T.valence(v) != 4:
            raise NotFlattenedCycleWall(f"vertex {v} is not 4-valent")
    cyc = _vertical_cycle_between(T, bottom, top)
    if cyc is None:
        raise NotFlattenedCycleWall("no vertical cycle joins the two vertices")
    out = []
    options = {v: [None] + pairings(T, v) for v in (bottom, top)}
    for pb in options[bottom]:
        for pt in options[top]:
            if pb is None and pt is None:
                continue
            entry = {"bottom": pb, "top": pt}
            keeps = [
                pr is not None and set(k[1] for k in pr if k[0] == "edge") <= cyc
                and all(k[0] == "edge" for k in pr)
                for pr in (pb, pt)
            ]
            entry["keeps_cycle"] = all(keeps)
            if pb is None or pt is None:
                entry["admissible"] = False
                entry["reason"] = "one endpoint stays 4-valent: midpoint condition fails"
                out.append(entry)
                continue
            splits = ((bottom, pb), (top, pt))
            try:
                if entry["keeps_cycle"]:
                    D, new_edges, _ = _flattened_split(C, bottom, top, pb, pt)
                else:
                    D, new_edges, _ = _split_and_step(C, splits)
                    if realizability_filter(D)["violations"]:
                        raise InvalidPairing("midpoint condition violated")
                entry["admissible"] = True
                entry["type"] = type_dict(D.type)
            except (InvalidPairing, NoFreedom, InvalidCurve, HypothesesNotMet) as exc:
                entry["admissible"] = False
                entry["reason"] = str(exc)
            out.append(entry)
    return out


def _vertical_cycle_between(T, a, b):
    for cyc in simple_cycles(T):
        verts = set()
        for eid in cyc:
            e = T.edge_map[eid]
            verts |= {e.v, e.w}
        if {a, b} <= verts and all(T.edge_map[e].slope[0] == 0 for e in cyc):
            return set(cyc)
    return None


def _flattened_split(C, bottom, top, pb, pt, amount=None):
    """Split both ends keeping the cycle, constrained to the midpoint locus."""
    T = C.type
    NT, new_edges = _split_type(T, [(bottom, pb), (top, pt)])
    # new vertices carry the cycle; the old ones stay on the floors
    nb = NT.edge_map[new_edges[0]].w
    nt = NT.edge_map[new_edges[1]].w
    pairs = ((bottom, top, nb, nt),)
    D, ne, amount = _split_and_step(C, ((bottom, pb), (top, pt)), amount, pairs)
    return D, ne, amount


# -- stretching ------------------------------------------------------------------------------


def _floor_index(C):
    dec = decompose(C)
    index = {}
    for i, f in enumerate(dec.floors):
        for v in f.vertices:
            index[v] = i
    return dec, index


def _pieces(C):
    """Vertical pieces with their lower floor index (``None`` when unbounded below)."""
    T = C.type
    _, index = _floor_index(C)
    cut = set(index)
    out = []
    for inner, edges, terminals in vertical_pieces(T, cut):
        lows = []
        for eid in edges:
            e = T.edge_map[eid]
            # an edge pointing up from a floor vertex starts at that floor
            for v, sgn in ((e.v, 1), (e.w, -1)):
                if v in cut and sgn * e.slope[1] > 0:
                    lows.append(index[v])
        down_leg = any(l.v in inner and l.slope[1] < 0 for l in T.legs)
        lower = None if down_leg or not lows else min(lows)
        out.append((inner, edges, lower))
    # isolated mark vertices on unbounded elevators have no bounded edges
    return out, index


def _stretch_block(C, vertex, dy):
    pieces, index = _pieces(C)
    i = index[vertex]
    moving = {v for v, j in index.items() if j >= i}
    for inner, _, lower in pieces:
        if lower is not None and lower >= i:
            moving |= set(inner)
    return _move_vertices(C, moving, (0, Fraction(dy)))


def _move_vertices(C, moving, vec):
    T = C.type
    positions = dict(C.position_map)
    for v in moving:
        positions[v] = (positions[v][0] + vec[0], positions[v][1] + vec[1])
    lengths = {}
    for e in T.edges:
        a, b = positions[e.v], positions[e.w]
        if e.is_loop or e.contracted:
            lengths[e.id] = C.length(e.id)
            continue
        dx, dy = b[0] - a[0], b[1] - a[1]
        s = e.slope
        t = dx / s[0] if s[0] else dy / s[1]
        if (dx, dy) != (t * s[0], t * s[1]) or t <= 0:
            raise NoFreedom(f"edge {e.id} cannot follow the translation")
        lengths[e.id] = t
    return ParametrizedTropicalCurve(T, tuple(lengths.items()), tuple(positions.items()))


def _slide_mark(C, mark, dy):
    v = C.type.mark_vertex(mark)
    return _move_vertices(C, {v}, (0, Fraction(dy)))


def curve_width(C):
    return pg.width(pg.polygon_of_degree(C.type.degree))


def stretch_threshold_for(C):
    from .enumeration import _slope_bound, stretch_threshold, strip_data

    S = strip_data(pg.polygon_of_degree(C.type.degree))
    xs = [p[0] for p in _evaluations(C)]
    return stretch_threshold(S.width, xs, _slope_bound(S))


def is_vertically_stretched(C, threshold=None):
    if threshold is None:
        threshold = stretch_threshold_for(C)
    ys = sorted(p[1] for p in _evaluations(C))
    return all(b - a > threshold for a, b in zip(ys, ys[1:]))


def stretch_points(C, marks=None, threshold=None):
    """Spread the marks vertically without changing the combinatorial type.

    Floors are translated upward top-down (each block carries the floors
    above it and the elevators hanging from them), then elevator marks slide
    to evenly spaced heights.  Returns ``(curve, moves, threshold)``.
    """
    if threshold is None:
        threshold = stretch_threshold_for(C)
    if is_vertically_stretched(C, threshold):
        return C, [], threshold
    T = C.type
    dec, index = _floor_index(C)
    legs = T.contracted_legs
    by_y = sorted(legs, key=lambda l: (C.position(l.v)[1], l.mark))
    rank = {l.mark: r for r, l in enumerate(by_y)}
    floor_marks = {}
    for l in legs:
        if l.v in index:
            floor_marks.setdefault(index[l.v], l)
    if len(floor_marks) != len(dec.floors):
        raise NoFreedom("every floor needs a mark to be stretched")
    spread = max(
        max(C.position(v)[1] for v in f.vertices) - min(C.position(v)[1] for v in f.vertices)
        for f in dec.floors
    )
    fy = [C.position(floor_marks[i].v)[1] for i in range(len(dec.floors))]
    max_gap = max([b - a for a, b in zip(fy, fy[1:])] + [0])
    gap = threshold + 2 * spread + max_gap + 1
    base = C.position(by_y[0].v)[1]
    target = {l.mark: base + rank[l.mark] * gap for l in legs}
    shifts = [target[floor_marks[i].mark] - fy[i] for i in range(len(dec.floors))]
    moves = []
    D = C
    for i in reversed(range(len(dec.floors))):
        dy = shifts[i] - (shifts[i - 1] if i else 0)
        if dy < 0:
            raise NoFreedom("floors would have to move down")
        if dy:
            mv = Move("StretchBlock", {"vertex": floor_marks[i].v, "dy": dy})
            D = apply_move(D, mv)
            moves.append((mv, D))
    for l in legs:
        if l.v in index:
            continue
        dy = target[l.mark] - D.position(l.v)[1]
        if dy:
            mv = Move("SlideMark", {"mark": l.mark, "dy": dy})
            D = apply_move(D, mv)
            moves.append((mv, D))
    if type_dict(D.type) != type_dict(C.type):
        raise AssertionError("stretching changed the combinatorial type")
    if not is_vertically_stretched(D, threshold):
        raise NoFreedom("could not reach the stretch threshold")
    return D, moves, threshold


# -- validation of engine states ---------------------------------------------------------------


def validate_state(C, width, fixed=None):
    """Runtime checks applied to every intermediate curve; returns the filter report."""
    ok, bad = is_balanced(C)
    if not ok:
        raise AssertionError(f"unbalanced at vertex {bad}")
    if not is_stable(C):
        raise AssertionError("unstable intermediate curve")
    if not is_floor_decomposed(C):
        raise AssertionError("intermediate curve is not floor decomposed")
    for e in list(C.type.edges) + list(C.type.legs):
        if e.slope[0] == 0 and e.slope != ZERO and multiplicity_of_slope(e.slope) > width:
            raise AssertionError(f"elevator multiplicity exceeds the width {width}")
    if fixed is not None:
        ev = {l.mark: C.position(l.v) for l in C.type.contracted_legs}
        for m, p in fixed.items():
            if m in ev and ev[m] != p:
                raise AssertionError(f"mark {m} moved")
    report = realizability_filter(C)
    if report["violations"]:
        raise AssertionError("intermediate curve violates the midpoint condition")
    return report


# -- the engine --------------------------------------------------------------------------------


class _Run:
    """Applies moves, validates every state and records the certificate."""

    def __init__(self, C, threshold=None):
        self.C = C
        self.width = curve_width(C)
        self.cert = MoveCertificate(C, threshold=threshold)
        self.shrink_log = []
        validate_state(C, self.width)

    def fixed(self):
        return {l.mark: self.C.position(l.v) for l in self.C.type.contracted_legs}

    def apply(self, move, keep_marks=True):
        before = self.fixed()
        D = apply_move(self.C, move)
        marks = {l.mark for l in D.type.contracted_legs}
        expected = set(before)
        if move.kind == "FreeMark":
            expected.discard(move.params["mark"])
        elif move.kind == "AddMark":
            expected.add(move.params["mark"])
        if marks != expected:
            raise AssertionError(f"{move.kind} changed the set of marks")
        validate_state(D, self.width, before if keep_marks else None)
        self.C = D
        self.cert.record(move, D)
        return D

    def stretch(self):
        D, moves, thr = stretch_points(self.C, threshold=self.cert.threshold)
        self.cert.threshold = thr
        for mv, _ in moves:
            self.apply(mv, keep_marks=False)
        return D

    def translate(self, vertex, axis, amount, kind):
        return self.apply(Move(kind, {"vertex": vertex, "axis": axis, "amount": amount}))

    def split(self, splits, kind="CrossSimpleWall", pairs=(), fraction=Fraction(1, 2)):
        _, _, amount = _split_and_step(self.C, splits, None, pairs, fraction)
        params = {"splits": tuple((v, tuple(sorted(p))) for v, p in splits), "amount": amount}
        if pairs:
            params["pairs"] = tuple(pairs)
        return self.apply(Move(kind, params))


def _germ(T, v, kind, ident):
    for g in T.star(v):
        if g.kind == kind and g.id == ident:
            return g
    raise KeyError((v, kind, ident))


def _edge_ends(T, eid):
    e = T.edge_map[eid]
    return e.v, e.w


def _lower_upper(C, eid):
    a, b = _edge_ends(C.type, eid)
    return (a, b) if C.position(a)[1] < C.position(b)[1] else (b, a)


def _floor_germs(T, v):
    return [g for g in T.star(v) if g.slope[0] != 0]


def _choose_cycle(C):
    """Least vertical complexity; ties: highest top floor, then edge ids."""
    T = C.type
    _, index = _floor_index(C)
    basics = basic_floor_to_floor_elevators(C)
    best = None
    for O in simple_cycles(T):
        n = sum(1 for E in basics if elevator_in_cycle(T, E, O))
        floors_in = [index[v] for eid in O for v in _edge_ends(T, eid) if v in index
                     and T.edge_map[eid].slope[0] != 0]
        if not floors_in:
            continue
        key = (n, -max(floors_in), sorted(O))
        if best is None or key < best[0]:
            best = (key, O, max(floors_in))
    if best is None:
        raise SearchExhausted("no cycle through a floor")
    return best[1], best[2], best[0][0], basics


def _pass_pairing(T, f_edge, mover_vertex, mover_key):
    """At a wall where ``f_edge`` collapsed, the split letting the mover pass through."""
    e = T.edge_map[f_edge]
    other = e.w if e.v == mover_vertex else e.v
    far = [g for g in T.star(other) if g.id != f_edge or g.kind != "edge"]
    floor = [g for g in far if g.slope[0] != 0]
    if len(floor) != 1:
        raise SearchExhausted(f"unexpected vertex {other} on the floor")
    return (mover_key, floor[0].key)


def _walk_elevator(run, E, target_vertex_of, max_steps=200):
    """Slide the free elevator ``E`` sideways, passing special points, until the target wall.

    ``target_vertex_of(C)`` returns the floor vertex of ``E'`` on the lower
    floor of ``E``.  Returns the wall distance and the collapsed edges at the
    target, leaving ``run.C`` just before that wall.
    """
    for _ in range(max_steps):
        C = run.C
        T = C.type
        low, up = _lower_upper(C, E)
        c = target_vertex_of(C)
        sign = 1 if C.position(c)[0] > C.position(low)[0] else -1
        t, hit = probe_translation(C, low, 0, sign)
        target_edge = _floor_edge_between(T, low, c)
        if target_edge is not None and target_edge in hit:
            return t, hit, sign
        # record germ roles before the wall
        roles = []
        for f in hit:
            fv, fw = _edge_ends(T, f)
            if low in (fv, fw):
                roles.append((f, low, _germ(T, low, "edge", E).key))
            elif up in (fv, fw):
                roles.append((f, up, _germ(T, up, "edge", E).key))
            else:
                raise SearchExhausted(f"edge {f} collapsed away from the moving elevator")
        W = run.translate(low, 0, sign * t, "TranslateElevator")
        splits = []
        for f, mover_vertex, key in roles:
            pair = _pass_pairing(T, f, mover_vertex, key)
            v = _vertex_holding(W.type, key)
            splits.append((v, pair))
        run.split(splits)
    raise SearchExhausted("elevator walk did not reach its target")


def _vertex_holding(T, key):
    kind, ident, end = key
    if kind == "leg":
        return T.leg_map[ident].v
    e = T.edge_map[ident]
    return e.v if end == 0 else e.w


def _floor_edge_between(T, a, b):
    for g in T.star(a):
        if g.kind == "edge" and g.slope[0] != 0 and T.germ_other_vertex(g) == b:
            return g.id
    return None


def _cycle_after_free(T, O, merged):
    return frozenset(e for e in O if e in T.edge_map) | frozenset(merged)


def _setup(run, marks_order):
    """Pick the cycle, the elevator E to free, and E' with its data."""
    C = run.C
    T = C.type
    O, k, n_O, basics = _choose_cycle(C)
    _, index = _floor_index(C)
    cands = [
        B for B in basics
        if elevator_in_cycle(T, B, O) and index.get(B.upper) == k
    ]
    if not cands:
        raise SearchExhausted("no elevator of the cycle reaches its top floor")
    B = min(cands, key=lambda b: min(b.edges))
    if len(B.legs) != 1:
        raise SearchExhausted("the chosen elevator does not carry exactly one mark")
    leg = C.type.leg_map[next(iter(B.legs))]
    mark = leg.mark
    run.apply(Move("FreeMark", {"mark": mark}), keep_marks=True)
    marks_order.append(mark)
    E = min(B.edges)
    O2 = _cycle_after_free(run.C.type, O, [E])
    return O2, E, k, n_O


def _first_elevator_after(C, O, E):
    """Walk the cycle from the lower end of ``E`` along its floor to the next elevator."""
    T = C.type
    low, _ = _lower_upper(C, E)
    prev_edge, v = E, low
    for _ in range(len(T.edges) + 1):
        nxt = [g for g in T.star(v) if g.kind == "edge" and g.id in O and g.id != prev_edge]
        if len(nxt) != 1:
            raise SearchExhausted("cycle traversal failed")
        g = nxt[0]
        if g.slope[0] == 0 and g.slope != ZERO:
            return g.id, v, g.slope[1] > 0
        prev_edge, v = g.id, T.germ_other_vertex(g)
    raise SearchExhausted("cycle has no second elevator")


def _chain_beyond(C, e_prime, attach):
    """For ``E'`` leaving ``attach``: the mark vertex on it, ``E''`` and the far floor vertex."""
    T = C.type
    m = T.other_end(e_prime, attach)
    if not any(l.v == m and l.contracted for l in T.legs):
        raise SearchExhausted("E' does not end at a marked point")
    nxt = [g for g in T.star(m) if g.kind == "edge" and g.id != e_prime and g.slope[0] == 0 and g.slope != ZERO]
    if len(nxt) != 1:
        raise SearchExhausted("E' is not followed by a single elevator E''")
    e2 = nxt[0].id
    return m, e2, T.other_end(e2, m)


def _remark_free_elevator(run, mark):
    """Give the unmarked bounded elevator a mark in the middle of its largest free gap."""
    C = run.C
    T = C.type
    cut = floor_vertices(C)
    free = []
    for inner, edges, terminals in vertical_pieces(T, cut):
        if any(l.v in inner for l in T.contracted_legs):
            continue
        if any(l.v in inner for l in T.legs):
            continue
        free.append(edges)
    if len(free) != 1 or len(free[0]) != 1:
        raise SearchExhausted("expected exactly one unmarked single-edge elevator")
    eid = next(iter(free[0]))
    lo, hi = _lower_upper(C, eid)
    ylo, yhi = C.position(lo)[1], C.position(hi)[1]
    ys = sorted({ylo, yhi} | {p[1] for p in _evaluations(C) if ylo < p[1] < yhi})
    a, b = max(zip(ys, ys[1:]), key=lambda ab: (ab[1] - ab[0], -ab[0]))
    run.apply(Move("AddMark", {"edge": eid, "y": (a + b) / 2, "mark": mark}))
    if local_dimension(run.C) != 0:
        raise SearchExhausted("re-marked curve is not in general position")


def _reroute(run, E, e_prime, attach, going_up):
    """Complexity-lowering detour: merge ``E`` into ``E'``, slide past the mark, re-attach."""
    C = run.C
    T = C.type
    low, up = _lower_upper(C, E)
    u = _vertex_holding(T, _germ(T, low if not going_up else low, "edge", E).key)
    # at the wall E and E' meet at one 4-valent floor vertex
    kE = _germ(T, u, "edge", E).key
    kP = _germ(T, u, "edge", e_prime).key
    before = set(T.edge_map)
    run.split([(u, (kE, kP))])
    T = run.C.type
    gamma = next(iter(set(T.edge_map) - before))
    u1 = T.edge_map[gamma].w
    # slide u1 along the elevator line so that gamma grows
    for _ in range(4):
        C = run.C
        T = C.type
        model, d = _direction(C, u1, 1)
        rate = d[model.edge_index[gamma]]
        sign = 1 if rate > 0 else -1
        t, hit = probe_translation(C, u1, 1, sign)
        W = run.translate(u1, 1, sign * t, "SlideVertex")
        WT = W.type
        u1 = _vertex_holding(WT, _germ_key_any(WT, gamma, u1, T))
        star = WT.star(u1)
        legs = [g for g in star if g.kind == "leg" and g.slope == ZERO]
        if legs:
            # passing the mark: it stays with gamma, u1 continues with the elevators
            g_gamma = next(g for g in star if g.kind == "edge" and g.id == gamma)
            before = set(WT.edge_map)
            run.split([(u1, (legs[0].key, g_gamma.key))])
            T2 = run.C.type
            gamma = next(iter(set(T2.edge_map) - before))
            u1 = T2.edge_map[gamma].v
            continue
        # reached a floor: separate the two elevators there
        fl = sorted(g.key for g in _floor_germs(WT, u1))
        vert = [g for g in star if g.slope[0] == 0 and g.slope != ZERO]
        keep = next(g for g in vert if g.kind == "edge" and g.id == gamma)
        other = next(g for g in vert if g is not keep)
        last = None
        for fk in fl:
            try:
                return run.split([(u1, (other.key, fk))])
            except (InvalidPairing, NoFreedom) as exc:
                last = exc
        raise SearchExhausted(f"could not re-attach the elevator: {last}")
    raise SearchExhausted("rerouting did not reach a floor")


def _germ_key_any(WT, gamma, old_vertex, T):
    """Key of the ``gamma`` germ at the moving end after a wall contraction."""
    old = T.edge_map[gamma]
    end = 1 if old.w == old_vertex else 0
    return ("edge", gamma, end)


@dataclass
class ReductionResult:
    curve: ParametrizedTropicalCurve
    E: int
    E_prime: int
    case: str
    certificate: MoveCertificate
    freed_mark: object
    wall_distance: object
    sign: int


def reduce_to_two_elevators(C, marks=None, max_restarts=20):
    """Reach a curve with a free elevator ``E`` next to ``E'`` in case (1) or (2).

    ``marks`` optionally lists mark indices in the order they may be freed;
    the freed mark is recorded in the certificate.
    """
    if C.genus < 1:
        raise HypothesesNotMet("genus-0 curves have no cycle to reduce")
    run = _Run(C)
    run.stretch()
    return _reduce(run, max_restarts)


def _reduce(run, max_restarts=20):
    freed = []
    last_complexity = None
    for _ in range(max_restarts):
        O, E, k, n_O = _setup(run, freed)
        if last_complexity is not None and n_O >= last_complexity:
            raise SearchExhausted("vertical complexity did not decrease", explored=run.cert.to_dict())
        last_complexity = n_O
        C = run.C
        e_prime, attach, going_up = _first_elevator_after(C, O, E)

        def target(Cur, e_prime=e_prime):
            T = Cur.type
            a, b = _edge_ends(T, e_prime)
            return a if a in floor_vertices(Cur) else b

        t, hit, sign = _walk_elevator(run, E, target)
        C = run.C
        T = C.type
        attach = target(C)
        m, e2, far = _chain_beyond(C, e_prime, attach)
        _, index = _floor_index(C)
        wE = multiplicity_of_slope(T.edge_map[E].slope)
        wP = multiplicity_of_slope(T.edge_map[e_prime].slope)
        if not going_up:
            if wE == wP:
                return ReductionResult(C, E, e_prime, "case1", run.cert, freed[-1], t, sign), run
        elif index[far] == k:
            return ReductionResult(C, E, e_prime, "case2", run.cert, freed[-1], t, sign), run
        # not terminal: detour through E' and E'' lowers the vertical complexity
        low, _ = _lower_upper(C, E)
        run.translate(low, 0, sign * t, "TranslateElevator")
        _reroute(run, E, e_prime, attach, going_up)
        _remark_free_elevator(run, freed[-1])
        run.stretch()
    raise SearchExhausted("too many restarts", explored=run.cert.to_dict())


def genus_reduction_step(C, marks=None, p=0):
    """One genus drop; returns ``(curve of genus g - 1, certificate)``."""
    result, run = reduce_to_two_elevators(C, marks)
    return _finish_step(run, result, p)


def _finish_step(run, result, p):
    E, e_prime = result.E, result.E_prime
    C = run.C
    low, up = _lower_upper(C, E)
    W = run.translate(low, 0, result.sign * result.wall_distance, "TranslateElevator")
    T = W.type
    cert = run.cert
    if result.case == "case1":
        u = _vertex_holding(T, _germ(T, _lower_upper(W, E)[0], "edge", E).key)
        kE = _germ(T, u, "edge", E).key
        kP = _germ(T, u, "edge", e_prime).key
        before = set(T.edge_map)
        D = run.split([(u, (kE, kP))], kind="SplitFourValent")
        gamma = next(iter(set(D.type.edge_map) - before))
        cert.terminal = _ray_terminal(run, gamma, "contracted edge")
        return _forget_step(run, gamma), cert
    # case 2: E, E' and E'' form a flattened cycle between two 4-valent vertices
    bottom = _lower_upper(W, E)[0]
    top = _lower_upper(W, E)[1]
    pb = (_germ(T, bottom, "edge", E).key, _germ(T, bottom, "edge", e_prime).key)
    m, e2, _ = _chain_beyond_wall(W, e_prime, bottom)
    pt = (_germ(T, top, "edge", E).key, _germ(T, top, "edge", e2).key)
    before = set(T.edge_map)
    D, _, amount = _flattened_split(W, bottom, top, pb, pt)
    NT, new_edges = _split_type(T, [(bottom, pb), (top, pt)])
    nb, nt = NT.edge_map[new_edges[0]].w, NT.edge_map[new_edges[1]].w
    pairs = ((bottom, top, nb, nt),)
    run.apply(
        Move(
            "FlattenedCycleSplit",
            {"splits": ((bottom, tuple(sorted(pb))), (top, tuple(sorted(pt)))), "amount": amount, "pairs": pairs},
        )
    )
    stem_low, stem_up = new_edges
    kappa = multiplicity_of_slope(run.C.type.edge_map[stem_low].slope)
    _log_shrink(run, stem_low, stem_up, bottom, top)
    # shrink until an end of the cycle reaches the mark
    for _ in range(2 + len(run.C.type.contracted_legs)):
        C = run.C
        T = C.type
        t, hit = probe_translation(C, nb, 1, 1)
        W = run.translate(nb, 1, t, "ShrinkFlattenedCycle")
        _log_shrink(run, stem_low, stem_up, bottom, top)
        WT = W.type
        weight_one = [v.id for v in WT.vertices if v.weight == 1]
        if weight_one:
            u3 = weight_one[0]
            break
        # an end met the mark: the mark moves onto the stem
        mv = next(l for l in WT.contracted_legs if WT.valence(l.v) == 4)
        star = WT.star(mv.v)
        stem = next(
            g for g in star if g.kind == "edge" and g.id in (stem_low, stem_up)
        )
        # the end that moved keeps its cycle edges on the new vertex
        cyc = [g for g in star if g.kind == "edge" and g.id != stem.id]
        ends = {WT.germ_other_vertex(g) for g in cyc}
        moving = tuple(sorted(g.key for g in cyc))
        NT2, ne2 = _split_type(WT, [(mv.v, moving)])
        new_v = NT2.edge_map[ne2[0]].w
        other_end = next(iter(ends - {mv.v}), None)
        lo_v = (bottom, top)
        if stem.id == stem_low:
            pairs_now = ((lo_v[0], lo_v[1], new_v, other_end),)
            nb = new_v
        else:
            pairs_now = ((lo_v[0], lo_v[1], other_end, new_v),)
            nb = other_end
        run.split([(mv.v, moving)], kind="CrossSimpleWall", pairs=pairs_now)
        _log_shrink(run, stem_low, stem_up, bottom, top)
        if stem.id == stem_up:
            # the lower end keeps moving up: track it
            nb = other_end
    else:
        raise SearchExhausted("flattened cycle did not collapse")
    # gates at the weight-one vertex
    if loop_allowed(kappa, p):
        D = run.apply(Move("DevelopContractedLoop", {"vertex": u3, "p": p}))
        gamma = max(D.type.edge_map)
        cert.terminal = _ray_terminal(run, gamma, "contracted loop")
    elif tail_allowed(kappa, p):
        D = run.apply(Move("DevelopEllipticTail", {"vertex": u3, "p": p}))
        gamma = max(D.type.edge_map)
        cert.terminal = _ray_terminal(run, gamma, "contracted elliptic tail")
    else:
        raise CharacteristicGate(
            f"multiplicity {kappa}: characteristic {p} divides it and it is not a power of {p}"
        )
    cert.terminal["kappa"] = kappa
    cert.terminal["stem_lengths"] = [[_fstr(a), _fstr(b)] for a, b in run.shrink_log]
    return _forget_step(run, gamma), cert


def _chain_beyond_wall(W, e_prime, bottom):
    T = W.type
    m = T.other_end(e_prime, bottom)
    nxt = [g for g in T.star(m) if g.kind == "edge" and g.id != e_prime and g.slope[0] == 0 and g.slope != ZERO]
    if len(nxt) != 1:
        raise SearchExhausted("E' is not followed by E''")
    return m, nxt[0].id, T.other_end(nxt[0].id, m)


def _stem_length(C, eid, start):
    """Length from the floor vertex ``start`` along a stem, through marked points."""
    T = C.type
    total, v = Fraction(0), start
    slope = T.edge_map[eid].slope
    while True:
        total += C.length(eid)
        v = T.other_end(eid, v)
        star = T.star(v)
        marked = any(g.kind == "leg" and g.slope == ZERO for g in star)
        nxt = [g for g in star if g.kind == "edge" and g.id != eid and g.slope in (slope, (-slope[0], -slope[1]))]
        if not marked or len(star) != 3 or len(nxt) != 1:
            return total
        eid = nxt[0].id


def _log_shrink(run, stem_low, stem_up, bottom, top):
    C = run.C
    run.shrink_log.append((_stem_length(C, stem_low, bottom), _stem_length(C, stem_up, top)))


def _ray_terminal(run, gamma, kind):
    C = run.C
    model = LinearModel(C.type)
    d = [Fraction(0)] * model.n
    d[model.edge_index[gamma]] = Fraction(1)
    rows = _rows(model, midpoint_pairs(C))
    if any(_dot(r, d) for r in rows):
        raise SearchExhausted("the growing edge is not a ray of the constrained family")
    run.apply(Move("StretchToLimit", {"edge": gamma}))
    return {
        "kind": kind,
        "edge": gamma,
        "ray": {"base": C.to_dict(), "direction": {"edge": gamma, "rate": "1"}},
    }


def _forget_step(run, gamma):
    D = run.apply(Move("ForgetContractedEdge", {"edge": gamma}))
    run.cert.terminal["genus"] = D.genus
    run.cert.terminal["curve"] = D.to_dict()
    return D


def genus_reduction_path(C, marks=None, p=0, P=None):
    """Genus-reduction steps from ``C`` down to a rational curve."""
    # hypotheses that fail are only reported; the gates decide what happens
    report = None if P is None else pg.hypothesis_report(P, None, C.genus, p)
    certs = []
    D = C
    while D.genus > 0:
        D, cert = genus_reduction_step(D, marks, p)
        if report is not None:
            cert.terminal["hypotheses"] = report
        certs.append(cert)
    return D, certs
