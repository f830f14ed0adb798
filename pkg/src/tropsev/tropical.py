"""Parametrized tropical curves with exact rational geometry.

A :class:`CombinatorialType` is a graph with vertex weights and integer
slopes on edges and legs.  A :class:`ParametrizedTropicalCurve` adds positive
rational edge lengths and rational vertex positions.  Edge slopes are
oriented from ``v`` to ``w``; leg slopes point away from the attachment
vertex.  Contracted legs (slope zero) carry a ``mark`` index and come first
in leg order, sorted by mark, so :func:`evaluate` returns marks in order.

The moduli of a type are described by :class:`LinearModel`: the unknowns are
the bounded edge lengths plus the position of a root vertex, every vertex
position is an affine form in them, and each independent cycle imposes two
linear equations.
"""

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import (
    ContractedEdge,
    DisconnectedGraph,
    EvaluationMismatch,
    InvalidCurve,
)
from .linalg import rank

ZERO = (0, 0)


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def neg(a):
    return (-a[0], -a[1])


def scale(k, a):
    return (k * a[0], k * a[1])


def frac_point(p):
    return (Fraction(p[0]), Fraction(p[1]))


@dataclass(frozen=True, order=True)
class Vertex:
    id: int
    weight: int = 0


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    v: int
    w: int
    slope: tuple

    @property
    def is_loop(self):
        return self.v == self.w

    @property
    def contracted(self):
        return tuple(self.slope) == ZERO


@dataclass(frozen=True, order=True)
class Leg:
    id: int
    v: int
    slope: tuple
    mark: object = None

    @property
    def contracted(self):
        return tuple(self.slope) == ZERO


@dataclass(frozen=True)
class Germ:
    """One end of an edge, or a leg, seen from its vertex."""

    kind: str  # "edge" or "leg"
    id: int
    end: int  # 0 for the tail end of an edge, 1 for the head end; 0 for legs
    slope: tuple

    @property
    def key(self):
        return (self.kind, self.id, self.end)


def multiplicity_of_slope(slope):
    if tuple(slope) == ZERO:
        raise ContractedEdge("a contracted edge has no multiplicity")
    return gcd(abs(slope[0]), abs(slope[1]))


def _leg_order(leg):
    return (0, leg.mark, leg.id) if leg.contracted else (1, 0, leg.id)


@dataclass(frozen=True)
class CombinatorialType:
    vertices: tuple
    edges: tuple
    legs: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(
            self,
            "edges",
            tuple(sorted(Edge(e.id, e.v, e.w, tuple(int(c) for c in e.slope)) for e in self.edges)),
        )
        legs = [Leg(l.id, l.v, tuple(int(c) for c in l.slope), l.mark) for l in self.legs]
        for l in legs:
            if l.contracted and l.mark is None:
                raise InvalidCurve(f"contracted leg {l.id} needs a mark index")
        marks = [l.mark for l in legs if l.contracted]
        if len(set(marks)) != len(marks):
            raise InvalidCurve("repeated mark index")
        object.__setattr__(self, "legs", tuple(sorted(legs, key=_leg_order)))
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise InvalidCurve("repeated vertex id")
        vids = set(ids)
        for e in self.edges:
            if e.v not in vids or e.w not in vids:
                raise InvalidCurve(f"edge {e.id} has an unknown endpoint")
            if e.is_loop and not e.contracted:
                raise InvalidCurve(f"loop {e.id} must be contracted")
        for l in self.legs:
            if l.v not in vids:
                raise InvalidCurve(f"leg {l.id} has an unknown vertex")
        if any(v.weight < 0 for v in self.vertices):
            raise InvalidCurve("negative vertex weight")

    # -- lookups -------------------------------------------------------------

    @cached_property
    def vertex_map(self):
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_map(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def leg_map(self):
        return {l.id: l for l in self.legs}

    @cached_property
    def _stars(self):
        stars = defaultdict(list)
        for e in self.edges:
            stars[e.v].append(Germ("edge", e.id, 0, e.slope))
            stars[e.w].append(Germ("edge", e.id, 1, neg(e.slope)))
        for l in self.legs:
            stars[l.v].append(Germ("leg", l.id, 0, l.slope))
        return stars

    def star(self, v):
        return list(self._stars.get(v, []))

    def valence(self, v):
        return len(self._stars.get(v, []))

    def other_end(self, edge_id, v):
        e = self.edge_map[edge_id]
        return e.w if e.v == v else e.v

    def germ_other_vertex(self, germ):
        if germ.kind == "leg":
            return None
        e = self.edge_map[germ.id]
        return e.w if germ.end == 0 else e.v

    @property
    def contracted_legs(self):
        return tuple(l for l in self.legs if l.contracted)

    @property
    def marks(self):
        return tuple(l.mark for l in self.contracted_legs)

    def mark_vertex(self, mark):
        for l in self.legs:
            if l.contracted and l.mark == mark:
                return l.v
        raise KeyError(mark)

    def next_vertex_id(self):
        return max((v.id for v in self.vertices), default=-1) + 1

    def next_edge_id(self):
        return max((e.id for e in self.edges), default=-1) + 1

    def next_leg_id(self):
        return max((l.id for l in self.legs), default=-1) + 1

    # -- invariants ----------------------------------------------------------

    def components(self):
        parent = {v.id: v.id for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            parent[find(e.v)] = find(e.w)
        groups = defaultdict(list)
        for v in self.vertices:
            groups[find(v.id)].append(v.id)
        return sorted(groups.values())

    @property
    def first_betti(self):
        return len(self.edges) - len(self.vertices) + len(self.components())

    @property
    def genus(self):
        return genus(self)

    def balancing_defect(self):
        """First unbalanced vertex and its slope sum, or ``None``."""
        for v in self.vertices:
            total = ZERO
            for g in self.star(v.id):
                total = add(total, g.slope)
            if total != ZERO:
                return v.id, total
        return None

    @property
    def degree(self):
        return tuple(sorted(l.slope for l in self.legs if not l.contracted))


def genus(G):
    """1 - (b0 - b1) + total weight, for any object with vertices and edges."""
    chi = len(G.vertices) - len(G.edges)
    return 1 - chi + sum(v.weight for v in G.vertices)


@dataclass(frozen=True)
class ParametrizedTropicalCurve:
    type: CombinatorialType
    lengths: tuple  # ((edge id, Fraction), ...)
    positions: tuple  # ((vertex id, (Fraction, Fraction)), ...)

    def __post_init__(self):
        object.__setattr__(
            self, "lengths", tuple(sorted((int(k), Fraction(v)) for k, v in dict(self.lengths).items()))
        )
        object.__setattr__(
            self,
            "positions",
            tuple(sorted((int(k), frac_point(p)) for k, p in dict(self.positions).items())),
        )
        T = self.type
        L, P = self.length_map, self.position_map
        if set(L) != {e.id for e in T.edges}:
            raise InvalidCurve("lengths must be given for exactly the edges")
        if set(P) != {v.id for v in T.vertices}:
            raise InvalidCurve("positions must be given for exactly the vertices")
        for e in T.edges:
            if L[e.id] <= 0:
                raise InvalidCurve(f"edge {e.id} has non-positive length {L[e.id]}")
            if not e.is_loop:
                expect = add(P[e.v], scale(L[e.id], e.slope))
                if P[e.w] != expect:
                    raise InvalidCurve(f"edge {e.id} is incompatible with the vertex positions")

    @classmethod
    def from_parts(cls, vertices, edges, legs, lengths, positions):
        return cls(CombinatorialType(tuple(vertices), tuple(edges), tuple(legs)), lengths, positions)

    @cached_property
    def length_map(self):
        return dict(self.lengths)

    @cached_property
    def position_map(self):
        return dict(self.positions)

    def position(self, v):
        return self.position_map[v]

    def length(self, e):
        return self.length_map[e]

    @property
    def genus(self):
        return self.type.genus

    def translated(self, vec):
        vec = frac_point(vec)
        return ParametrizedTropicalCurve(
            self.type, self.lengths, tuple((k, add(p, vec)) for k, p in self.positions)
        )

    def to_dict(self):
        T = self.type
        return {
            "vertices": [
                {"id": v.id, "weight": v.weight, "pos": [_fstr(c) for c in self.position(v.id)]}
                for v in T.vertices
            ],
            "edges": [
                {"id": e.id, "v": e.v, "w": e.w, "length": _fstr(self.length(e.id)), "slope": list(e.slope)}
                for e in T.edges
            ],
            "legs": [
                dict({"id": l.id, "v": l.v, "slope": list(l.slope)}, **({"mark": l.mark} if l.mark is not None else {}))
                for l in T.legs
            ],
        }

    @classmethod
    def from_dict(cls, data):
        vertices = [Vertex(int(v["id"]), int(v.get("weight", 0))) for v in data["vertices"]]
        edges, lengths = [], {}
        for i, e in enumerate(data.get("edges", [])):
            eid = int(e.get("id", i))
            edges.append(Edge(eid, int(e["v"]), int(e["w"]), tuple(e["slope"])))
            lengths[eid] = Fraction(e["length"])
        legs = []
        for i, l in enumerate(data.get("legs", [])):
            legs.append(Leg(int(l.get("id", i)), int(l["v"]), tuple(l["slope"]), l.get("mark")))
        contracted = [l for l in legs if tuple(l.slope) == ZERO]
        if any(l.mark is None for l in contracted):
            legs = [
                Leg(l.id, l.v, l.slope, contracted.index(l) if tuple(l.slope) == ZERO and l.mark is None else l.mark)
                for l in legs
            ]
        positions = {int(v["id"]): tuple(Fraction(c) for c in v["pos"]) for v in data["vertices"]}
        return cls(CombinatorialType(tuple(vertices), tuple(edges), tuple(legs)), lengths, positions)


def _fstr(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- basic predicates ----------------------------------------------------------


def is_balanced(C):
    """``(True, None)`` or ``(False, vertex id)`` for the first violation."""
    T = C.type if isinstance(C, ParametrizedTropicalCurve) else C
    bad = T.balancing_defect()
    return (True, None) if bad is None else (False, bad[0])


def multiplicity(C, e):
    T = C.type if isinstance(C, ParametrizedTropicalCurve) else C
    obj = T.edge_map.get(e) if isinstance(e, int) else e
    return multiplicity_of_slope(obj.slope)


def is_stable(C):
    T = C.type if isinstance(C, ParametrizedTropicalCurve) else C
    for v in T.vertices:
        val = T.valence(v.id)
        if v.weight == 0 and val < 3:
            return False
        if v.weight == 1 and val < 1:
            return False
    return True


def degree(C):
    T = C.type if isinstance(C, ParametrizedTropicalCurve) else C
    return T.degree


def is_dual_to(C, P, profile=None):
    from .polygon import dual_degree

    return tuple(sorted(degree(C))) == tuple(sorted(dual_degree(P, profile)))


def evaluate(C):
    return [C.position(l.v) for l in C.type.contracted_legs]


def is_immersed(C):
    """No contracted bounded edges and no positively proportional germs at a vertex."""
    T = C.type if isinstance(C, ParametrizedTropicalCurve) else C
    if any(e.contracted for e in T.edges):
        return False
    for v in T.vertices:
        slopes = [g.slope for g in T.star(v.id) if g.slope != ZERO]
        for i, a in enumerate(slopes):
            for b in slopes[i + 1:]:
                if a[0] * b[1] - a[1] * b[0] == 0 and a[0] * b[0] + a[1] * b[1] > 0:
                    return False
    return True


def is_trivalent_weightless(T):
    return all(v.weight == 0 and T.valence(v.id) == 3 for v in T.vertices)


# -- linear model of a stratum ------------------------------------------------------


class LinearModel:
    """Affine coordinates on the moduli of a combinatorial type.

    Unknowns are the lengths of the edges (in id order) followed by the two
    coordinates of the root vertex.  ``pos[v]`` is a pair of sparse linear
    forms ``{unknown index: coefficient}``.
    """

    def __init__(self, T):
        if len(T.components()) != 1:
            raise DisconnectedGraph("the underlying graph must be connected")
        self.T = T
        self.edge_index = {e.id: i for i, e in enumerate(T.edges)}
        self.n = len(T.edges) + 2
        self.root = T.vertices[0].id
        rx, ry = self.n - 2, self.n - 1
        pos = {self.root: ({rx: Fraction(1)}, {ry: Fraction(1)})}
        tree = set()
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            for g in T.star(v):
                if g.kind != "edge":
                    continue
                w = T.germ_other_vertex(g)
                if w in pos:
                    continue
                i = self.edge_index[g.id]
                fx, fy = dict(pos[v][0]), dict(pos[v][1])
                if g.slope[0]:
                    fx[i] = fx.get(i, 0) + g.slope[0]
                if g.slope[1]:
                    fy[i] = fy.get(i, 0) + g.slope[1]
                pos[w] = (fx, fy)
                tree.add(g.id)
                queue.append(w)
        self.pos = pos
        self.tree = tree
        rows = []
        for e in T.edges:
            if e.id in tree or e.is_loop:
                continue
            i = self.edge_index[e.id]
            for c in (0, 1):
                row = [Fraction(0)] * self.n
                for k, a in pos[e.w][c].items():
                    row[k] += a
                for k, a in pos[e.v][c].items():
                    row[k] -= a
                row[i] -= e.slope[c]
                rows.append(row)
        self.cycle_rows = rows

    def form_row(self, form):
        row = [Fraction(0)] * self.n
        for k, a in form.items():
            row[k] += a
        return row

    def mark_rows(self, marks):
        """Rows fixing the listed mark indices (homogeneous part)."""
        rows = []
        for m in marks:
            v = self.T.mark_vertex(m)
            rows += [self.form_row(self.pos[v][0]), self.form_row(self.pos[v][1])]
        return rows

    def vector(self, lengths, root_position):
        x = [Fraction(0)] * self.n
        for eid, i in self.edge_index.items():
            x[i] = Fraction(lengths[eid])
        x[self.n - 2], x[self.n - 1] = frac_point(root_position)
        return x

    def vector_of(self, C):
        return self.vector(C.length_map, C.position(self.root))

    def evaluate_form(self, form, x):
        return sum((a * x[k] for k, a in form.items()), Fraction(0))

    def position_at(self, v, x):
        fx, fy = self.pos[v]
        return (self.evaluate_form(fx, x), self.evaluate_form(fy, x))

    def lengths_at(self, x):
        return {eid: x[i] for eid, i in self.edge_index.items()}

    def curve_at(self, x):
        return ParametrizedTropicalCurve(
            self.T,
            tuple(self.lengths_at(x).items()),
            tuple((v.id, self.position_at(v.id, x)) for v in self.T.vertices),
        )

    def satisfies_cycles(self, x):
        return all(sum(a * b for a, b in zip(row, x)) == 0 for row in self.cycle_rows)


def stratum_dimension(T):
    """``(actual, expected)``; ``expected`` is ``None`` when some weight is positive."""
    if isinstance(T, ParametrizedTropicalCurve):
        T = T.type
    model = LinearModel(T)
    actual = len(T.edges) + 2 - rank(model.cycle_rows, model.n)
    if any(v.weight for v in T.vertices):
        return actual, None
    return actual, len(T.edges) + 2 - 2 * T.first_betti


def classify_stratum(T):
    if isinstance(T, ParametrizedTropicalCurve):
        T = T.type
    actual, expected = stratum_dimension(T)
    kind = "Other"
    if expected is not None and actual == expected:
        valences = sorted(T.valence(v.id) for v in T.vertices)
        if all(x == 3 for x in valences):
            kind = "Nice"
        elif valences.count(4) == 1 and all(x == 3 for x in valences if x != 4):
            kind = "SimpleWall"
    return StratumClass(kind, actual, expected)


@dataclass(frozen=True)
class StratumClass:
    kind: str
    actual_dimension: int
    expected_dimension: object


def local_dimension(C, marks=None):
    """Dimension at ``C`` of the stratum cut out by fixing the given marks."""
    model = LinearModel(C.type)
    if marks is None:
        marks = C.type.marks
    rows = model.cycle_rows + model.mark_rows(marks)
    return model.n - rank(rows, model.n)


def general_position_check(C, points, n=None):
    """Does fixing the first ``k = len(points)`` marks cut the stratum to ``n - k``?

    ``n`` defaults to the stratum dimension with no marks fixed minus the
    number of contracted legs, which equals ``|d| + g - 1`` for the curves
    of this package.
    """
    marks = C.type.marks[: len(points)]
    got = evaluate(C)[: len(points)]
    for i, (a, b) in enumerate(zip(got, points)):
        if frac_point(a) != frac_point(b):
            raise EvaluationMismatch(f"mark {marks[i]} sits at {a}, not {b}")
    if n is None:
        n = stratum_dimension(C.type)[0] - len(C.type.contracted_legs)
    return local_dimension(C, marks) == n - len(points)


# -- cycles ---------------------------------------------------------------------------


def simple_cycles(T, max_betti=8):
    """All simple cycles as frozensets of edge ids (loops included)."""
    from .errors import TooManyCycles

    b1 = T.first_betti
    if b1 > max_betti:
        raise TooManyCycles(f"first Betti number {b1} exceeds the cap {max_betti}")
    if b1 == 0:
        return []
    # spanning forest and fundamental cycles
    parent = {}
    parent_edge = {}
    depth = {}
    adj = defaultdict(list)
    for e in T.edges:
        adj[e.v].append(e)
        if not e.is_loop:
            adj[e.w].append(e)
    tree = set()
    for v in T.vertices:
        if v.id in parent:
            continue
        parent[v.id] = None
        depth[v.id] = 0
        queue = deque([v.id])
        while queue:
            a = queue.popleft()
            for e in adj[a]:
                b = e.w if e.v == a else e.v
                if b not in parent:
                    parent[b], parent_edge[b], depth[b] = a, e.id, depth[a] + 1
                    tree.add(e.id)
                    queue.append(b)

    def path(a, b):
        es = set()
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            es ^= {parent_edge[a]}
            a = parent[a]
        return es

    fundamental = []
    for e in T.edges:
        if e.id in tree:
            continue
        fundamental.append(frozenset({e.id} | path(e.v, e.w)))
    cycles = set()
    for mask in range(1, 1 << len(fundamental)):
        es = set()
        for i, f in enumerate(fundamental):
            if mask >> i & 1:
                es ^= f
        if _is_simple_cycle(T, es):
            cycles.add(frozenset(es))
    return sorted(cycles, key=lambda c: sorted(c))


def _is_simple_cycle(T, es):
    if not es:
        return False
    deg = defaultdict(int)
    for eid in es:
        e = T.edge_map[eid]
        deg[e.v] += 1
        deg[e.w] += 1
    if any(d != 2 for d in deg.values()):
        return False
    # connected
    verts = list(deg)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        a = stack.pop()
        for eid in es:
            e = T.edge_map[eid]
            if a in (e.v, e.w):
                b = e.w if e.v == a else e.v
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == len(deg)


# -- surgery ---------------------------------------------------------------------------


def contract_edges(C, edge_ids):
    """Contract the given edges, merging endpoints and absorbing cycles into weights.

    All contracted edges must join vertices at the same position (zero length
    or contracted slope).  The surviving vertex of a merged group is the one
    with the smallest id.
    """
    T = C.type if isinstance(C, ParametrizedTropicalCurve) else C
    edge_ids = set(edge_ids)
    parent = {v.id: v.id for v in T.vertices}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for eid in sorted(edge_ids):
        e = T.edge_map[eid]
        a, b = find(e.v), find(e.w)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
    groups = defaultdict(list)
    for v in T.vertices:
        groups[find(v.id)].append(v.id)
    weight = {}
    for rep, members in groups.items():
        inner = [T.edge_map[e] for e in edge_ids if find(T.edge_map[e].v) == rep]
        b1 = len(inner) - len(members) + 1
        weight[rep] = sum(T.vertex_map[m].weight for m in members) + b1
    vertices = tuple(Vertex(rep, weight[rep]) for rep in groups)
    edges = tuple(
        Edge(e.id, find(e.v), find(e.w), e.slope) for e in T.edges if e.id not in edge_ids
    )
    legs = tuple(Leg(l.id, find(l.v), l.slope, l.mark) for l in T.legs)
    NT = CombinatorialType(vertices, edges, legs)
    if not isinstance(C, ParametrizedTropicalCurve):
        return NT
    lengths = tuple((e.id, C.length(e.id)) for e in edges)
    positions = tuple((rep, C.position(rep)) for rep in groups)
    return ParametrizedTropicalCurve(NT, lengths, positions)


def split_vertex(T, v, moving_germs):
    """Move ``moving_germs`` (germ keys) from ``v`` to a new vertex joined by a new edge.

    Returns ``(new type, new vertex id, new edge id)``.  The new edge runs from
    ``v`` to the new vertex and its slope is forced by balancing.
    """
    star = {g.key: g for g in T.star(v)}
    moving = set(moving_germs)
    if not moving <= set(star):
        raise InvalidCurve("germs to move are not at the vertex")
    new_v = T.next_vertex_id()
    new_e = T.next_edge_id()
    slope = ZERO
    for k in moving:
        slope = add(slope, star[k].slope)
    edges = []
    for e in T.edges:
        tv, tw = e.v, e.w
        if e.v == v and ("edge", e.id, 0) in moving:
            tv = new_v
        if e.w == v and ("edge", e.id, 1) in moving:
            tw = new_v
        edges.append(Edge(e.id, tv, tw, e.slope))
    edges.append(Edge(new_e, v, new_v, slope))
    legs = [Leg(l.id, new_v if ("leg", l.id, 0) in moving else l.v, l.slope, l.mark) for l in T.legs]
    vertices = list(T.vertices) + [Vertex(new_v, 0)]
    return CombinatorialType(tuple(vertices), tuple(edges), tuple(legs)), new_v, new_e


def smooth_vertex(C, v):
    """Erase a weight-0 vertex with two collinear edges of equal slope through it."""
    T = C.type
    star = T.star(v)
    if T.vertex_map[v].weight != 0 or len(star) != 2 or any(g.kind != "edge" for g in star):
        raise InvalidCurve(f"vertex {v} cannot be smoothed")
    g1, g2 = sorted(star, key=lambda g: g.id)
    if add(g1.slope, g2.slope) != ZERO or g1.id == g2.id:
        raise InvalidCurve(f"vertex {v} is not a smooth 2-valent point")
    a = T.germ_other_vertex(g1)
    b = T.germ_other_vertex(g2)
    # keep edge g1.id, oriented from a to b with slope -g1.slope (pointing away from a)
    new_slope = neg(g1.slope)
    length = C.length(g1.id) + C.length(g2.id)
    edges = [e for e in T.edges if e.id not in (g1.id, g2.id)] + [Edge(g1.id, a, b, new_slope)]
    vertices = [x for x in T.vertices if x.id != v]
    NT = CombinatorialType(tuple(vertices), tuple(edges), T.legs)
    lengths = dict(C.length_map)
    del lengths[g2.id]
    lengths[g1.id] = length
    positions = {k: p for k, p in C.positions if k != v}
    return ParametrizedTropicalCurve(NT, tuple(lengths.items()), tuple(positions.items()))


def remove_leg(C, leg_id):
    T = C.type
    legs = tuple(l for l in T.legs if l.id != leg_id)
    NT = CombinatorialType(T.vertices, T.edges, legs)
    return ParametrizedTropicalCurve(NT, C.lengths, C.positions)


def remove_edge(C, edge_id):
    T = C.type
    edges = tuple(e for e in T.edges if e.id != edge_id)
    NT = CombinatorialType(T.vertices, edges, T.legs)
    lengths = tuple((k, x) for k, x in C.lengths if k != edge_id)
    return ParametrizedTropicalCurve(NT, lengths, C.positions)


def remove_vertex(C, v):
    T = C.type
    if T.valence(v):
        raise InvalidCurve(f"vertex {v} still has germs")
    NT = CombinatorialType(tuple(x for x in T.vertices if x.id != v), T.edges, T.legs)
    return ParametrizedTropicalCurve(NT, C.lengths, tuple((k, p) for k, p in C.positions if k != v))


def set_weight(C, v, weight):
    T = C.type
    NT = CombinatorialType(
        tuple(Vertex(x.id, weight if x.id == v else x.weight) for x in T.vertices), T.edges, T.legs
    )
    return ParametrizedTropicalCurve(NT, C.lengths, C.positions)


def check_curve(C):
    """Report of the basic invariants, used by the CLI and the tests."""
    ok, bad = is_balanced(C)
    return {
        "balanced": ok,
        "unbalanced_vertex": bad,
        "stable": is_stable(C),
        "genus": C.genus,
        "connected": len(C.type.components()) == 1,
        "degree": [list(s) for s in degree(C)],
        "immersed": is_immersed(C),
        "marks": [[_fstr(c) for c in p] for p in evaluate(C)],
    }
