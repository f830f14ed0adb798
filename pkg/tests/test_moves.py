import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropsev import moves
from tropsev import polygon as pg
from tropsev import tropical as tr
from tropsev.enumeration import enumerate_through_points
from tropsev.errors import (
    CharacteristicGate,
    InvalidPairing,
    NoFreedom,
    NotFourValent,
    NotWeightOneVertex,
    UnboundedMove,
)
from tropsev.tropical import Edge, Leg, ParametrizedTropicalCurve, Vertex

PRIMES = (2, 3, 5, 7, 11, 13)


def marks_of(C):
    return {l.mark: C.position(l.v) for l in C.type.contracted_legs}


@pytest.fixture(scope="module")
def freed_cubic(cubic_genus_one):
    return moves.apply_move(cubic_genus_one, moves.Move("FreeMark", {"mark": 4}))


@pytest.fixture(scope="module")
def cubic_wall(freed_cubic):
    T = freed_cubic.type
    free = [
        e
        for e in T.edges
        if e.slope == (0, 1) and not any(g.slope == (0, 0) for v in (e.v, e.w) for g in T.star(v))
    ]
    return moves.translate_within_stratum(freed_cubic, free[0].v, 0, 1)


def test_free_and_add_mark_are_inverse(cubic_genus_one, freed_cubic):
    C = cubic_genus_one
    assert 4 not in freed_cubic.type.marks and freed_cubic.genus == 1
    x, y = C.position(C.type.mark_vertex(4))

    def passes_through(e):
        (x0, y0), (x1, y1) = freed_cubic.position(e.v), freed_cubic.position(e.w)
        return x0 == x1 == x and min(y0, y1) < y < max(y0, y1)

    edge = next(e.id for e in freed_cubic.type.edges if passes_through(e))
    back = moves.apply_move(freed_cubic, moves.Move("AddMark", {"edge": edge, "y": y, "mark": 4}))
    assert marks_of(back) == marks_of(C)
    assert tr.stratum_dimension(back.type) == tr.stratum_dimension(C.type)


def test_translation_stops_at_a_simple_wall(freed_cubic, cubic_wall):
    W, info = cubic_wall
    assert info["distance"] > 0 and info["contracted_edges"]
    assert tr.classify_stratum(W).kind == "SimpleWall"
    assert marks_of(W) == marks_of(freed_cubic)
    assert moves.apply_move(freed_cubic, info["move"]) == W


def test_crossing_the_wall(freed_cubic, cubic_wall):
    W, _ = cubic_wall
    v = next(x.id for x in W.type.vertices if W.type.valence(x.id) == 4)
    crossed = 0
    for pairing in moves.pairings(W.type, v):
        try:
            D, move = moves.cross_simple_wall(W, v, pairing)
        except (InvalidPairing, NoFreedom):
            continue
        crossed += 1
        assert tr.classify_stratum(D).kind == "Nice"
        assert marks_of(D) == marks_of(W)
        assert moves.apply_move(W, moves.Move.from_dict(move.to_dict())) == D
    assert crossed >= 1


def test_split_needs_a_four_valent_vertex(cubic_genus_one):
    v = cubic_genus_one.type.vertices[0].id
    with pytest.raises(NotFourValent):
        moves.pairings(cubic_genus_one.type, v)
    with pytest.raises(NotFourValent):
        moves.split_four_valent(cubic_genus_one, v, (("leg", 0, 0), ("leg", 1, 0)))


def test_unbounded_translation_reports_a_ray():
    # one bounded edge; the marked end is pinned, the other end slides along it
    C = ParametrizedTropicalCurve.from_parts(
        [Vertex(0), Vertex(1)],
        [Edge(0, 0, 1, (1, 1))],
        [Leg(0, 0, (-1, 0)), Leg(1, 0, (0, -1)), Leg(2, 1, (1, 0)), Leg(3, 1, (0, 1)), Leg(4, 0, (0, 0), 0)],
        {0: 2},
        {0: (0, 0), 1: (2, 2)},
    )
    with pytest.raises(UnboundedMove) as err:
        moves.probe_translation(C, 1, 0, 1)
    assert err.value.ray["direction"]
    t, hit = moves.probe_translation(C, 1, 0, -1)
    assert (t, hit) == (2, [0])


def test_unknown_move_kind(cubic_genus_one):
    with pytest.raises(ValueError):
        moves.apply_move(cubic_genus_one, moves.Move("Teleport", {}))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 200), st.sampled_from(PRIMES))
def test_gate_predicates(kappa, p):
    powers = {p**e for e in range(1, 9)}
    assert moves.loop_allowed(kappa, p) == (kappa % p != 0)
    assert moves.tail_allowed(kappa, p) == (kappa in powers)
    assert moves.loop_allowed(kappa, 0)
    assert not moves.tail_allowed(kappa, 0)


def test_gates_only_act_on_weight_one_vertices(cubic_genus_one):
    v = cubic_genus_one.type.vertices[0].id
    with pytest.raises(NotWeightOneVertex):
        moves.develop_contracted_loop(cubic_genus_one, v, 0)
    with pytest.raises(NotWeightOneVertex):
        moves.develop_elliptic_tail(cubic_genus_one, v, 2)


def test_developed_loop_and_tail_keep_the_genus(build):
    C = build.weight_one_vertex(4)
    loop = moves.develop_contracted_loop(C, 0, 3)
    tail = moves.develop_elliptic_tail(C, 0, 2)
    assert loop.genus == tail.genus == 1
    assert [v.weight for v in loop.type.vertices] == [0]
    assert sorted(v.weight for v in tail.type.vertices) == [0, 1]


def test_certificates_replay_and_round_trip(cubic_genus_one):
    D, cert = moves.genus_reduction_step(cubic_genus_one)
    assert D.genus == 0
    assert cert.terminal["kind"] == "contracted loop"
    data = json.loads(json.dumps(cert.to_dict()))
    again = moves.MoveCertificate.from_dict(data)
    assert json.dumps(again.to_dict(), sort_keys=True) == json.dumps(data, sort_keys=True)
    assert again.replay()[-1] == D


def test_tampered_certificate_fails_replay(cubic_genus_one):
    _, cert = moves.genus_reduction_step(cubic_genus_one)
    data = cert.to_dict()
    data["steps"][0]["evaluations"][0] = ["0", "0"]
    with pytest.raises(AssertionError):
        moves.MoveCertificate.from_dict(data).replay()


def test_kite33_hits_the_gate_in_characteristic_three(kite33_genus_one):
    for C in kite33_genus_one:
        with pytest.raises(CharacteristicGate):
            moves.genus_reduction_step(C, p=3)
        # 7 does not divide the multiplicity 6
        D, cert = moves.genus_reduction_step(C, p=7)
        assert D.genus == 0 and cert.terminal["kappa"] == 6


def test_kite22_develops_a_tail_in_characteristic_two():
    for C in enumerate_through_points(pg.kite(2, 2), None, 1):
        D, cert = moves.genus_reduction_step(C, p=2)
        assert cert.terminal["kind"] == "contracted elliptic tail"
        assert cert.terminal["kappa"] == 4 and D.genus == 0


def test_hypotheses_are_attached(cubic_genus_one, build):
    _, certs = moves.genus_reduction_path(cubic_genus_one, P=build.triangle(3))
    assert certs[0].terminal["hypotheses"]["main_theorem"]["holds"]


@pytest.mark.parametrize("g", [2, 3])
def test_quartics_reduce_to_rational_curves(g, build):
    P = build.triangle(4)
    for C in enumerate_through_points(P, None, g):
        D, certs = moves.genus_reduction_path(C)
        assert D.genus == 0 and len(certs) == g
        assert [c.terminal["genus"] for c in certs] == list(range(g - 1, -1, -1))


def test_sample_of_genus_one_quartics(build):
    curves = enumerate_through_points(build.triangle(4), None, 1)
    assert len(curves) == 118
    kinds = set()
    for C in curves[::9]:
        D, cert = moves.genus_reduction_step(C)
        assert D.genus == 0
        kinds.add(cert.terminal["kind"])
    assert kinds <= {"contracted loop", "contracted edge"}


def test_enumerated_curves_are_stretched(cubic_genus_one):
    assert moves.is_vertically_stretched(cubic_genus_one)
    D, mv, _ = moves.stretch_points(cubic_genus_one)
    assert D == cubic_genus_one and mv == []


def test_stretching_to_a_larger_threshold(cubic_genus_one):
    """Demand four times the spacing and let the engine spread the points."""
    C = cubic_genus_one
    threshold = moves.stretch_threshold_for(C) * 4
    assert not moves.is_vertically_stretched(C, threshold)
    D, mv, thr = moves.stretch_points(C, threshold=threshold)
    assert thr == threshold and moves.is_vertically_stretched(D, threshold)
    assert D.type == C.type
    assert mv and all(m.kind in ("StretchBlock", "SlideMark") for m, _ in mv)


def test_validate_state_catches_moved_marks(cubic_genus_one):
    fixed = marks_of(cubic_genus_one)
    fixed[0] = (Fraction(-1), Fraction(-1))
    with pytest.raises(AssertionError):
        moves.validate_state(cubic_genus_one, 3, fixed)
