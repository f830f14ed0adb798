import re

from tropsev import moves
from tropsev.svg import render_certificate, render_svg


def test_rendering_is_deterministic(cubic_genus_one):
    assert render_svg(cubic_genus_one, "cubic") == render_svg(cubic_genus_one, "cubic")


def test_elements_are_classified(cubic_genus_one):
    doc = render_svg(cubic_genus_one)
    classes = set(re.findall(r'class="([a-z]+)"', doc))
    assert {"edge", "leg", "mark"} <= classes
    assert doc.count('class="mark"') == len(cubic_genus_one.type.contracted_legs)


def test_weighted_vertices_are_labelled(build):
    doc = render_svg(build.weight_one_vertex(3))
    assert "g=1" in doc


def test_one_frame_per_certificate_state(cubic_genus_one):
    _, cert = moves.genus_reduction_step(cubic_genus_one)
    frames = render_certificate(cert)
    assert len(frames) == len(cert.steps) + 1
    assert all(f.startswith("<svg") and f.rstrip().endswith("</svg>") for f in frames)
