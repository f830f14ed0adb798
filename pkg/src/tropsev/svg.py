"""Deterministic SVG drawings of parametrized tropical curves."""

from math import hypot

from .tropical import ZERO

LEG_LENGTH = 1.5  # display length of unbounded legs, in units of the bounding box diagonal / 10
MARGIN = 20
SIZE = 400


def _num(v):
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(C, title=None):
    T = C.type
    pts = {v.id: (float(C.position(v.id)[0]), float(C.position(v.id)[1])) for v in T.vertices}
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    diag = hypot(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    ray = LEG_LENGTH * diag / 10

    segments = []  # (x1, y1, x2, y2, class, label)
    for e in T.edges:
        if e.contracted:
            continue
        a, b = pts[e.v], pts[e.w]
        cls = "elevator" if e.slope[0] == 0 else "edge"
        segments.append((a, b, cls, _weight(e.slope)))
    for l in T.legs:
        if l.slope == ZERO:
            continue
        a = pts[l.v]
        n = hypot(*l.slope)
        b = (a[0] + ray * l.slope[0] / n, a[1] + ray * l.slope[1] / n)
        cls = "elevator" if l.slope[0] == 0 else "leg"
        segments.append((a, b, cls, _weight(l.slope)))

    all_x = xs + [s[1][0] for s in segments]
    all_y = ys + [s[1][1] for s in segments]
    x0, x1, y0, y1 = min(all_x), max(all_x), min(all_y), max(all_y)
    scale = (SIZE - 2 * MARGIN) / max(x1 - x0, y1 - y0, 1e-9)

    def tr(p):
        return (MARGIN + (p[0] - x0) * scale, SIZE - MARGIN - (p[1] - y0) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        "<style>.edge,.leg{stroke:#222;stroke-width:1.5}.leg{stroke-dasharray:4 2}"
        ".elevator{stroke:#c03;stroke-width:2.5}.mark{fill:#06c}.vertex{fill:#222}"
        "text{font-family:sans-serif;font-size:10px}</style>",
    ]
    if title:
        out.append(f"<title>{title}</title>")
    for a, b, cls, w in segments:
        (p, q), (r, s) = tr(a), tr(b)
        out.append(f'<line class="{cls}" x1="{_num(p)}" y1="{_num(q)}" x2="{_num(r)}" y2="{_num(s)}"/>')
        if w > 1:
            out.append(f'<text x="{_num((p + r) / 2 + 3)}" y="{_num((q + s) / 2 - 3)}">{w}</text>')
    marked = {l.v for l in T.contracted_legs}
    for v in T.vertices:
        p, q = tr(pts[v.id])
        cls = "mark" if v.id in marked else "vertex"
        out.append(f'<circle class="{cls}" cx="{_num(p)}" cy="{_num(q)}" r="3"/>')
        if v.weight:
            out.append(f'<text x="{_num(p + 4)}" y="{_num(q + 12)}">g={v.weight}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _weight(slope):
    from math import gcd

    return gcd(abs(slope[0]), abs(slope[1]))


def render_certificate(cert):
    """One SVG per state: the initial curve, then the curve after every move."""
    curves = cert.replay()
    labels = ["initial"] + [m.kind for m, _, _ in cert.steps]
    return [render_svg(C, f"{i:03d} {label}") for i, (C, label) in enumerate(zip(curves, labels))]
