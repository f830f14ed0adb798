"""Command-line interface.

Every report is JSON on stdout and embeds a manifest (command, inputs, seed,
options, version), so running the same manifest again reproduces the output
byte for byte.  Exit codes: 0 success, 1 usage, 2 validation, 3 gate.
"""

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import polygon as pg
from .caporaso_harris import MAX_DEGREE, irreducible_severi_degree
from .errors import GateError, TropsevError
from .tropical import ParametrizedTropicalCurve, check_curve

LONG_TESTS_ENV = "TROPSEV_LONG_TESTS"
LONG_DEGREE = 12  # |d| from which counting needs --long


class UsageError(Exception):
    pass


@dataclass
class Manifest:
    command: str
    inputs: dict = field(default_factory=dict)
    seed: object = None
    options: dict = field(default_factory=dict)
    version: str = __version__

    def add_input(self, path):
        data = Path(path).read_bytes()
        self.inputs[str(path)] = hashlib.sha256(data).hexdigest()
        return json.loads(data)

    def to_dict(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "options": self.options,
            "artifact_version": self.version,
        }


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_polygon(manifest, path):
    return pg.LatticePolygon.from_dict(manifest.add_input(path))


def _load_profile(manifest, path):
    if path is None:
        return None
    return pg.TangencyProfile.from_dict(manifest.add_input(path))


def _triangle_degree(P):
    """``d`` when ``P`` is the ``d``-th dilate of the standard triangle, else ``None``."""
    vs = sorted(P.vertices)
    x0, y0 = vs[0]
    shifted = sorted((x - x0, y - y0) for x, y in P.vertices)
    if len(shifted) == 3 and shifted[0] == (0, 0):
        d = shifted[2][0]
        if shifted == [(0, 0), (0, d), (d, 0)]:
            return d
    return None


# -- subcommands ---------------------------------------------------------------------------


def cmd_polygon_analyze(args, manifest):
    P = _load_polygon(manifest, args.file)
    profile = _load_profile(manifest, args.profile)
    manifest.options.update(char=args.char, genus=args.genus)
    return pg.hypothesis_report(P, profile, args.genus, args.char)


def cmd_curve_check(args, manifest):
    from .floors import decompose, elevator_multiplicity_bound_check, is_floor_decomposed
    from .realizability import realizability_filter

    C = ParametrizedTropicalCurve.from_dict(manifest.add_input(args.file))
    report = check_curve(C)
    report["floor_decomposed"] = is_floor_decomposed(C)
    if report["floor_decomposed"]:
        report["decomposition"] = decompose(C).to_dict()
        report["realizability"] = realizability_filter(C)
    if args.polygon:
        P = _load_polygon(manifest, args.polygon)
        profile = _load_profile(manifest, args.profile)
        ok, cert = elevator_multiplicity_bound_check(C, P, profile)
        report["width_bound"] = {"holds": ok, "certificate": cert.to_dict()}
    return report


def cmd_reduce(args, manifest):
    from .enumeration import enumerate_through_points, stretched_config
    from .moves import genus_reduction_path
    from .svg import render_certificate

    P = _load_polygon(manifest, args.polygon)
    manifest.seed = args.seed
    manifest.options.update(genus=args.genus, char=args.char, curve=args.curve)
    config = stretched_config(P, None, args.genus, args.seed)
    curves = enumerate_through_points(P, None, args.genus, config)
    if not curves:
        raise UsageError("no curve through the configuration")
    if not 0 <= args.curve < len(curves):
        raise UsageError(f"--curve must be in 0..{len(curves) - 1}")
    C = curves[args.curve]
    report = {
        "hypotheses": pg.hypothesis_report(P, None, args.genus, args.char),
        "configuration": config.to_dict(),
        "curve_index": args.curve,
        "curve_count": len(curves),
    }
    _, certs = genus_reduction_path(C, p=args.char)
    report["certificates"] = [c.to_dict() for c in certs]
    if args.svg_dir:
        out = Path(args.svg_dir)
        out.mkdir(parents=True, exist_ok=True)
        for s, cert in enumerate(certs):
            for i, doc in enumerate(render_certificate(cert)):
                (out / f"step{s:02d}_{i:03d}.svg").write_text(doc)
    return report


def cmd_count(args, manifest):
    from .enumeration import count_with_multiplicity, stretched_config

    P = _load_polygon(manifest, args.polygon)
    manifest.seed = args.seed
    manifest.options.update(genus=args.genus, long=args.long)
    size = pg.trivial_profile(P).size
    if size >= LONG_DEGREE and not (args.long or os.environ.get(LONG_TESTS_ENV) == "1"):
        raise UsageError(f"|d| = {size} needs --long or {LONG_TESTS_ENV}=1")
    config = stretched_config(P, None, args.genus, args.seed)
    report = count_with_multiplicity(P, None, args.genus, config).to_dict()
    d = _triangle_degree(P)
    if d is not None and d <= MAX_DEGREE:
        oracle = irreducible_severi_degree(d, args.genus)
        report["oracle"] = {"caporaso_harris": oracle, "match": oracle == report["total"]}
    return report


def cmd_rational_nodal_check(args, manifest):
    from .rational import nodal_check

    P = _load_polygon(manifest, args.polygon)
    profile = _load_profile(manifest, args.profile)
    manifest.seed = args.seed
    return nodal_check(P, profile, args.seed)


def cmd_plot(args, manifest):
    from .moves import MoveCertificate
    from .svg import render_certificate, render_svg

    data = manifest.add_input(args.file)
    manifest.options["output"] = args.output
    if "steps" in data:
        docs = render_certificate(MoveCertificate.from_dict(data))
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, doc in enumerate(docs):
            (out / f"{i:03d}.svg").write_text(doc)
        return {"written": len(docs), "directory": str(out)}
    Path(args.output).write_text(render_svg(ParametrizedTropicalCurve.from_dict(data)))
    return {"written": 1, "file": args.output}


# -- parser -------------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="tropsev", description="Tropical Severi-variety toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    poly = sub.add_parser("polygon").add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = poly.add_parser("analyze", help="hypothesis report for a polygon")
    a.add_argument("file")
    a.add_argument("--profile")
    a.add_argument("--char", type=int, default=0)
    a.add_argument("--genus", type=int, default=0)
    a.set_defaults(func=cmd_polygon_analyze)

    curve = sub.add_parser("curve").add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = curve.add_parser("check", help="invariants, floors and the midpoint filter")
    c.add_argument("file")
    c.add_argument("--polygon")
    c.add_argument("--profile")
    c.set_defaults(func=cmd_curve_check)

    r = sub.add_parser("reduce", help="genus-reduction certificates")
    r.add_argument("--polygon", required=True)
    r.add_argument("--genus", type=int, required=True)
    r.add_argument("--char", type=int, default=0)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--curve", type=int, default=0, help="index of the enumerated curve")
    r.add_argument("--svg-dir")
    r.set_defaults(func=cmd_reduce)

    n = sub.add_parser("count", help="tropical count with multiplicities")
    n.add_argument("--polygon", required=True)
    n.add_argument("--genus", type=int, required=True)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--long", action="store_true")
    n.set_defaults(func=cmd_count)

    rat = sub.add_parser("rational").add_subparsers(dest="action", required=True, parser_class=_Parser)
    k = rat.add_parser("nodal-check", help="nodes of a random rational curve")
    k.add_argument("--polygon", required=True)
    k.add_argument("--profile")
    k.add_argument("--seed", type=int, default=0)
    k.set_defaults(func=cmd_rational_nodal_check)

    pl = sub.add_parser("plot", help="SVG of a curve, or one SVG per move of a certificate")
    pl.add_argument("file")
    pl.add_argument("-o", "--output", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        command = " ".join(x for x in (args.group, getattr(args, "action", None)) if x)
        manifest = Manifest(command)
        report = args.func(args, manifest)
    except (UsageError, OSError) as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1
    except GateError as exc:
        stdout.write(_dump({"error": type(exc).__name__, "message": str(exc), "manifest": manifest.to_dict()}))
        return 3
    except (TropsevError, ValueError, KeyError, json.JSONDecodeError) as exc:
        stdout.write(_dump({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    report = dict(report)
    report["manifest"] = manifest.to_dict()
    stdout.write(_dump(report))
    return 0


def main():
    sys.exit(run(sys.argv[1:]))
