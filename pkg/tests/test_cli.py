import hashlib
import io
import json

import pytest

from tropsev import cli
from tropsev import polygon as pg
from tropsev.enumeration import enumerate_through_points


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return path

    return _write


def test_polygon_analyze(write):
    path = write("kite.json", pg.kite(3, 3).to_dict())
    code, out, _ = invoke("polygon", "analyze", path, "--char", 3, "--genus", 1)
    assert code == 0
    report = json.loads(out)
    m = report["manifest"]
    assert m["command"] == "polygon analyze"
    assert m["inputs"][str(path)] == hashlib.sha256(path.read_bytes()).hexdigest()
    assert m["options"] == {"char": 3, "genus": 1}
    assert set(m) == {"command", "inputs", "seed", "options", "artifact_version"}


def test_reports_are_byte_identical(write):
    path = write("tri.json", pg.unit_triangle().scaled(3).to_dict())
    runs = [invoke("reduce", "--polygon", path, "--genus", 1, "--seed", 2) for _ in range(2)]
    assert runs[0][0] == 0
    assert runs[0][1] == runs[1][1]


def test_count_reports_the_oracle(write):
    path = write("tri.json", pg.unit_triangle().scaled(3).to_dict())
    code, out, _ = invoke("count", "--polygon", path, "--genus", 0)
    report = json.loads(out)
    assert code == 0 and report["total"] == 12
    assert report["oracle"] == {"caporaso_harris": 12, "match": True}


def test_large_counts_need_the_long_flag(write, monkeypatch):
    monkeypatch.delenv(cli.LONG_TESTS_ENV, raising=False)
    path = write("tri.json", pg.unit_triangle().scaled(4).to_dict())
    code, out, err = invoke("count", "--polygon", path, "--genus", 3)
    assert code == 1 and out == "" and "--long" in err
    code, out, _ = invoke("count", "--polygon", path, "--genus", 3, "--long")
    assert code == 0 and json.loads(out)["total"] == 1


def test_gate_exit_code(write):
    path = write("kite.json", pg.kite(3, 3).to_dict())
    code, out, _ = invoke("reduce", "--polygon", path, "--genus", 1, "--char", 3)
    assert code == 3
    report = json.loads(out)
    assert report["error"] == "CharacteristicGate"
    assert report["manifest"]["options"]["char"] == 3


def test_usage_and_validation_exit_codes(write, tmp_path):
    assert invoke()[0] == 1
    assert invoke("polygon", "analyze", tmp_path / "missing.json")[0] == 1
    assert invoke("reduce", "--genus", 1)[0] == 1
    bad = write("bad.json", {"vertices": [[0, 0], [1, 1], [2, 2]]})
    code, out, _ = invoke("polygon", "analyze", bad)
    assert code == 2 and "error" in json.loads(out)
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{")
    assert invoke("polygon", "analyze", garbage)[0] == 2


def test_curve_check(write):
    P = pg.unit_triangle().scaled(3)
    C = enumerate_through_points(P, None, 1)[0]
    curve = write("curve.json", C.to_dict())
    poly = write("tri.json", P.to_dict())
    code, out, _ = invoke("curve", "check", curve, "--polygon", poly)
    report = json.loads(out)
    assert code == 0
    assert report["floor_decomposed"] and report["width_bound"]["holds"]
    assert len(report["manifest"]["inputs"]) == 2


def test_nodal_check(write):
    path = write("kite.json", pg.kite(1, 2).to_dict())
    code, out, _ = invoke("rational", "nodal-check", "--polygon", path, "--seed", 1)
    report = json.loads(out)
    assert code == 0 and report["match"] and report["manifest"]["seed"] == 1


def test_plot_curve_and_certificate(write, tmp_path):
    P = pg.unit_triangle().scaled(3)
    poly = write("tri.json", P.to_dict())
    code, out, _ = invoke("reduce", "--polygon", poly, "--genus", 1, "--svg-dir", tmp_path / "svgs")
    assert code == 0
    cert = json.loads(out)["certificates"][0]
    assert len(list((tmp_path / "svgs").glob("*.svg"))) == len(cert["steps"]) + 1

    cert_path = write("cert.json", cert)
    code, out, _ = invoke("plot", cert_path, "-o", tmp_path / "frames")
    assert code == 0 and json.loads(out)["written"] == len(cert["steps"]) + 1

    curve = write("curve.json", enumerate_through_points(P, None, 1)[0].to_dict())
    target = tmp_path / "curve.svg"
    code, out, _ = invoke("plot", curve, "-o", target)
    assert code == 0 and target.read_text().startswith("<svg")
