"""Command-line round trips, determinism and exit codes."""

import json
from fractions import Fraction

import pytest

from mtower.cli import main
from mtower.curves import curve_from_obj, curve_to_obj, monomial_curve
from mtower.formats import (certificate_from_obj, certificate_to_obj,
                            diffeo_from_obj, diffeo_to_obj, dumps,
                            point_from_obj, point_to_obj, trace_from_obj,
                            trace_to_obj)
from mtower.diffeo import DiffeoJet
from mtower.normalize import apply_certificate, equivalence_search, reduce_catalog
from mtower.tower import prolong_curve

F = Fraction


@pytest.fixture
def cusp_file(tmp_path):
    path = tmp_path / "cusp.json"
    path.write_text(dumps(curve_to_obj(monomial_curve(2, 3, None))))
    return str(path)


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        out = capsys.readouterr().out
        return code, out
    return invoke


# -- serialization round trips -------------------------------------------------

def test_curve_round_trip():
    c = monomial_curve(3, 5, 7, trunc=20)
    assert curve_from_obj(json.loads(dumps(curve_to_obj(c)))) == c


def test_point_round_trip():
    p = prolong_curve(monomial_curve(3, 4, 5), 3).point
    q = point_from_obj(json.loads(dumps(point_to_obj(p))))
    assert q == p  # arrangement is recomputed and must agree


def test_point_serialization_is_lowest_terms():
    p = prolong_curve(monomial_curve(3, 4, 5), 3).point
    obj = point_to_obj(p)
    assert obj["coords"][-1] == "15/8"


def test_diffeo_round_trip():
    phi = DiffeoJet.from_components(
        [{(1, 0, 0): F(2, 3)}, {(0, 1, 0): 1, (2, 0, 0): F(-1, 7)},
         {(0, 0, 1): 4}], degree=5)
    assert diffeo_from_obj(json.loads(dumps(diffeo_to_obj(phi)))) == phi


def test_trace_round_trip_and_replay():
    c = curve_from_obj({"trunc": 32, "x": {"3": "1", "4": "1"},
                        "y": {"5": "1"}, "z": {"7": "1"}})
    result = reduce_catalog(c)
    restored = trace_from_obj(json.loads(dumps(trace_to_obj(result.trace))))
    assert restored.replay(c).agrees_with(result.curve)


def test_certificate_round_trip():
    c1 = curve_from_obj({"trunc": 32, "x": {"3": "1"},
                         "y": {"5": "1", "7": "1"}, "z": {}})
    c2 = monomial_curve(3, 5, None, trunc=32)
    cert = equivalence_search(c1, c2).certificate
    restored = certificate_from_obj(json.loads(dumps(certificate_to_obj(cert))))
    moved = apply_certificate(restored, c1)
    assert moved.agrees_with(c2, restored.verified_through)


# -- CLI behaviour ------------------------------------------------------------------

def test_rvt_verb(run, cusp_file):
    code, out = run("rvt", "--curve", cusp_file, "--level", "3")
    assert code == 0
    assert json.loads(out) == {"code": "RVR"}


def test_prolong_verb_cusp(run, cusp_file):
    code, out = run("prolong", "--curve", cusp_file, "--level", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["point"]["coords"] == ["0", "0", "0", "0", "0"]
    assert payload["series"]["u1"]["coeffs"] == {"1": "3/2"}
    assert payload["letters"] == "R"


def test_prolong_verb_line_all_zero(run, tmp_path):
    path = tmp_path / "line.json"
    path.write_text(dumps(curve_to_obj(monomial_curve(1, None, None))))
    code, out = run("prolong", "--curve", str(path), "--level", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["point"]["coords"] == ["0"] * 7


def test_census_table_totals(run):
    code, out = run("--table", "census", "--level", "4")
    assert code == 0
    assert out.splitlines()[-1].startswith("total")
    assert "34" in out.splitlines()[-1]


def test_global_flags_accepted_after_the_verb(run):
    code, out = run("census", "--level", "4", "--table")
    assert code == 0
    assert "34" in out.splitlines()[-1]


def test_census_json_deterministic(run):
    code1, out1 = run("census", "--level", "3")
    code2, out2 = run("census", "--level", "3")
    assert code1 == code2 == 0
    assert out1 == out2


def test_classes_verb(run):
    code, out = run("classes", "--level", "2")
    assert code == 0
    assert json.loads(out) == {"level": 2, "classes": ["RR", "RV"]}


def test_semigroup_verb(run, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(dumps(curve_to_obj(monomial_curve(3, 5, 7, trunc=24))))
    code, out = run("--bound", "12", "semigroup", "--curve", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["gaps"] == [1, 2, 4]


def test_planar_verb(run, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(dumps(curve_to_obj(monomial_curve(3, 5, None, trunc=48))))
    code, out = run("planar", "--curve", str(path))
    assert code == 0
    assert json.loads(out)["kind"] == "planar-witness"


def test_reduce_and_replay_verbs(run, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(dumps({"trunc": 32, "x": {"3": "1", "4": "1"},
                           "y": {"5": "1"}, "z": {"7": "1"}}))
    code, out = run("reduce", "--curve", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "reduced"
    assert payload["normal_form"] == [3, 5, 7]
    trace_path = tmp_path / "trace.json"
    trace_path.write_text(dumps(payload["trace"]))
    code, out = run("replay", "--trace", str(trace_path), "--curve", str(path))
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_equiv_verb(run, tmp_path):
    left = tmp_path / "a.json"
    left.write_text(dumps({"trunc": 32, "x": {"3": "1"},
                           "y": {"5": "1", "7": "1"}, "z": {}}))
    right = tmp_path / "b.json"
    right.write_text(dumps(curve_to_obj(monomial_curve(3, 5, None, trunc=32))))
    code, out = run("equiv", "--left", str(left), "--right", str(right))
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "equivalent"
    assert payload["certificate"]["verified_through"] >= 30


def test_apply_verb(run, tmp_path):
    point = tmp_path / "p.json"
    point.write_text(dumps(point_to_obj(
        prolong_curve(monomial_curve(1, None, None), 2).point)))
    diffeo = tmp_path / "phi.json"
    diffeo.write_text(dumps({
        "degree": 4,
        "phi1": {"1,0,0": "1"},
        "phi2": {"0,1,0": "1", "2,0,0": "1"},
        "phi3": {"0,0,1": "1"}}))
    code, out = run("apply", "--diffeo", str(diffeo), "--point", str(point))
    assert code == 0
    payload = json.loads(out)
    assert payload["point"]["coords"] == ["0", "0", "0", "0", "0", "2", "0"]


def test_domain_error_exit_code(run, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(dumps({"trunc": 16, "x": {"1": "0.5"}, "y": {}, "z": {}}))
    code, out = run("rvt", "--curve", str(path), "--level", "1")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "domain-error"


def test_truncation_error_surfaces(run, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(dumps({"trunc": 3, "x": {"2": "1"}, "y": {"3": "1"}, "z": {}}))
    code, out = run("rvt", "--curve", str(path), "--level", "4")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "insufficient-truncation"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_rvvv_verb(run):
    code, out = run("--seed", "3", "verify", "--suite", "rvvv")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["codes"] == ["RVVV", "RVVV"]


def test_mt_trunc_environment_override(run, monkeypatch):
    monkeypatch.setenv("MT_TRUNC", "20")
    code, out = run("census", "--level", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["classes"][0]["normal_forms"][0]["trunc"] == 20
    monkeypatch.setenv("MT_TRUNC", "zero")
    code, out = run("census", "--level", "1")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "error"
