import json

import pytest

from lgpants.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from lgpants.geometry.export import read_polyline_csv

STANDARD = {
    "n": 4,
    "dimV": 2,
    "outer": [
        {"dim": 1, "map": [["1"], ["0"]]},
        {"dim": 1, "map": [["0"], ["1"]]},
        {"dim": 1, "map": [["1"], ["1"]]},
        {"dim": 1, "map": [["1"], ["2"]]},
    ],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


# ---- envelope and exit codes ---------------------------------------------

def test_rep_classify_standard(capsys, tmp_path):
    code, out, _ = run(capsys, "rep", "classify", write(tmp_path, "s.json", STANDARD))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert list(doc) == ["command", "input", "result"]
    assert doc["command"] == "rep classify"
    assert doc["result"] == {"class": "autpair", "dim": 1, "m": [["2"]]}


def test_rep_validate_failure_exits_1(capsys, tmp_path):
    bad = json.loads(json.dumps(STANDARD))
    bad["outer"][3]["map"] = [["1"], ["1"]]
    code, out, _ = run(capsys, "rep", "validate", write(tmp_path, "b.json", bad))
    assert code == EXIT_FAIL
    assert json.loads(out)["result"]["valid"] is False


def test_rep_hom_skyscrapers(capsys, tmp_path):
    a = write(tmp_path, "a.json", {"dim": 1, "m": [["2"]]})
    b = write(tmp_path, "b.json", {"dim": 1, "m": [["3"]]})
    code, out, _ = run(capsys, "rep", "hom", a, b)
    res = json.loads(out)["result"]
    assert code == EXIT_OK
    assert (res["dim_star"], res["dim_autpair"], res["agree"]) == (0, 0, True)
    code, out, _ = run(capsys, "rep", "hom", a, a)
    res = json.loads(out)["result"]
    assert (res["dim_star"], res["dim_autpair"], res["ext1_autpair"]) == (1, 1, 1)


def test_rep_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "rep", "roundtrip", write(tmp_path, "s.json", STANDARD))
    res = json.loads(out)["result"]
    assert code == EXIT_OK and res["ok"] and res["autpair"] == {"dim": 1, "m": [["2"]]}


def test_malformed_json_reports_position(capsys, tmp_path):
    code, out, err = run(capsys, "rep", "validate", write(tmp_path, "x.json", '{"dim": 1,\n  "m": [[}'))
    assert code == EXIT_USAGE and out == ""
    assert "x.json:2:" in err


def test_bad_rational_reports_path(capsys, tmp_path):
    code, _, err = run(capsys, "rep", "classify", write(tmp_path, "r.json", {"dim": 1, "m": [["1/0"]]}))
    assert code == EXIT_USAGE and "$.m[0][0]" in err


@pytest.mark.parametrize("argv", [
    ["no-such-command"],
    ["trefoil", "--samples", "0"],
    ["trefoil", "--grid-res", "2"],
    ["link-regions", "--format", "svg"],
    ["trefoil", "--format", "csv"],
    ["rep", "validate", "/nonexistent/file.json"],
    ["rep", "random", "--max-dim", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_help_exits_0(capsys):
    assert run(capsys, "--help")[0] == 0


# ---- seeds and determinism -----------------------------------------------

def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("PANTS_SEED", "17")
    _, from_env, _ = run(capsys, "rep", "random")
    _, explicit, _ = run(capsys, "rep", "random", "--seed", "17")
    assert from_env == explicit
    assert json.loads(from_env)["input"]["seed"] == 17
    monkeypatch.delenv("PANTS_SEED")
    _, default, _ = run(capsys, "rep", "random")
    assert json.loads(default)["input"]["seed"] == 0
    monkeypatch.setenv("PANTS_SEED", "abc")
    assert run(capsys, "rep", "random")[0] == EXIT_USAGE


def test_random_rep_file_is_loadable(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "rep", "random", "--seed", "5", "--out", str(path))
    assert code == EXIT_OK
    assert json.loads(path.read_text()) == json.loads(out)["result"]["rep"]
    code, out, _ = run(capsys, "rep", "roundtrip", str(path))
    assert code == EXIT_OK and json.loads(out)["result"]["ok"]


def test_verify_geometry_deterministic(capsys):
    first = run(capsys, "verify-geometry", "--samples", "2000", "--seed", "3")
    second = run(capsys, "verify-geometry", "--samples", "2000", "--seed", "3")
    assert first[0] == EXIT_OK and first == second
    checks = json.loads(first[1])["result"]["checks"]
    assert checks and all(c["passed"] for c in checks)


def test_verify_geometry_literal_wall_fails(capsys):
    code, out, _ = run(capsys, "verify-geometry", "--samples", "2000", "--literal-wall")
    assert code == EXIT_FAIL
    failed = [c["name"] for c in json.loads(out)["result"]["checks"] if not c["passed"]]
    assert failed == ["q_K_double_points_on_wall"]


def test_verify_geometry_tight_tolerance_fails(capsys):
    assert run(capsys, "verify-geometry", "--samples", "2000", "--tol", "1e-15")[0] == EXIT_FAIL


# ---- geometry outputs ----------------------------------------------------

def test_trefoil_json_and_exports(capsys, tmp_path):
    code, out, _ = run(capsys, "trefoil")
    res = json.loads(out)["result"]
    assert code == EXIT_OK
    assert res == {"crossings": 3, "regions_total": 5, "regions_bounded": 4, "stable": True}

    csv_path, svg_path = tmp_path / "t.csv", tmp_path / "t.svg"
    assert run(capsys, "trefoil", "--format", "csv", "--out", str(csv_path))[0] == EXIT_OK
    poly = read_polyline_csv(csv_path.read_text())
    assert csv_path.read_text().startswith("x,y\n")
    assert len(poly) == 2048 and len(poly.points) == 2048 + 1  # closing vertex written out
    assert run(capsys, "trefoil", "--format", "svg", "--out", str(svg_path))[0] == EXIT_OK
    svg = svg_path.read_text()
    assert svg.startswith("<svg") and svg.count("<path") == 1


def test_json_out_copy(capsys, tmp_path):
    path = tmp_path / "o.json"
    code, out, _ = run(capsys, "trefoil", "--out", str(path))
    assert code == EXIT_OK and path.read_text() == out


def test_link_regions(capsys):
    code, out, _ = run(capsys, "link-regions")
    assert code == EXIT_OK
    assert json.loads(out)["result"] == {"regions_total": 6, "regions_bounded": 5, "unbounded": 1, "stable": True}
