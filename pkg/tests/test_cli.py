import csv
import io
import json
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from pluripot.cli import main
from pluripot.extremal import WeightedSampleSet
from pluripot.pullback import PolyMap
from pluripot.ratgeom import Body, PolyCone

DATA = Path(__file__).resolve().parents[1] / "data"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def d(name):
    return DATA / name


def test_lattice():
    r = run("lattice", "--body", d("simplex2.json"), "-m", 2)
    assert r.exit_code == 0
    out = json.loads(r.stdout)
    assert out["count"] == 6 and [0, 0] in out["indices"] and [1, 1] in out["indices"]
    r = run("lattice", "--body", d("quadrilateral.json"), "-m", 4)
    assert [1, 0] not in json.loads(r.stdout)["indices"]


def test_mass():
    r = run("mass", "--body", d("quadrilateral.json"))
    assert r.exit_code == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "(2π)^2 · 2 · 21/50"
    assert float(lines[1]) == pytest.approx(4 * math.pi ** 2 * 2 * 21 / 50, rel=1e-11)
    j = json.loads(run("mass", "--body", d("quadrilateral.json"), "--json").stdout)
    assert j["volume"] == "21/50" and j["factor"] == "21/25" and not j["approximate"]


def test_dm():
    r = run("dm", "--body", d("simplex2.json"), "-m", 2)
    assert float(r.stdout) == pytest.approx(math.sqrt(2) / 2, rel=1e-11)
    r = run("dm", "--body", d("simplex2.json"), "-m", 2, "--norm", "L1")
    assert r.stdout.strip() == "1"


def test_l2():
    r = run("l2", "--body", d("quadrilateral.json"), "--alpha", "1,0", "-m", 4)
    out = json.loads(r.stdout)
    assert out["value"] == pytest.approx(4 * math.pi ** 2 * 17 / 18, rel=1e-11)
    assert out["method"] == "closed_form_2d"
    out = json.loads(run("l2", "--body", d("quadrilateral.json"), "--alpha", "2,0", "-m", 4).stdout)
    assert out["value"] == "infinite"
    r = run("l2", "--body", d("quadrilateral.json"), "--alpha", "1,0,0", "-m", 4)
    assert r.exit_code == 2


def test_hull_and_lower():
    r = run("hull", "--body", d("quadrilateral.json"), "--orthant")
    H = Body.from_json(json.loads(r.stdout))
    assert H == Body([(0, 0), ("4/5", 0), ("4/5", "1/5"), (0, 1)])
    r2 = run("hull", "--body", d("quadrilateral.json"), "--cone", d("orthant2.json"))
    assert r2.stdout == r.stdout
    out = json.loads(run("lower", "--body", d("quadrilateral.json")).stdout)
    assert out["is_lower"] is False
    assert Body.from_json(out["lower_hull"]) == H
    assert json.loads(run("lower", "--body", d("square.json")).stdout)["is_lower"] is True
    assert run("hull", "--body", d("quadrilateral.json")).exit_code == 2


def test_pullback():
    r = run("pullback", "--map", d("square_first.json"), "--body", d("simplex2.json"))
    assert Body.from_json(json.loads(r.stdout)) == Body([(0, 0), (2, 0), (0, 1)])
    r = run("pullback", "--map", d("square_first.json"), "--body", d("interval.json"))
    assert r.exit_code == 2


def test_hs_eval_grid_and_points(tmp_path):
    r = run("hs-eval", "--body", d("simplex2.json"), "--grid", "0:2:3")
    rows = list(csv.reader(io.StringIO(r.stdout)))
    assert rows[0] == ["re_1", "im_1", "re_2", "im_2", "H_S"]
    assert len(rows) == 10
    assert float(rows[-1][-1]) == pytest.approx(math.log(2), rel=1e-11)
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[[5, 0], [0, 0]]]))
    r = run("hs-eval", "--body", d("lens256.json"), "--points", pts)
    assert r.stdout.splitlines()[1] == "5,0,0,0,0"
    out = tmp_path / "o.csv"
    assert run("hs-eval", "--body", d("simplex2.json"), "--grid", "0:2:3", "--out", out).exit_code == 0
    assert out.read_text() == run("hs-eval", "--body", d("simplex2.json"), "--grid", "0:2:3").stdout


def test_phi_rows():
    r = run("phi", "--body", d("interval.json"), "--samples", d("circle64.json"), "-m", 3,
            "--points", d("points_1d.json"))
    assert r.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert list(rows[0]) == ["re_1", "im_1", "m", "value", "lower_bound", "upper_bound",
                             "basis_size"]
    for row in rows:
        assert float(row["lower_bound"]) <= float(row["value"]) <= float(row["upper_bound"])
        assert row["basis_size"] == "4"


def test_check_suite_exit_codes():
    r = run("check", "mass")
    assert r.exit_code == 0 and "suite mass: PASS" in r.stdout
    assert run("check", "no-such-suite").exit_code == 2


def test_parse_errors_exit_2_and_echo_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [[0, 0], [1, ')
    r = run("lattice", "--body", bad, "-m", 1)
    assert r.exit_code == 2 and "invalid JSON" in r.stderr
    notbody = tmp_path / "nb.json"
    notbody.write_text(json.dumps({"vertices": [[1, 0], [0, 1]]}))
    r = run("lattice", "--body", notbody, "-m", 1)
    assert r.exit_code == 2 and "[[1, 0], [0, 1]]" in r.stderr
    r = run("lattice", "--body", tmp_path / "missing.json", "-m", 1)
    assert r.exit_code == 2
    r = run("hs-eval", "--body", d("simplex2.json"), "--grid", "0:2")
    assert r.exit_code == 2
    r = run("lattice", "--body", d("simplex2.json"), "-m", -1)
    assert r.exit_code == 2


@pytest.mark.parametrize("args", [
    ("lattice", "--body", "quadrilateral.json", "-m", 4),
    ("mass", "--body", "quadrilateral.json"),
    ("l2", "--body", "quadrilateral.json", "--alpha", "1,0", "-m", 4),
    ("hull", "--body", "quadrilateral.json", "--orthant"),
    ("hs-eval", "--body", "lens256.json", "--grid", "0:3:4"),
    ("phi", "--body", "interval.json", "--samples", "circle64.json", "-m", 2,
     "--grid", "-2:2:5"),
])
def test_byte_identical_reruns(args):
    args = [d(a) if str(a).endswith(".json") else a for a in args]
    first, second = run(*args), run(*args)
    assert first.exit_code == 0 and first.stdout == second.stdout


def test_workers_do_not_change_output():
    a = run("phi", "--body", d("interval.json"), "--samples", d("circle64.json"), "-m", 2,
            "--grid", "-2:2:5")
    b = run("phi", "--body", d("interval.json"), "--samples", d("circle64.json"), "-m", 2,
            "--grid", "-2:2:5", "--workers", 2)
    assert a.stdout == b.stdout


@pytest.mark.parametrize("name,cls", [
    ("simplex2.json", Body), ("quadrilateral.json", Body), ("lens256.json", Body),
    ("orthant2.json", PolyCone), ("circle64.json", WeightedSampleSet),
    ("square_first.json", PolyMap),
])
def test_input_json_round_trips(name, cls):
    data = json.loads(d(name).read_text())
    obj = cls.from_json(data)
    again = cls.from_json(json.loads(json.dumps(obj.to_json())))
    assert json.dumps(again.to_json(), sort_keys=True) == json.dumps(obj.to_json(), sort_keys=True)
