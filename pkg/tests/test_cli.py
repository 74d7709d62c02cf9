import contextlib
import io
import json
from pathlib import Path

import jsonschema
import pytest

from multiproj.cli import EXIT_INPUT, EXIT_LIMIT, Limits, main
from multiproj.serialize import SpecError, dumps, load_schema, parse_spec

ROOT = Path(__file__).resolve().parent.parent
SPECS = ROOT / "specs"


def run(args, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(args)
    return code, out.getvalue(), err.getvalue()


def spec(name):
    return str(SPECS / f"{name}.json")


def test_proj_report_validates():
    code, out, _ = run(["proj", spec("three_variable"), "--cliques"])
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("report.json"))
    assert doc["separated"] is False and doc["separation_witness"] == [[1, 2], [2, 3]]


def test_empty_spectrum_exits_zero():
    code, out, _ = run(["proj", spec("axis_regrading")])
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "empty" and doc["charts"] == [] and doc["dimension"] is None


def test_json_flag_writes_file_and_prints_summary(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(["proj", spec("a_minus_b"), "--json", str(target)])
    assert code == 0
    assert out.strip() == "3 charts, dimension 1, separated=false (witness [1] / [2])"
    assert json.loads(target.read_text())["command"] == "proj"


def test_stdin_spec(monkeypatch):
    text = (SPECS / "total_degree.json").read_text()
    code, out, _ = run(["proj", "-"], stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["dimension"] == 1


def test_relevance_command():
    code, out, _ = run(["relevance", spec("three_variable"), "--monomial", "2,0,0"])
    doc = json.loads(out)
    assert code == 0 and doc["relevant"] is False and doc["monomial"] == "T1^2"


@pytest.mark.parametrize(
    "args",
    [
        ["relevance", "specs/three_variable.json", "--monomial", "T1+T2"],
        ["relevance", "specs/three_variable.json", "--monomial", "1,1"],
        ["relevance", "specs/three_variable.json"],
        ["proj", "specs/does_not_exist.json"],
        ["regrade", "specs/a_minus_b.json"],
    ],
)
def test_input_errors(args, monkeypatch):
    monkeypatch.chdir(ROOT)
    code, _, err = run(args)
    assert code == EXIT_INPUT
    assert err.startswith("multiproj:")


def test_non_monomial_diagnostic(monkeypatch):
    monkeypatch.chdir(ROOT)
    _, _, err = run(["relevance", "specs/three_variable.json", "--monomial", "T1+T2"])
    assert "only decided for monomials" in err


def test_wall_point_ample_class(tmp_path):
    doc = json.loads((SPECS / "three_variable.json").read_text())
    doc["ample_class"] = [1, 1]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["chambers", str(path)])
    assert code == EXIT_INPUT and "wall" in err


def test_non_surjective_regrade_rejected(tmp_path):
    doc = json.loads((SPECS / "z2_standard.json").read_text())
    doc["regrading"]["matrix"] = [[2, 2]]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["regrade", str(path)])
    assert code == EXIT_INPUT and "not surjective" in err


def test_limits_from_environment(monkeypatch):
    monkeypatch.setenv("MULTIPROJ_LIMITS", "max_vars=1")
    assert run(["proj", spec("total_degree")])[0] == EXIT_LIMIT
    monkeypatch.setenv("MULTIPROJ_LIMITS", '{"max_rank": 1}')
    assert run(["chambers", spec("three_variable")])[0] == EXIT_LIMIT
    monkeypatch.setenv("MULTIPROJ_LIMITS", "bogus=3")
    assert run(["proj", spec("total_degree")])[0] == EXIT_INPUT
    monkeypatch.delenv("MULTIPROJ_LIMITS")
    assert run(["proj", spec("total_degree"), "--max-vars", "1"])[0] == EXIT_LIMIT


def test_limits_parsing():
    assert Limits.from_env(None) == Limits()
    assert Limits.from_env("max_vars=5, max_charts=7").max_charts == 7
    assert Limits.from_env('{"degree_bound": 3}').degree_bound == 3


def test_dot_and_polymake_exports(tmp_path):
    dot = tmp_path / "c.dot"
    assert run(["chambers", spec("three_variable"), "--dot", str(dot)])[0] == 0
    text = dot.read_text()
    assert text.startswith("graph chambers {") and "c0 -- c1" in text
    pm = tmp_path / "fan.txt"
    assert run(["proj", spec("total_degree"), "--polymake", str(pm)])[0] == 0
    lines = pm.read_text().splitlines()
    assert lines[0] == "AMBIENT_DIM 1" and "CONES" in lines
    assert sum(1 for l in lines if l.startswith("{")) == 3


def test_ray_restriction_flag():
    code, out, _ = run(["proj", spec("z2_standard"), "--ray", "1,0"])
    doc = json.loads(out)
    assert code == 0 and doc["ray_restriction"]["hypothesis_holds"] is False


def test_spec_parsing_rejects_floats_and_bad_shapes():
    base = json.loads((SPECS / "total_degree.json").read_text())
    with pytest.raises(SpecError):
        parse_spec({**base, "ample_class": [0.5]})
    with pytest.raises(SpecError):
        parse_spec({**base, "degrees": [[1, 2], [1]]})
    with pytest.raises(SpecError):
        parse_spec({**base, "grading_group": {"free_rank": 1, "torsion": [2, 3]}})
    with pytest.raises(SpecError):
        parse_spec({k: v for k, v in base.items() if k != "degrees"})
    torsion = {**base, "grading_group": {"free_rank": 1, "torsion": [2]}, "degrees": [{"free": [1], "torsion": [1]}, [1, 0]]}
    assert parse_spec(torsion).ring.group.torsion == (2,)
    assert parse_spec({**base, "ample_class": ["3/2"]}).ample_class[0].denominator == 2


def test_regraded_spec_round_trips():
    code, out, _ = run(["regrade", spec("three_variable")])
    doc = json.loads(out)
    ring = parse_spec(doc["regraded_spec"]).ring
    assert ring.free_degrees == [(1,), (2,), (1,)]
    assert dumps(doc) == out
