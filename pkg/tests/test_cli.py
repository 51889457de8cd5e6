import json
import subprocess
import sys
from pathlib import Path

import pytest

from gerst.cli import BAD_INPUT, FOUND, OK, main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_glue_isos(capsys):
    code, out = run_json(capsys, "glue", "isos", DATA / "ideals_two_isos.json")
    assert code == OK
    assert out["count"] == 2
    assert [iso["c"] for iso in out["isos"]] == [[[1, 1], [0, 3], [3, 0]], [[1, 1], [3, 0], [0, 3]]]


def test_glue_check_counterexample(capsys):
    code, out = run_json(capsys, "glue", "check", DATA / "n4counterexample.json")
    assert code == FOUND
    assert out["valid"] and out["counterexample"]
    assert out["dimension"] == 4


def test_glue_scaffold(capsys):
    code, out = run_json(capsys, "glue", "scaffold", DATA / "n4counterexample.json")
    assert code == OK and out["schema"] == 1


def test_oracle_dim(capsys):
    code, out = run_json(capsys, "oracle", "dim", DATA / "n4counterexample.json", "--matrices")
    assert code == FOUND
    assert (out["dimN"], out["dimAlg"], out["holds"]) == (4, 5, False)
    assert len(out["matrices"]) == 4


def test_plan_canonical(capsys):
    code, out = run_json(capsys, "plan", "canonical", DATA / "three_piece_plan.json")
    assert code == OK
    assert out["bz"] == [0, 1, 0]


def test_plan_check_and_rightfree(capsys):
    code, out = run_json(capsys, "plan", "check", DATA / "three_piece_plan.json")
    assert code == OK and out["valid"]
    code, out = run_json(capsys, "plan", "rightfree", DATA / "three_piece_plan.json")
    assert code == OK
    assert out["hb"] == [0, 1, 0] and not out["right_free"]


def test_plan_reduce(capsys):
    code, out = run_json(capsys, "plan", "reduce", DATA / "slice_plan.json")
    assert code == OK
    assert [len(p["nu"]) for p in out] == [2, 2, 0]
    assert out[1]["b"] == [[1, 0], [0, 1]]


def test_shapes_commands(capsys):
    code, out = run_json(capsys, "shapes", "validate", DATA / "shape_2d.json")
    assert code == OK and out["skew"] and out["components"] == 2
    code, out = run_json(capsys, "shapes", "components", DATA / "shape_2d.json")
    assert len(out["components"]) == 2
    code, out = run_json(capsys, "shapes", "normalize", DATA / "shape_2d.json")
    assert min(c[0] for c in out["cells"]) == 0


def test_pretty_and_output(capsys, tmp_path):
    target = tmp_path / "out.txt"
    code, out = run(capsys, "shapes", "normalize", DATA / "shape_2d.json", "--pretty", "-o", target)
    assert code == OK and out == ""
    text = target.read_text()
    assert "[0, 2]" in text and "#" in text


def test_search_rightfree(capsys):
    code, out = run_json(capsys, "search", "rightfree", "--max-components", 2,
                         "--max-cells", 3, "--box", "3x3")
    assert code == OK and out["witnesses"] == []


def test_campaign_run(capsys):
    code, out = run_json(capsys, "campaign", "run", "hb-chains", "--bounds",
                         '{"max_components": 2, "max_cells": 3, "box": [3, 3, 2]}')
    assert code == OK and out["violations"] == []
    code, out = run_json(capsys, "campaign", "run", "hb-chains", "--bounds",
                         '{"max_components": 2, "max_cells": 5, "box": [2, 2, 2]}')
    assert code == FOUND and out["violations"]


@pytest.mark.parametrize("argv,location", [
    (["campaign", "run", "hb-chains", "--bounds", '{"bogus": 1}'], "$"),
    (["campaign", "run", "hb-chains", "--bounds", "{"], "--bounds"),
    (["search", "rightfree", "--box", "3x3x3"], "--box"),
    (["search", "rightfree", "--shards", "2", "--shard", "2"], "--shard"),
])
def test_bad_arguments(capsys, argv, location):
    code, out = run_json(capsys, *argv)
    assert code == BAD_INPUT
    assert out["error"] == "parse" and out["location"] == location


def test_parse_error_reports_file(capsys, tmp_path):
    bad = tmp_path / "plan.json"
    bad.write_text(json.dumps({"schema": 1, "nu": [], "b": [], "c": [], "extra": 0}))
    code, out = run_json(capsys, "plan", "canonical", bad)
    assert code == BAD_INPUT
    assert out == {"error": "parse", "file": str(bad), "location": "$",
                   "clause": "unknown field 'extra'"}


def test_invalid_gluing_is_bad_input(capsys, tmp_path):
    doc = json.loads((DATA / "n4counterexample.json").read_text())
    doc["b"][0] = [0, 0, 0, 0]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(doc))
    code, out = run_json(capsys, "glue", "check", path)
    assert code == FOUND and not out["valid"]
    code, out = run_json(capsys, "oracle", "dim", path)
    assert code == BAD_INPUT


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gerst", "plan", "canonical",
                          str(DATA / "three_piece_plan.json")],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["bz"] == [0, 1, 0]


def test_usage_error_exit_code():
    res = subprocess.run([sys.executable, "-m", "gerst", "campaign", "run", "nope"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 2
