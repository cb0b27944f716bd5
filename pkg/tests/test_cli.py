import json
import subprocess
import sys

import pytest

from northcott.cli import JobSpec, main, run


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_northcott_equality(capsys):
    code, doc = run_json(capsys, "northcott", "--dim", "2", "--ideals", "x,y | x^2,y")
    assert code == 0
    assert doc["result"]["slack"] == 0 and doc["result"]["equality"] is True
    assert doc["tool"] == "northcott" and "schema_version" in doc
    assert doc["job"]["ideals"] == "x,y | x^2,y"


def test_northcott_violation_in_dimension_one(capsys):
    code, doc = run_json(capsys, "northcott", "--relations", "x^2", "--ideals", "x,y | x,y")
    assert code == 0
    assert doc["result"]["inequality_holds"] is False
    assert doc["result"]["br"] == [4, 1, -1]


def test_reduction(capsys):
    code, doc = run_json(capsys, "reduction", "--matrix-N", "[[x,y,0],[0,x,y]]", "--module", "x,y | x,y")
    assert code == 0 and doc["result"]["reduction_number"] == 1


def test_json_is_deterministic(capsys):
    argv = ["sally", "--module", "x,y | x,y", "--n", "2", "--seed", "4"]
    first = run_json(capsys, *argv)
    second = run_json(capsys, *argv)
    assert first == second


def test_bf_and_hs(capsys):
    _, doc = run_json(capsys, "bf", "--ideals", "x,y | x^2,y")
    assert doc["result"]["values"] == [3, 13, 34, 70]
    _, doc = run_json(capsys, "bf", "--ideals", "x,y | x^2,y", "--method", "linear", "--n", "2")
    assert doc["result"]["values"] == [3, 13]
    _, doc = run_json(capsys, "hs", "--ideals", "x^3,x^2y^4,xy^5,y^7")
    assert doc["result"]["summands"][0]["e"] == [21, 6, 1]


def test_verify_joint(capsys):
    code, doc = run_json(capsys, "verify", "--identity", "joint", "--ideals", "x,y | x^2,y", "--a", "x", "--b", "y")
    assert code == 0 and doc["result"]["holds"] is True


def test_search_csv(capsys):
    code = main(["search", "--r", "2", "--trials", "3", "--seed", "1", "--format", "csv"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("seed,trial,tuple")
    assert len(lines) == 4


def test_parse_error_exit_code(capsys):
    code = main(["northcott", "--ideals", "x,w"])
    err = capsys.readouterr().err
    assert code == 1 and "parse error" in err and "column" in err


def test_missing_subcommand_is_an_error(capsys):
    assert main([]) == 1


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["northcott", "--ideals", "x,y | x,y", "--format", "json", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["result"]["slack"] == 0
    assert capsys.readouterr().out == ""


def test_run_api():
    report = run(JobSpec(command="bhatt", ideals="x,y | x^2,y"))
    assert report.exit_code == 0
    with pytest.raises(ValueError):
        run(JobSpec(command="nothing"))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "northcott", "northcott", "--ideals", "x,y | x^2,y"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "slack" in proc.stdout


def test_search_violation_exit_code(monkeypatch, capsys):
    import northcott.cli as cli
    from northcott.search import SearchRecord, SearchResult

    bad = SearchRecord(0, 0, "x,y | x,y", 2, 2, 4, 1, 2, -1, "violation")
    monkeypatch.setattr(cli, "search", lambda *a, **k: SearchResult(records=[bad]))
    assert main(["search", "--trials", "1"]) == 2
    assert "violation" in capsys.readouterr().out
