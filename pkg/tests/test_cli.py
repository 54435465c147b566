#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import io
import json
import os

import pytest

from jackkit import engine_config, identities
from jackkit.engine_config import CACHE_ENV
from jackkit.symfun import SymFun
from main import EXIT_OK, EXIT_SUITE_FAILURE, EXIT_VALIDATION, run


def invoke(*argv):
    stdout = io.StringIO()
    code = run(list(argv), stdout=stdout)
    return code, stdout.getvalue()


def test_jack_schur_output():
    code, out = invoke("jack", "--lambda", "[2,1]", "--n", "3", "--theta", "1")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data == {"n": 3, "terms": [{"exp": [2, 1, 0], "coef": "1"}, {"exp": [1, 1, 1], "coef": "2"}]}
    assert SymFun.from_json(data) == SymFun(3, {(2, 1, 0): 1, (1, 1, 1): 2})
    assert invoke("jack", "--lambda", "[2,1]", "--n", "3", "--theta", "1")[1] == out


def test_jack_oracle_matches_branching():
    _, branching = invoke("jack", "--lambda", "[2,1]", "--n", "3", "--theta", "1/2")
    _, oracle = invoke("jack", "--lambda", "[2,1]", "--n", "3", "--theta", "1/2", "--oracle")
    assert branching == oracle


def test_jack_formats():
    code, out = invoke("jack", "--lambda", "[2,1]", "--n", "3", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "exp,coef"
    assert len(out.splitlines()) == 3
    code, out = invoke("jack", "--lambda", "[1]", "--format", "pretty")
    assert out == "1·m1\n"


@pytest.mark.parametrize("argv", [
    ["jack", "--lambda", "[2;1]"],
    ["jack", "--lambda", "[1,2]"],
    ["jack", "--lambda", "[13]"],
    ["jack", "--lambda", "[1]", "--n", "11"],
    ["jack", "--lambda", "[1]", "--theta", "-1"],
    ["jack", "--lambda", "[2,1,0]", "--n", "2"],
    ["jack"],
    ["nonsense"],
    ["identities", "--suite", "norm", "--n", "3"],
])
def test_validation_errors(argv, capsys):
    code = run(argv, stdout=io.StringIO())
    assert code == EXIT_VALIDATION
    assert "错误" in capsys.readouterr().err


def test_identities_success():
    code, out = invoke("identities", "--suite", "cauchy", "--theta", "1/2", "--n", "2", "--m", "2",
                       "--degree", "3")
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["success"]
    assert result["suite"] == "cauchy"


def test_identities_failure_prints_counterexample(monkeypatch):
    def broken(theta, n=2, m=2, degree=3):
        return {"success": False, "message": "Cauchy 恒等式不成立", "counterexample": {"degree": degree},
                "suite": "cauchy", "checked": 0}

    monkeypatch.setitem(identities.SUITES, "cauchy", broken)
    code, out = invoke("identities", "--suite", "cauchy", "--degree", "2", "--format", "csv")
    assert code == EXIT_SUITE_FAILURE
    assert json.loads(out)["counterexample"] == {"degree": 2}


def test_psi_and_pstar():
    code, out = invoke("psi", "--lambda", "[2,1,0]", "--mu", "[2,1]", "--theta", "1/2")
    assert code == EXIT_OK
    assert json.loads(out)["psi"] == "1"
    code, out = invoke("pstar", "--mu", "[1]", "--n", "2", "--at", "[1]", "--theta", "1")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == "1"
    code, out = invoke("pstar", "--mu", "[1]", "--n", "2", "--at", "[0,0]")
    assert json.loads(out)["value"] == "0"


def test_binomial_check():
    code, out = invoke("binomial", "--lambda", "[2,0,-1]", "--k", "1", "--degree", "2", "--check",
                       "--theta", "1/2")
    assert code == EXIT_OK
    assert json.loads(out)["success"]
    code, out = invoke("binomial", "--lambda", "[1,0]", "--theta", "1")
    data = json.loads(out)
    assert data["degree"] == 1
    assert {"mu": [], "coef": "1"} in data["coefficients"]


def test_links_and_measure():
    code, out = invoke("links", "--lambda", "[1,0]", "--theta", "1")
    assert code == EXIT_OK
    assert json.loads(out)["children"] == [{"mu": [1], "weight": "1/2"}, {"mu": [0], "weight": "1/2"}]
    code, out = invoke("links", "--lambda", "[1]", "--n", "3", "--k", "1", "--format", "csv")
    assert out.splitlines() == ["nu,weight", "[1],1/3", "[0],2/3"]
    code, out = invoke("measure", "--lambda", "[1,0]", "--theta", "1")
    data = json.loads(out)
    assert data["measure"] == {"support": [0, 1], "masses": ["1/2", "1/2"]}
    assert data["second_moment"] == "1/2"
    code, out = invoke("measure", "--lambda", "[" + ",".join(["1"] + ["0"] * 39) + "]", "--float")
    assert code == EXIT_OK
    assert json.loads(out)["measure"]["support"] == [0, 1]


def test_converge(tmp_path):
    config = {"theta": "1/2", "sequence": {"kind": "zero"}, "k": 1, "n_list": [3, 5],
              "grid": {"order": 8, "random_points": 4, "seed": 0}, "moments_k": 2}
    path = tmp_path / "exp.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    summary_path = tmp_path / "summary.json"
    code, out = invoke("converge", "--config", str(path), "--format", "csv", "--summary", str(summary_path))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "# theta=1/2"
    assert lines[3] == "n,sup_error,moment_err_1,moment_err_2"
    summary = json.loads(summary_path.read_text(encoding="utf-8"))
    assert [row["n"] for row in summary["rows"]] == [3, 5]
    assert invoke("converge", "--config", str(tmp_path / "missing.json"))[0] == EXIT_VALIDATION


def test_cache_dir(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv(CACHE_ENV, str(cache))
    first = invoke("jack", "--lambda", "[2,1]", "--n", "3", "--theta", "1/2")
    files = os.listdir(cache)
    assert len(files) == 1
    assert invoke("jack", "--lambda", "[2,1]", "--n", "3", "--theta", "1/2") == first
    assert os.listdir(cache) == files


def test_engine_config_flag(tmp_path):
    path = tmp_path / "custom.json"
    path.write_text(json.dumps({"limits": {"max_part": 1}}), encoding="utf-8")
    code = run(["jack", "--lambda", "[2]", "--engine-config", str(path)], stdout=io.StringIO())
    assert code == EXIT_VALIDATION


def test_converge_bad_value(tmp_path):
    path = tmp_path / "exp.json"
    path.write_text(json.dumps({"theta": "1/2", "sequence": {"kind": "zero"}, "n_list": ["many"]}),
                    encoding="utf-8")
    assert invoke("converge", "--config", str(path))[0] == EXIT_VALIDATION


@pytest.mark.parametrize("argv", [
    ["jack", "--lambda", "[]", "--n", "0"],
    ["jack", "--lambda", "[1]", "--n", "0"],
    ["pstar", "--mu", "[]", "--n", "0"],
])
def test_zero_variables_rejected(argv):
    assert invoke(*argv)[0] == EXIT_VALIDATION


def test_unbalanced_brackets_rejected():
    assert invoke("jack", "--lambda", "[2,1", "--n", "3")[0] == EXIT_VALIDATION


def test_engine_config_written_only_by_cli(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(engine_config.CONFIG_ENV, raising=False)
    manager = engine_config.EngineConfigManager()
    assert manager.get_limit("max_part") == 12
    assert not (tmp_path / engine_config.DEFAULT_CONFIG_FILE).exists()

    monkeypatch.setattr(engine_config, "_config_manager", manager)
    assert invoke("jack", "--lambda", "[1]", "--n", "1")[0] == EXIT_OK
    assert (tmp_path / engine_config.DEFAULT_CONFIG_FILE).exists()
