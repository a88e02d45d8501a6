import json
import subprocess
import sys

import pytest

from spinstat.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, RunConfig, InputError, main, parse_lambda, run
from spinstat.tableaux import Partition


def _json(argv):
    code, out = run([*argv, "--json"])
    return code, json.loads(out)


def _nu_of(doc):
    (entry,) = doc["entries"]
    return entry["nu"]


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["nu", "--f", "2,1", "--n", "3", "--twice-s", "1", "--lambda", "2,1"], 1),
        (["nu", "--f", "3", "--n", "2", "--twice-s", "1", "--lambda", "2"], 0),
        (["nu", "--f", "2", "--n", "2", "--twice-s", "1", "--lambda", "antisym"], 1),
        (["nu", "--f", "1,1", "--n", "2", "--twice-s", "1", "--lambda", "sym"], 1),
    ],
)
def test_nu(argv, expected):
    code, doc = _json(argv)
    assert code == EXIT_OK and _nu_of(doc) == expected
    assert doc["checks"]["provenance"] == "engine"
    assert isinstance(_nu_of(doc), int)


def test_nu_bad_lambda():
    code, out = run(["nu", "--f", "2,1", "--n", "3", "--twice-s", "1", "--lambda", "1,2"])
    assert code == EXIT_INPUT and "NotWeaklyDecreasing" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["nu", "--f", "2,1", "--n", "3", "--twice-s", "1", "--lambda", "2"],
        ["nu", "--f", "1,1,1,1,1", "--n", "2", "--twice-s", "1", "--lambda", "2"],
        ["nu", "--f", "2", "--n", "1", "--twice-s", "1", "--lambda", "1"],
        ["nu", "--f", "2", "--n", "2", "--twice-s", "-1", "--lambda", "2"],
        ["nu", "--f", "x", "--n", "2", "--twice-s", "1", "--lambda", "2"],
        ["table", "--f", "2", "--n", "2", "--tolerance", "0"],
        ["verify", "--n", "a"],
    ],
)
def test_invalid_input_exit_1(argv):
    assert run(argv)[0] == EXIT_INPUT


def test_usage_error_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["nu", "--f", "2"])
    assert exc.value.code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        run(["bogus"])
    assert exc.value.code == EXIT_INPUT


def test_nu_with_oracle():
    code, doc = _json(["nu", "--f", "2,1", "--n", "3", "--twice-s", "1", "--lambda", "2,1", "--oracle"])
    assert code == EXIT_OK
    assert doc["checks"]["oracle"]["nu"] == 1 and doc["checks"]["oracle"]["agrees"]


def test_nu_oracle_disagreement_exit_2():
    code, doc = _json(["nu", "--f", "4", "--n", "2", "--twice-s", "2", "--lambda", "2", "--oracle", "--nodes", "4"])
    assert code == EXIT_MISMATCH and not doc["checks"]["oracle"]["agrees"]
    code, doc = _json(["nu", "--f", "4", "--n", "2", "--twice-s", "2", "--lambda", "2", "--oracle", "--nodes", "3"])
    assert code == EXIT_MISMATCH


def test_nodes_env(monkeypatch):
    monkeypatch.setenv("SPINSTAT_NODES", "4")
    code, doc = _json(["nu", "--f", "4", "--n", "2", "--twice-s", "2", "--lambda", "2", "--oracle"])
    assert code == EXIT_MISMATCH
    monkeypatch.setenv("SPINSTAT_NODES", "x")
    assert run(["table", "--f", "4", "--n", "2"])[0] == EXIT_INPUT


def test_table_sym():
    code, doc = _json(["table", "--f", "4", "--n", "2"])
    assert code == EXIT_OK
    nonzero = [e for e in doc["entries"] if e["nu"]]
    assert nonzero == [{"lambda": [2], "nu": 1, "twice_s": 2}]
    assert doc["checks"]["dimension_consistent"] and doc["checks"]["zero_weight_dim"] == 9


def test_table_column():
    code, doc = _json(["table", "--f", "1,1,1", "--n", "3"])
    row = [e["nu"] for e in doc["entries"] if e["twice_s"] == 1]
    assert code == EXIT_OK and row == [1, 0, 0]
    assert [e["lambda"] for e in doc["entries"]] == [[3], [2, 1], [1, 1, 1]]


def test_table_empty():
    code, doc = _json(["table", "--f", "5", "--n", "2"])
    assert code == EXIT_OK and doc["entries"] == [] and doc["checks"]["weighted_sums"] == []
    code, out = run(["table", "--f", "5", "--n", "2"])
    assert "empty" in out


def test_table_unequal_spin_note():
    code, doc = _json(["table", "--f", "3,1", "--n", "2"])
    c = doc["checks"]
    assert c["dimension_consistent"] and not c["zero_weight_exhausted"]
    assert (c["dimension_count"], c["equal_spin_dim"], c["zero_weight_dim"]) == (9, 9, 15)


def test_classify():
    code, doc = _json(["classify", "--f", "3,2,1", "--n", "2"])
    (v, *_) = doc["checks"]["verdicts"]
    assert v["twice_s"] == 1 and v["verdict"] == "broken"
    assert {tuple(o["lambda"]): o["nu"] for o in v["occupied"]} == {(2,): 1, (1, 1): 1}

    code, doc = _json(["classify", "--f", "2", "--n", "2"])
    (v,) = doc["checks"]["verdicts"]
    assert v["verdict"] == "definite" and v["occupied"] == [{"lambda": [1, 1], "nu": 1, "statistics": "fermi"}]

    code, doc = _json(["classify", "--f", "2,1", "--n", "3"])
    (v,) = doc["checks"]["verdicts"]
    assert v["verdict"] == "definite" and v["occupied"][0]["lambda"] == [2, 1]
    assert v["occupied"][0]["statistics"] == "para"


def test_classify_pretty():
    code, out = run(["classify", "--f", "3,2,1", "--n", "2"])
    assert code == EXIT_OK and "s=1/2: broken" in out and "s=3/2: none" in out


def test_verify_small():
    code, doc = _json(["verify", "--max-boxes", "6", "--n", "2"])
    assert code == EXIT_OK and doc["ok"] and doc["first_divergence"] is None
    assert doc["agreeing"] == doc["multiplicities"] > 0


def test_verify_starved():
    code, doc = _json(["verify", "--max-boxes", "4", "--n", "2", "--nodes", "3"])
    assert code == EXIT_MISMATCH and doc["first_divergence"] is not None
    code, doc = _json(["verify", "--max-boxes", "4", "--n", "2", "--nodes", "4"])
    assert code == EXIT_MISMATCH and doc["first_divergence"]["kind"] == "non_integer"
    code, out = run(["verify", "--max-boxes", "4", "--n", "2", "--nodes", "4"])
    assert "NonIntegerResult" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["nu", "--f", "2,1", "--n", "3", "--twice-s", "1", "--lambda", "2,1", "--oracle"],
        ["table", "--f", "3,2,1", "--n", "2"],
        ["classify", "--f", "2,1", "--n", "3"],
        ["verify", "--max-boxes", "3", "--n", "2,3"],
    ],
)
def test_json_roundtrip_and_determinism(argv):
    _, first = run([*argv, "--json"])
    _, second = run([*argv, "--json"])
    assert first == second
    assert json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n" == first


@pytest.mark.parametrize("fmt", ["pretty", "csv"])
def test_other_formats(fmt):
    for argv in (
        ["nu", "--f", "2", "--n", "2", "--twice-s", "1", "--lambda", "1,1"],
        ["table", "--f", "2,1", "--n", "3"],
        ["classify", "--f", "3,2,1", "--n", "2"],
        ["verify", "--max-boxes", "2", "--n", "2"],
    ):
        code, out = run([*argv, "--format", fmt])
        assert code == EXIT_OK and out
    code, out = run(["table", "--f", "2,1", "--n", "3", "--csv"])
    assert out.splitlines()[0] == "twice_s,spin,3,\"2,1\",\"1,1,1\",sum_d_nu"
    assert out.splitlines()[1] == "1,1/2,0,1,0,2"


def test_out_file(tmp_path):
    path = tmp_path / "t.json"
    code, out = run(["table", "--f", "4", "--n", "2", "--json", "--out", str(path)])
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["f"] == [4]


def test_main_streams(capsys):
    assert main(["nu", "--f", "2", "--n", "2", "--twice-s", "1", "--lambda", "2"]) == EXIT_OK
    assert "= 0" in capsys.readouterr().out
    assert main(["nu", "--f", "2", "--n", "2", "--twice-s", "1", "--lambda", "1,2"]) == EXIT_INPUT
    assert "NotWeaklyDecreasing" in capsys.readouterr().err


def test_parse_lambda():
    assert parse_lambda("sym", 3) == Partition((3,))
    assert parse_lambda("antisym", 3) == Partition((1, 1, 1))
    assert parse_lambda("2,1", None) == Partition((2, 1))
    with pytest.raises(InputError):
        parse_lambda("sym", None)


def test_run_config_requirements():
    with pytest.raises(InputError):
        RunConfig("nu", f=Partition((2,)), n=2)
    with pytest.raises(InputError):
        RunConfig("verify")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spinstat", "nu", "--f", "2,1", "--n", "3", "--twice-s", "1", "--lambda", "2,1", "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["entries"][0]["nu"] == 1
    proc = subprocess.run(
        [sys.executable, "-m", "spinstat", "nu", "--f", "2,1", "--n", "3", "--twice-s", "1", "--lambda", "1,2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
