"""Command-line plans, exit codes, and artifact formats."""

import json

import pytest

from wildram import cli
from wildram.errors import UsageError


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def _write_cover(tmp_path, name="cover.json"):
    obj = {"field": {"p": 2, "e": 1, "modulus": [0, 1]},
           "operator": {"witt": 1},
           "rhs": [[[3, [1]]]],
           "label": "cubic"}
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_parse_plan_validation():
    with pytest.raises(UsageError):
        cli.parse_plan(["field", "--p", "6", "--e", "1"])
    with pytest.raises(UsageError):
        cli.parse_plan(["field", "--p", "3", "--e", "0"])
    with pytest.raises(UsageError):
        cli.parse_plan(["rayclass-orders", "--p", "2", "--e", "1"])
    with pytest.raises(UsageError):
        cli.parse_plan(["rayclass-orders", "--p", "2", "--e", "1",
                        "--ms", "3,x"])
    with pytest.raises(UsageError):
        cli.parse_plan(["rayclass-orders", "--p", "2", "--e", "1",
                        "--m-max", "5", "--jobs", "0"])
    with pytest.raises(UsageError):
        cli.parse_plan(["reproduce-table", "--p", "3", "--e", "2"])
    with pytest.raises(UsageError):
        cli.parse_plan(["no-such-command"])
    plan = cli.parse_plan(["rayclass-orders", "--p", "2", "--e", "1",
                           "--ms", "7,3,3"])
    assert plan.params["ms"] == [3, 7]


def test_exit_codes(tmp_path, capsys):
    code, _ = _run(["field", "--p", "7", "--e", "1"], capsys)
    assert code == 0
    code, _ = _run(["field", "--p", "9", "--e", "1"], capsys)
    assert code == 2
    # a computational failure: missing input file
    code, _ = _run(["cover-analyze", str(tmp_path / "absent.json")],
                   capsys)
    assert code == 1


def test_field_output(capsys):
    code, out = _run(["field", "--p", "5", "--e", "4"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["p"] == 5 and payload["e"] == 4
    assert payload["modulus"] == [1, 0, 1, 1, 1]


def test_cover_analyze(tmp_path, capsys):
    path = _write_cover(tmp_path)
    code, out = _run(["cover-analyze", path], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["label"] == "cubic"
    assert payload["conductor"] == 4
    assert payload["degree"] == 2
    assert payload["genus"] == 1
    assert payload["levels"] == [[4, 2]]
    assert payload["upper_breaks"] == [[3, 1, 2]]
    assert payload["splits"] == "1 of 2 places"


def test_adjoint(tmp_path, capsys):
    obj = {"field": {"p": 3, "e": 2, "modulus": [1, 0, 1]},
           "poly": [[4, [1, 0]], [1, [2, 0]]]}
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(obj))
    code, out = _run(["adjoint", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["kernel_dim"] == 2
    assert payload["kernel_dim_rational"] == 0
    assert payload["adjoint"] == [[1, 0], [0, 0], [1, 0]]


def test_basechange(tmp_path, capsys):
    path = _write_cover(tmp_path)
    code, out = _run(["basechange", path, "--sub", "[1,1]"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["sub_degree"] == 2
    assert payload["before"]["conductor"] == 4
    assert payload["before"]["genus"] == 1
    assert payload["after"]["conductor"] == 6
    assert payload["after"]["genus"] == 2
    assert payload["after"]["splits"] == "all q places"
    exps = {term[0] for term in payload["cover"]["rhs"][0]}
    assert exps == {3, 4, 5, 6}


def test_rayclass_orders_csv(tmp_path, capsys):
    out_path = tmp_path / "orders.csv"
    code, _ = _run(["rayclass-orders", "--p", "2", "--e", "1",
                    "--ms", "4,7", "--out", str(out_path)], capsys)
    assert code == 0
    text = out_path.read_text()
    assert text.splitlines() == ["m,order_exp,exponent,invariants,N_m",
                                 "4,1,2,2,5",
                                 "7,3,4,4;2,17"]


def test_rayclass_orders_jobs_identical(tmp_path, capsys):
    argv = ["rayclass-orders", "--p", "3", "--e", "1", "--m-max", "8"]
    _, seq = _run(argv, capsys)
    _, par = _run(argv + ["--jobs", "4"], capsys)
    assert seq == par


def test_rayclass_m2(capsys):
    code, out = _run(["rayclass-m2", "--p", "2", "--e", "2"], capsys)
    assert code == 0 and out == "7\n"
    code, out = _run(["rayclass-m2", "--p", "3", "--e", "1",
                      "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out) == {"p": 3, "e": 1, "m2": 13}


def test_resource_cap_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WR_RESOURCE_CAP", "10")
    code, _ = _run(["rayclass-orders", "--p", "5", "--e", "4",
                    "--ms", "131"], capsys)
    assert code == 1
    monkeypatch.setenv("WR_RESOURCE_CAP", "banana")
    code, _ = _run(["rayclass-orders", "--p", "2", "--e", "1",
                    "--ms", "4"], capsys)
    assert code == 2


def test_family_build_output(capsys):
    code, out = _run(["family-build", "--p", "3", "--e", "2",
                      "--kind", "jump2-even"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "jump2-even"
    assert payload["notes"]["m2"] == 13
    assert payload["tower"]["genus"] == 3864
    assert payload["tower"]["degree"] == 729
    assert payload["tower"]["levels"] == [[5, 3, 3], [11, 9, 27],
                                          [12, 9, 243], [13, 3, 729]]
    assert len(payload["items"]) == len(
        {item["label"] for item in payload["items"]})


def test_bigaction_check(tmp_path, capsys):
    obj = {"p": 3,
           "filtration": {"numbering": "lower",
                          "segments": [[1, 1, 27], [4, 1, 3]]},
           "v": 2, "g2_invariants": [3], "s": 1}
    path = tmp_path / "profile.json"
    path.write_text(json.dumps(obj))
    code, out = _run(["bigaction-check", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["is_big"] is True
    assert payload["ratio1"] == [9, 1]
    assert payload["ratio2"] == [3, 1]
    verdicts = {row["rule"]: row["verdict"] for row in payload["sieve"]}
    assert set(verdicts.values()) == {"pass"}
    # strict mode propagates missing declarations as a computational error
    obj.pop("g2_invariants")
    path.write_text(json.dumps(obj))
    code, _ = _run(["bigaction-check", str(path), "--strict"], capsys)
    assert code == 1


def test_repeat_invocation_is_deterministic(tmp_path, capsys):
    path = _write_cover(tmp_path)
    argv = ["cover-analyze", path]
    _, first = _run(argv, capsys)
    _, second = _run(argv, capsys)
    assert first == second
