import json
import subprocess
import sys

import pytest

from hnp.cli import SCHEMA_NAME, SCHEMA_VERSION, main, parse_report, render_json, split_generator_list
from hnp.obstruction import ExtensionProblem, decide
from hnp.tables import TABLES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, (json.loads(out) if out.strip() else None), err


def test_split_generator_list():
    assert split_generator_list("[(1,2)(3,4),(1,3)(2,4)]") == ["(1,2)(3,4)", "(1,3)(2,4)"]
    assert split_generator_list("(1,2,3)") == ["(1,2,3)"]
    assert split_generator_list("[]") == []
    assert split_generator_list("[(1,2), ()]") == ["(1,2)", "()"]


def test_decide_a4(capsys):
    code, data, _ = run_json(capsys, "decide", "--ambient", "A4", "--H", "(1,2)(3,4)",
                             "--ramified", "[(1,2)(3,4),(1,3)(2,4)]")
    assert code == 0
    assert data["schema"] == SCHEMA_NAME and data["version"] == SCHEMA_VERSION
    r = data["result"]
    assert (r["knot"]["name"], r["h1"]["name"], r["wa_defect"]["name"]) == ("0", "Z/2", "Z/2")
    assert r["rule_trace"]


def test_decide_text(capsys):
    code, out, _ = run(capsys, "decide", "--ambient", "A6", "--H", "(1,2,3,4)(5,6)",
                       "--ramified", "[(1,2,3,4)(5,6),(1,3)(5,6)]")
    assert code == 0
    assert "knot group : Z/3" in out and "H^1        : Z/6" in out and "WA defect  : Z/2" in out


def test_fgh_a12(capsys):
    code, out, _ = run(capsys, "fgh", "--ambient", "A12", "--H", "(1,2,3)(4,5,6,7,8,9,10,11,12)")
    assert code == 0 and out.strip() == "fgh: Z/3"


@pytest.mark.parametrize("cmd,expected", [("firstobs", "0"), ("knot", "0"), ("h1", "Z/2"), ("wa", "Z/2")])
def test_single_value_commands(capsys, cmd, expected):
    code, data, _ = run_json(capsys, cmd, "--ambient", "A4", "--H", "(1,2)(3,4)",
                             "--ramified", "[(1,2)(3,4),(1,3)(2,4)]")
    assert code == 0 and data["result"]["value"]["name"] == expected


def test_h1_method_flag(capsys):
    code, out, _ = run(capsys, "h1", "--ambient", "S4", "--H", "(1,2)(3,4)", "--method", "both")
    assert code == 0 and out.strip() == "h1: Z/2"
    code, _, err = run(capsys, "h1", "--ambient", "A6", "--H", "(1,2,3)", "--method", "cover")
    assert code == 1 and "A_6" in err


def test_explicit_group(capsys):
    code, out, _ = run(capsys, "fgh", "--G", "[(1,2,3,4),(1,3)]", "--degree", "4", "--H", "(1,3)")
    assert code == 0 and out.startswith("fgh: ")


def test_tables_s4(capsys):
    code, data, _ = run_json(capsys, "tables", "s4")
    assert code == 0
    rows = data["result"]["tables"]["s4"]
    assert len(rows) == 10 and all(r["match"] for r in rows)
    assert [r["h1"] for r in rows] == [r.h1 for r in TABLES["s4"]]


def test_tables_text_layout(capsys):
    code, out, _ = run(capsys, "tables", "a4")
    assert code == 0
    assert "[K:k]" in out and "H^1" in out and "all rows match" in out


def test_tables_mismatch_exits_nonzero(capsys, monkeypatch):
    from hnp import tables

    bad = list(TABLES["a4"])
    bad[0] = bad[0]._replace(h1="Z/3")
    monkeypatch.setitem(tables.TABLES, "a4", bad)
    code, out, _ = run(capsys, "tables", "a4")
    assert code == 1 and "MISMATCH" in out


def test_json_round_trip():
    prob = ExtensionProblem.natural(4, "A", ["(1,2)(3,4)"], [["(1,2)(3,4)", "(1,3)(2,4)"]])
    rep = decide(prob)
    assert parse_report(render_json("decide", rep.to_json())) == rep


def test_json_round_trip_from_cli(capsys):
    code, out, _ = run(capsys, "--format", "json", "decide", "--ambient", "S5", "--H", "(1,2,3)")
    assert code == 0
    rep = parse_report(out)
    assert rep.to_json() == json.loads(out)["result"]
    assert parse_report(render_json("decide", rep.to_json())) == rep


def test_input_file(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"ambient": {"n": 4, "kind": "A"}, "H": {"generators": ["(1,2)(3,4)"]},
                             "ramified": [{"generators": ["(1,2)(3,4)", "(1,3)(2,4)"]}]}))
    code, data, _ = run_json(capsys, "decide", "--input", str(f))
    assert code == 0 and data["result"]["knot"]["name"] == "0"


def test_schema_errors_use_json_pointers(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"ambient": {"n": 4, "kind": "A"}, "H": {"generators": [7]},
                             "ramified": [{"gens": []}]}))
    code, _, err = run(capsys, "decide", "--input", str(f))
    assert code == 2
    assert "/H/generators/0" in err and "/ramified/0" in err


def test_usage_errors(capsys):
    assert run(capsys, "decide", "--ambient", "B4", "--H", "")[0] == 2
    assert run(capsys, "decide", "--ambient", "A4", "--H", "()")[0] == 2
    assert run(capsys, "decide", "--ambient", "A4", "--H", "(1,2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "decide")[0] == 2


def test_domain_errors(capsys):
    code, _, err = run(capsys, "decide", "--ambient", "A4", "--H", "(1,2)")
    assert code == 1 and "not a subgroup" in err
    code, _, err = run(capsys, "knot", "--G", "[(1,2,3,4),(1,3)]", "--degree", "4", "--H", "")
    assert code == 1
    code, _, _ = run(capsys, "census", "9")
    assert code == 1


def test_oracle_command(capsys, monkeypatch):
    code, data, _ = run_json(capsys, "oracle", "--ambient", "A4", "--H", "(1,2)(3,4)", "--sandwich")
    assert code == 0
    r = data["result"]
    assert r["sha_omega2"]["name"] == "Z/2" and r["fgh"]["name"] == "Z/2" and r["sandwich"] is True
    monkeypatch.setenv("HNP_ORACLE_BUDGET", "100")
    code, _, err = run(capsys, "oracle", "--ambient", "A4", "--H", "")
    assert code == 1 and "budget" in err


def test_census_command(capsys):
    code, data, _ = run_json(capsys, "census", "4")
    assert code == 0 and data["result"]["all_verdicts_true"]
    assert len(data["result"]["records"]) == 5


def test_examples_command(capsys):
    code, data, _ = run_json(capsys, "examples", "--max-k", "2", "--max-n", "13")
    assert code == 0
    r = data["result"]
    assert [e["fgh"] for e in r["elementary_2"]] == ["0", "Z/2", "Z/2 x Z/2"]
    assert [e["n"] for e in r["three_torsion"]] == [12, 13]
    assert all(e["fgh"] == "Z/3" for e in r["three_torsion"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hnp", "fgh", "--ambient", "A4", "--H", "(1,2)(3,4)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "fgh: Z/2"
