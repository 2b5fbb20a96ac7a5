import json
import os
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from csl.cli import emit_report, main, make_report, run
from csl.invariants import model_diagram
from csl.openbook import new_trivial, stabilize


def ok(argv):
    code, text = run(argv)
    assert code == 0, text
    return json.loads(text)["payload"]


def test_spec_examples():
    assert ok(["ncf", "expand", "-8/5"]) == {"entries": [-2, -3, -2]}
    p = ok(["openbook", "inadmissible", "--genus", "1", "--slope", "8/11"])
    assert p["plan"]["history"] == ["T-", "T-", "S", "T+", "S", "T+", "T+"]
    assert p["west"] == "8/11"
    code, text = run(["ncf", "expand", "3/2"])
    rep = json.loads(text)
    assert code == 1 and rep["error"] == {"code": "domain", "message": "slope must be negative"}
    code, text = run(["invariants", "pack", "--model", "1", "3", "--format", "text"])
    assert code == 0 and "d3 = 1/3" in text.splitlines()
    code, text = run(["classify", "transverse", "--preset", "T(-2,3)", "--slope", "5",
                      "--format", "text"])
    assert text.splitlines()[0] == "OVERTWISTED (Thm all-OT-surgeries; Cor negative-torus)"


def test_empty_notes_report():
    text = emit_report(make_report("x", {"a": 1}))
    assert json.loads(text)["notes"] == [] and json.loads(text)["schema"] == "csl/1"


@pytest.mark.parametrize("argv", [
    ["farey", "sum", "inf", "0"],
    ["farey", "sum", "1", "2", "--times", "2", "--literal"],
    ["farey", "path", "-1", "-8/5"],
    ["farey", "label", "--ops", "S,N,S,N", "--position", "-1"],
    ["ncf", "eval", "-2,-3,-1"],
    ["ncf", "eval", "-2", "-3", "-2"],
    ["openbook", "admissible", "--genus", "0", "--slope", "-8/5"],
    ["openbook", "lutz", "--kind", "full"],
    ["openbook", "lutz", "--kind", "quarter", "--n", "-2"],
    ["openbook", "shift", "--k", "3,1,2", "--to-zero"],
    ["openbook", "shift", "--k", "2,2", "--i", "1", "--j", "2"],
    ["convert", "t2c", "--tb", "-2", "--slope", "-1"],
    ["convert", "c2t", "--tb", "1", "--coefficient", "1/3"],
    ["convert", "dg", "--coefficient", "-8/5"],
    ["convert", "dg", "--coefficient", "3", "--tb", "-1", "--topological"],
    ["convert", "stabshift", "--tb", "1", "--rot", "0", "--n", "1"],
    ["invariants", "tbq", "--contact", "-5", "0", "1"],
    ["invariants", "rotq", "--contact", "-3", "0", "2"],
    ["invariants", "order", "--contact", "-5", "0", "2"],
    ["invariants", "signature", "--matrix", "[[2,1],[1,-1]]"],
    ["invariants", "dual", "--t", "-5", "--r", "0", "--n", "1", "--g", "1"],
    ["classify", "contact", "--preset", "K(2,1)", "--n", "3"],
    ["classify", "width", "--preset", "right-trefoil"],
    ["classify", "interval", "--preset", "T(-2,3)"],
    ["classify", "connectsum", "--a", "8_20", "--b", "9_46"],
    ["classify", "link", "--k", "1,1"],
])
def test_commands_succeed_deterministically(argv):
    code, first = run(argv)
    assert code == 0, first
    assert run(argv) == (code, first)
    rep = json.loads(first)
    # canonical serialization: re-emitting the parsed value is byte identical
    assert json.dumps(rep, sort_keys=True, indent=2) + "\n" == first


def test_values():
    assert ok(["farey", "sum", "inf", "0", "--north-b"])["sum"] == "-1"
    assert ok(["farey", "path", "-1", "-8/5"])["path"] == ["-1", "-3/2", "-8/5"]
    assert ok(["farey", "label", "--ops", "S,N,S,N", "--position", "-1"])["label"] == "-8/5"
    assert ok(["convert", "t2c", "--tb", "-2", "--slope", "-1"])["coefficient"] == "1"
    assert ok(["invariants", "tbq", "--contact", "-5", "0", "1"]) == {"tb_q": "5/4"}
    assert ok(["invariants", "rotq", "--contact", "-3", "0", "2"]) == {"rot_q": "-3"}
    assert ok(["invariants", "order", "--contact", "-5", "0", "2"]) == {"order": 3}
    assert ok(["classify", "width", "--preset", "right-trefoil"]) == {"width": "1"}
    # topological 1 on tb -1 is contact +2: one (+1) push-off and one stabilised (-1)
    dg = ok(["convert", "dg", "--coefficient", "1", "--tb", "-1", "--topological"])
    assert dg["plus_count"] == 1 and len(dg["entries"]) == 2


def test_file_inputs(tmp_path):
    plan = stabilize(new_trivial(1, 2))
    f = tmp_path / "plan.json"
    f.write_text(json.dumps(plan.to_dict()))
    p = ok(["openbook", "capoff", "--plan", str(f), "--component", "B1"])
    assert p["plan"]["page"]["boundaries"] == ["K", "S1"]
    p = ok(["openbook", "inadmissible", "--plan", str(f), "--slope", "1", "--original"])
    assert p["west"] == "1"
    d = tmp_path / "d.json"
    d.write_text(json.dumps(model_diagram(1, 3).to_dict()))
    assert ok(["invariants", "pack", "--diagram", str(d)])["d3"] == "1/3"
    k = tmp_path / "k.json"
    k.write_text(json.dumps({"g": 1, "sl_max": -6}))
    assert ok(["classify", "transverse", "--knot", str(k), "--slope", "2"])["outcome"] == \
        "Overtwisted"


def test_batch(tmp_path):
    f = tmp_path / "b.json"
    f.write_text(json.dumps([{"op": "link", "k": [2, 3]},
                             {"op": "transverse", "preset": "right-trefoil", "slope": "2"},
                             {"op": "bogus"}]))
    out = ok(["classify", "--batch", str(f)])
    assert [r["status"] for r in out] == ["ok", "ok", "error"]
    assert out[1]["result"]["outcome"] == "TightNonVanishing"


@pytest.mark.parametrize("argv,code", [
    ([], 2),
    (["bogus"], 2),
    (["ncf", "expand"], 2),
    (["ncf", "expand", "x/y"], 2),
    (["ncf", "expand", "-1/2", "--unknown"], 2),
    (["ncf", "eval", "a,b"], 2),
    (["openbook", "shift", "--k", "1,2", "--i", "9", "--j", "1"], 2),
    (["invariants", "pack"], 2),
    (["invariants", "signature", "--matrix", "[[1,2],[3"], 2),
    (["invariants", "signature", "--matrix", "[[1,2],[3,4]]"], 1),
    (["invariants", "tbq", "--contact", "-1", "0", "1"], 1),
    (["classify", "transverse", "--slope", "1"], 2),
    (["classify", "width", "--preset", "figure-eight"], 1),
    (["convert", "t2c", "--tb", "3", "--slope", "3"], 1),
    (["openbook", "capoff", "--plan", "/nonexistent", "--component", "K"], 2),
])
def test_error_codes(argv, code):
    got, text = run(argv)
    assert got == code, text
    rep = json.loads(text)
    assert rep["status"] == "error" and rep["error"]["code"] and rep["error"]["message"]


def test_env_var_and_flag_precedence(monkeypatch):
    monkeypatch.setenv("CSL_OUTPUT", "text")
    assert run(["ncf", "expand", "-2"])[1] == "entries = [-2]\n"
    assert json.loads(run(["ncf", "expand", "-2", "--format", "json"])[1])["status"] == "ok"
    monkeypatch.setenv("CSL_OUTPUT", "garbage")
    assert json.loads(run(["ncf", "expand", "-2"])[1])["status"] == "ok"


@settings(max_examples=150, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.binary(max_size=200), st.sampled_from([
    ["invariants", "pack", "--diagram"], ["classify", "transverse", "--slope", "1", "--knot"],
    ["openbook", "capoff", "--component", "B1", "--plan"], ["classify", "--batch"]]))
def test_fuzz_json_files_exit_2(tmp_path, blob, prefix):
    f = tmp_path / "in.json"
    f.write_bytes(b"\xff" + blob)
    code, text = run(prefix + [str(f)])
    assert code == 2, text
    assert json.loads(text)["error"]["code"] == "input"


@settings(max_examples=150, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.recursive(st.none() | st.booleans() | st.integers() | st.text(max_size=5),
                    lambda c: st.lists(c, max_size=4) | st.dictionaries(st.text(max_size=6), c,
                                                                         max_size=4),
                    max_leaves=12),
       st.sampled_from([["invariants", "pack", "--diagram"],
                        ["classify", "transverse", "--slope", "1", "--knot"],
                        ["openbook", "capoff", "--component", "B1", "--plan"]]))
def test_fuzz_wrong_json_shapes_exit_2(tmp_path, value, prefix):
    f = tmp_path / "in.json"
    f.write_text(json.dumps(value))
    code, text = run(prefix + [str(f)])
    assert code == 2, text


@given(st.lists(st.text(max_size=12), max_size=6))
def test_fuzz_argv_never_crashes(argv):
    code, text = run(argv)
    assert code in (0, 1, 2)
    rep = json.loads(text)
    assert rep.get("error", {}).get("code") != "internal", rep


@given(st.lists(st.text(alphabet="-/0123456789inf,", max_size=8), min_size=1, max_size=3),
       st.sampled_from([["ncf", "expand"], ["ncf", "eval"], ["farey", "path"],
                        ["farey", "sum"], ["openbook", "shift", "--to-zero", "--k"]]))
def test_fuzz_numeric_arguments(args, prefix):
    code, text = run(prefix + args)
    assert code in (0, 1, 2)
    assert json.loads(text).get("error", {}).get("code") != "internal", text


def test_main_and_module_entry(capsys):
    assert main(["ncf", "expand", "-8/5"]) == 0
    assert json.loads(capsys.readouterr().out)["payload"]["entries"] == [-2, -3, -2]
    proc = subprocess.run([sys.executable, "-m", "csl", "ncf", "expand", "-8/5"],
                          capture_output=True, text=True, env={**os.environ, "CSL_OUTPUT": "json"})
    assert proc.returncode == 0 and '"entries"' in proc.stdout
    assert main(["--help"]) == 0
