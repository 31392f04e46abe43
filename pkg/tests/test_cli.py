import json
import subprocess
import sys

import pytest

from synsub import io as sio
from synsub.cli import main
from synsub.harness import replay_finding


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_builtin_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "e1")
    assert code == 1
    report = json.loads(out)
    sio.validate_report(report)
    w = report["results"]["check"]["witness"]
    assert (w["u"], w["v"], w["context"], w["result"]) == ("ab", "cb", "abd", "cbd")
    code, _, _ = run(capsys, "check", "--builtin", "mod3", "--property", "ic-all")
    assert code == 0


def test_certify_refusal_message(capsys):
    code, out, err = run(capsys, "certify", "--builtin", "unary")
    assert code == 1
    assert "no finite-expressivity certificate at horizon 8" in err
    assert json.loads(out)["results"]["saturation"]["reason"] == "no-plateau"


def test_certify_precondition_failure(capsys):
    code, out, _ = run(capsys, "certify", "--builtin", "e1")
    assert code == 1
    assert json.loads(out)["results"]["preconditions"][0]["holds"] is False


def test_curve_csv_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "curve", "--builtin", "mod3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[:3] == ["n,distinct_meanings,new_meanings", "1,2,2", "2,3,1"]
    code, out, _ = run(capsys, "curve", "--builtin", "mod3", "--max-len", "3")
    assert json.loads(out)["results"]["curve"]["distinct_meanings"] == [2, 3, 3]


def test_normalize_reduce_classes_plateau(capsys):
    _, out, _ = run(capsys, "normalize", "--builtin", "mod3", "--string", "baab")
    assert json.loads(out)["results"]["normalize"]["normal_form"] == "aa"
    _, out, _ = run(capsys, "reduce", "--builtin", "tr1", "--string", "bab", "--target-gen", "2")
    assert json.loads(out)["results"]["reduce"]["reduced"] == "ab"
    _, out, _ = run(capsys, "plateau", "--builtin", "mod3")
    assert json.loads(out)["results"]["plateau"] == 2
    code, out, _ = run(capsys, "classes", "--builtin", "mod3", "--horizon", "2")
    assert code == 0 and len(json.loads(out)["results"]["classes"]["classes"]) == 3


def test_close_completed_and_conflict(capsys, tmp_path):
    seed = tmp_path / "seed.json"
    seed.write_text(sio.dumps({"version": "1", "alphabet": ["a", "b"], "kind": "explicit", "horizon": 2,
                               "strings": [{"s": "a", "m": "m1"}, {"s": "b", "m": "m1"}, {"s": "ab", "m": "m2"}]}))
    out_path = tmp_path / "closed.json"
    code, _, _ = run(capsys, "close", "--lang", str(seed), "--out", str(out_path))
    assert code == 0
    assert len(sio.load_language(out_path).entries) == 6
    doc = json.loads(seed.read_text())
    doc["strings"].append({"s": "aa", "m": "m3"})
    seed.write_text(sio.dumps(doc))
    code, out, _ = run(capsys, "close", "--lang", str(seed), "--out", str(out_path))
    assert code == 1
    assert json.loads(out)["results"]["closure"]["conflict"]["string"] == "aa"


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "check", "--lang", str(bad))
    assert code == 2 and str(bad) in err
    code, _, _ = run(capsys, "normalize", "--builtin", "e1", "--string", "cbd")
    assert code == 2
    code, _, _ = run(capsys, "--report", "", "check", "--builtin", "mod3")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["check"])
    assert info.value.code == 2


def test_fuzz_modes(capsys):
    code, out, _ = run(capsys, "fuzz", "--mode", "oracle-equiv", "--samples", "20", "--seed", "1")
    assert code == 0 and json.loads(out)["results"]["suite"]["failures"] == []
    code, out, _ = run(capsys, "fuzz", "--mode", "theorem-stress", "--samples", "60", "--seed", "3")
    findings = json.loads(out)["results"]["findings"]
    assert code == 0 and findings
    assert all(replay_finding(f) for f in findings)


def test_report_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "--report", str(path), "plateau", "--builtin", "tr1")
    assert code == 0 and out == ""
    sio.validate_report(json.loads(path.read_text()))


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "synsub", "check", "--builtin", "t1"],
        capture_output=True, text=True, cwd=tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["results"]["check"]["holds"] is True
