import json
import random
import subprocess
import sys

import pytest

from hvmforge.catalog import pr_box_fc
from hvmforge.cli import main, run
from hvmforge.hvm import parse_hvm, realized_system, serialize_hvm
from hvmforge.sampling import random_hvm, random_signaling_system
from hvmforge.systems import serialize_system


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def json_run(argv, capsys):
    code = main(argv + ["--json"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == "1" and doc["exit_code"] == code
    return code, doc


def test_example_then_nc_check_pr_box(tmp_path, capsys):
    path = str(tmp_path / "pr-box.system.json")
    assert main(["example", "pr-box", "--out", path]) == 0
    capsys.readouterr()
    code, doc = json_run(["nc-check", path], capsys)
    assert code == 1 and doc["status"] == "infeasible"
    assert doc["payload"]["certificate_valid"] is True


def test_nc_check_classical_writes_witness(tmp_path, capsys):
    path = str(tmp_path / "classical.system.json")
    main(["example", "classical", "--out", path])
    out = str(tmp_path / "witness.hvm.json")
    assert main(["nc-check", path, "--out", out]) == 0
    assert "2 global assignments" in capsys.readouterr().out
    assert main(["verify", out, path]) == 0


def test_transform_then_verify(files, tmp_path, capsys):
    rng = random.Random(7)
    for form, target in [("ci", "fc"), ("fc", "ci"), ("general", "fc"), ("fc", "general"),
                         ("xi", "general"), ("rho", "nc"), ("nc", "ci")]:
        m = random_hvm(rng, form)
        src = files(f"{form}.hvm.json", serialize_hvm(m))
        system = files(f"{form}.system.json", serialize_system(realized_system(m)))
        out = str(tmp_path / f"{form}-to-{target}.hvm.json")
        assert main(["transform", "--to", target, src, "--out", out]) == 0
        assert parse_hvm(open(out).read()).form == target
        assert main(["verify", out, system]) == 0
    capsys.readouterr()


def test_transform_comonotone(files, tmp_path, capsys):
    src = files("pr.hvm.json", serialize_hvm(pr_box_fc()))
    ci = str(tmp_path / "ci.json")
    fc = str(tmp_path / "fc.json")
    sysf = str(tmp_path / "pr.system.json")
    main(["example", "pr-box", "--out", sysf])
    assert main(["transform", "--to", "ci", src, "--out", ci]) == 0
    assert main(["transform", "--to", "fc", "--coupling", "comonotone", ci, "--out", fc]) == 0
    assert main(["verify", fc, sysf]) == 0
    capsys.readouterr()


def test_transform_unlicensed_arrow(files, capsys):
    src = files("pr.hvm.json", serialize_hvm(pr_box_fc()))
    code, doc = json_run(["transform", "--to", "nc", src], capsys)
    assert code == 2 and "cannot transform fc -> nc" in doc["payload"]["error"]


def test_audit_signaling(files, capsys):
    s = random_signaling_system(random.Random(3))
    path = files("signaling.system.json", serialize_system(s))
    code, doc = json_run(["audit", path], capsys)
    assert code == 1 and doc["status"] == "violation"
    v = doc["payload"]["violations"][0]
    assert v["property"].startswith("q") and len(v["contexts"]) == 2


def test_audit_consistent(tmp_path, capsys):
    path = str(tmp_path / "s.json")
    main(["example", "cyclic4", "--e", "1/2", "-1/3", "0", "1", "--out", path])
    assert main(["audit", path]) == 0
    assert "consistently connected" in capsys.readouterr().out


def test_realize_and_cycle_max(files, tmp_path, capsys):
    src = files("pr.hvm.json", serialize_hvm(pr_box_fc()))
    code, doc = json_run(["realize", src, "--context", "c4"], capsys)
    assert code == 0
    assert {(tuple(d["point"].values()), d["p"]) for d in doc["payload"]["distribution"]} == {
        (("+1", "-1"), "1/2"), (("-1", "+1"), "1/2")}
    path = str(tmp_path / "pr.json")
    main(["example", "pr-box", "--out", path])
    capsys.readouterr()
    code, doc = json_run(["cycle-max", path], capsys)
    assert code == 0 and doc["payload"]["cycle_max"] == "4"


def test_input_errors(files, capsys):
    assert main(["audit", "/nonexistent/file.json"]) == 2
    assert "/nonexistent/file.json" in capsys.readouterr().err
    bad = files("bad.json", '{"properties": [], "contexts": [{"id": "c"}]}')
    code, doc = json_run(["audit", bad], capsys)
    assert code == 2 and "$.contexts[0]" in doc["payload"]["error"]
    assert main(["frobnicate"]) == 2
    assert "usage" in capsys.readouterr().err
    assert main(["example", "cyclic4", "--e", "2", "0", "0", "0"]) == 2
    src = files("pr.hvm.json", serialize_hvm(pr_box_fc()))
    assert main(["realize", src, "--context", "c9"]) == 2
    capsys.readouterr()


def test_cycle_max_shape_error(files, capsys):
    text = ('{"properties": [{"id": "q", "alphabet": ["a", "b"]}], "contexts": [{"id": "c", "properties": ["q"],'
            ' "distribution": [{"outcomes": ["a"], "p": "1"}]}]}')
    assert main(["cycle-max", files("one.json", text)]) == 2
    capsys.readouterr()


def test_json_output_deterministic(tmp_path, capsys):
    path = str(tmp_path / "pr.json")
    main(["example", "pr-box", "--out", path])
    capsys.readouterr()
    outs = []
    for _ in range(2):
        for cmd in (["nc-check", path], ["audit", path], ["cycle-max", path]):
            main(cmd + ["--json"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_example_stdout_is_system(capsys):
    report = run(["example", "classical", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert report.status == "ok" and len(doc["payload"]["system"]["contexts"]) == 4


def test_module_entry_point(tmp_path):
    path = str(tmp_path / "pr.json")
    proc = subprocess.run([sys.executable, "-m", "hvmforge", "example", "pr-box", "--out", path],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "hvmforge", "nc-check", path], capture_output=True, text=True)
    assert proc.returncode == 1 and "Farkas certificate (verified" in proc.stdout
