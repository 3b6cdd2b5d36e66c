import json
import subprocess
import sys

import pytest

from cleftlab import curated, files
from cleftlab import modules as md
from cleftlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def e2_dir(tmp_path):
    files.export_curated("E2", tmp_path)
    return tmp_path


def test_algebra_check_and_info(capsys):
    code, out, _ = run(capsys, "algebra", "check", "kA2")
    assert code == 0 and out.strip() == "valid"
    code, out, _ = run(capsys, "algebra", "info", "Kronecker", "--format", "json")
    info = json.loads(out)
    assert code == 0 and info["dim"] == 4 and info["global_dimension"] == {"kind": "Finite", "value": 1}


def test_mutated_structure_constant_fails(tmp_path, capsys):
    d = files.algebra_to_json(curated.kA2())
    d["structure_constants"][2][2] = [[2, 1]]  # arrow * arrow = arrow
    path = tmp_path / "bad.json"
    files.save_json(d, path)
    code, out, _ = run(capsys, "algebra", "check", str(path))
    assert code == 1
    assert "associativity" in out


def test_input_errors_exit_2(tmp_path, capsys):
    assert run(capsys, "algebra", "check", str(tmp_path / "missing.json"))[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "algebra", "check", str(tmp_path / "junk.json"))[0] == 2
    assert run(capsys, "algebra", "check", "kA2", "--p", "15")[0] == 2
    assert run(capsys, "no-such-group")[0] == 2
    assert run(capsys, "verify", "suite")[0] == 2


def test_construct_and_bimodule(e2_dir, capsys):
    code, out, _ = run(capsys, "construct", "trivial", str(e2_dir / "manifest.json"), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["algebra"]["dim"] == 3 and rep["suite"]["m_basis"] == [2]
    # manifest kind must match the subcommand
    assert run(capsys, "construct", "tensor", str(e2_dir / "manifest.json"))[0] == 2
    code, out, _ = run(capsys, "bimodule", "perfect", str(e2_dir / "M.json"), "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "Perfect"


def test_homology_commands(tmp_path, capsys):
    a = curated.dual_numbers()
    s = md.simple_module(a, 0)
    files.save_json(files.module_to_json(s, "k[x]/(x^2)"), tmp_path / "S.json")
    # a left module is stored as an (A, k)-bimodule
    n = dict(files.module_to_json(md.left_simple(a, 0), "k"), left_algebra="k[x]/(x^2)")
    files.save_json(n, tmp_path / "N.json")
    code, out, _ = run(capsys, "homology", "pd", str(tmp_path / "S.json"))
    assert code == 0 and out.startswith("pd = Infinite")
    code, out, _ = run(capsys, "homology", "ext", str(tmp_path / "S.json"), str(tmp_path / "S.json"),
                       "--ext-window", "0,3", "--format", "json")
    assert json.loads(out) == {"ext": {"0": 1, "1": 1, "2": 1, "3": 1}}
    code, out, _ = run(capsys, "homology", "tor", str(tmp_path / "S.json"), str(tmp_path / "N.json"),
                       "--ext-window", "1,2")
    assert code == 0 and out.splitlines() == ["tor^1: 1", "tor^2: 1"]


def test_gorenstein_and_singularity_commands(e2_dir, capsys):
    code, out, _ = run(capsys, "gorenstein", "check", "kA2", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "Gorenstein"
    code, out, _ = run(capsys, "gorenstein", "transfer", str(e2_dir / "manifest.json"), "--format", "json")
    assert code == 0 and json.loads(out)["silp_chain"] == [0, 1, 3]
    code, out, _ = run(capsys, "singularity", "check", str(e2_dir / "manifest.json"))
    assert code == 0 and "criterion: Vanishes" in out
    code, out, _ = run(capsys, "singularity", "ehi", str(e2_dir / "manifest.json"), "--pairs", "5")
    assert code == 0 and out.startswith("Ext agreement: PASS")


def test_curated_verify_reports_only_the_stated_bound(capsys, tmp_path):
    out_path = tmp_path / "bundle.json"
    code, out, _ = run(capsys, "verify", "suite", "--curated", "--out", str(out_path))
    assert code == 1
    bundle = json.loads(out_path.read_text())
    failing = {(c["id"], k) for c in bundle["cases"] for k, v in c["checks"].items() if v["status"] == "FAIL"}
    assert failing == {("E2", "reflection_stated"), ("E3", "reflection_stated"), ("E4", "reflection_stated")}
    e6 = next(c for c in bundle["cases"] if c["id"] == "E6")["checks"]
    assert e6["transfer"]["status"] == "NOT-APPLICABLE" and e6["ehi"]["status"] == "NOT-APPLICABLE"
    assert "pd reflection (stated bound): FAIL" in out


def test_empty_and_invalid_configs(tmp_path, capsys):
    (tmp_path / "empty.json").write_text("{}")
    assert run(capsys, "verify", "suite", str(tmp_path / "empty.json"))[0] == 0
    (tmp_path / "bad.json").write_text(json.dumps({"p": 9}))
    assert run(capsys, "verify", "suite", str(tmp_path / "bad.json"))[0] == 2
    (tmp_path / "dup.json").write_text(json.dumps({"cases": [{"id": "a", "suite": "E2"}, {"id": "a", "suite": "E4"}]}))
    assert run(capsys, "verify", "suite", str(tmp_path / "dup.json"))[0] == 2


def test_case_with_bad_algebra_fails(tmp_path, capsys):
    d = files.algebra_to_json(curated.kA2())
    d["structure_constants"][2][2] = [[2, 1]]
    files.save_json(d, tmp_path / "bad.json")
    (tmp_path / "cfg.json").write_text(json.dumps({"cases": [{"id": "m", "algebra": "bad.json"}]}))
    code, out, _ = run(capsys, "verify", "suite", str(tmp_path / "cfg.json"))
    assert code == 1 and "case m: FAIL" in out


def test_seed_environment_override(monkeypatch, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cases": [{"id": "E4", "suite": "E4"}], "checks": ["perfect"], "seed": 1}))
    monkeypatch.setenv("CLEFTLAB_SEED", "42")
    run(capsys, "verify", "suite", str(cfg), "--out", str(tmp_path / "b.json"))
    assert json.loads((tmp_path / "b.json").read_text())["config"]["seed"] == 42


def test_parallel_run_matches_serial(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cases": [{"id": n, "suite": n} for n in ("E2", "E6")],
                               "checks": ["perfect", "transfer"]}))
    run(capsys, "verify", "suite", str(cfg), "--out", str(tmp_path / "a.json"))
    run(capsys, "verify", "suite", str(cfg), "--jobs", "2", "--out", str(tmp_path / "b.json"))
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cleftlab", "algebra", "check", "kxk"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "valid"
