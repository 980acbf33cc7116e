import json
import subprocess
import sys

from jtwist.cli import main


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_all_passes(capsys):
    code, out, _ = run(["verify", "all", "--n", "3", "--order", "3"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(l.startswith("[PASS]") or l.startswith("  ") for l in lines)


def test_reports_sorted_by_check(capsys):
    code, out, _ = run(["verify", "twist", "cybe", "jacobi", "--order", "2",
                        "--format", "json"], capsys)
    assert code == 0
    checks = [r["check"] for r in json.loads(out)]
    assert checks == sorted(checks)


def test_displayed_qspace_fails(capsys):
    code, out, _ = run(["verify", "qspace", "--reading", "displayed", "--order", "3"], capsys)
    assert code == 1
    assert out.startswith("[FAIL]")


def test_unknown_suite_is_usage_error(capsys):
    code, _, err = run(["verify", "bogus"], capsys)
    assert code == 2
    assert "unknown suite" in err


def test_bad_option_is_usage_error(capsys):
    code, _, _ = run(["verify", "twist", "--n", "1"], capsys)
    assert code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 4, "order": 2}))
    code, out, _ = run(["verify", "twist", "--config", str(cfg)], capsys)
    assert code == 0 and "N=4 K=2" in out
    # explicit flags win over the file
    code, out, _ = run(["verify", "twist", "--config", str(cfg), "--n", "3"], capsys)
    assert "N=3 K=2" in out


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, err = run(["verify", "twist", "--config", str(cfg)], capsys)
    assert code == 2 and "colour" in err


def test_perturbed_constants_fail(tmp_path, capsys):
    from jtwist.inhom import borel_split

    doc = borel_split(1).perturbed({(1, 2, 2): 1}).to_json()
    path = tmp_path / "L.json"
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    code, out, _ = run(["verify", "inhom", "--constants", str(path), "--order", "3"], capsys)
    assert code == 1 and out.startswith("[FAIL] inhom")


def test_bundled_constants_pass(capsys):
    code, out, _ = run(["verify", "inhom", "--order", "3"], capsys)
    assert code == 0 and out.count("[PASS] inhom") == 3


def test_emit_r_matrix(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(["emit", "r-matrix", "--n", "2", "--order", "3", "--format", "json",
                      "--out", str(out_file)], capsys)
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["entries"][0][3] == ["0", "0", "1"]


def test_emit_r_matrix_unstable(capsys):
    code, _, err = run(["emit", "r-matrix", "--n", "3", "--order", "1"], capsys)
    assert code == 1 and "increase K" in err


def test_emit_classical_r(capsys):
    code, out, _ = run(["emit", "classical-r", "--n", "3"], capsys)
    assert code == 0
    assert "(-1)*H13^E13 + (-2)*E12^E23" in out


def test_emit_twist_json(capsys):
    code, out, _ = run(["emit", "twist", "--n", "2", "--order", "2", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert ["1 (x) 1", "1"] in doc["terms"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jtwist", "verify", "jacobi", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("[PASS] jacobi")
