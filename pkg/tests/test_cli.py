import json
import subprocess
import sys

import pytest

from momentangle.cli import main


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "momentangle", *args],
        capture_output=True,
        text=True,
    )


def test_analyze_K1(fixtures_dir):
    res = run_cli("analyze", str(fixtures_dir / "K1.sc"))
    assert res.returncode == 0
    assert "MF(K): (3,4) (1,2,3) (1,2,4)" in res.stdout
    assert "MF-complex: yes" in res.stdout
    assert "shifted(identity): yes" in res.stdout


def test_analyze_K2_witness(fixtures_dir):
    res = run_cli("analyze", str(fixtures_dir / "K2.sc"))
    assert res.returncode == 0
    assert "MF-complex: no (witness face (1,4))" in res.stdout


def test_analyze_K3(fixtures_dir):
    res = run_cli("analyze", str(fixtures_dir / "K3.sc"))
    assert res.returncode == 0
    assert "MF-complex: yes" in res.stdout
    assert "shifted(identity): no" in res.stdout
    assert "shifted(any): no" in res.stdout


def test_analyze_json(fixtures_dir):
    res = run_cli("analyze", str(fixtures_dir / "K1.sc"), "--json")
    doc = json.loads(res.stdout)
    assert doc["is_mf_complex"] is True
    assert doc["missing_faces"] == [[3, 4], [1, 2, 3], [1, 2, 4]]
    assert doc["shifted_ordering"] == [1, 2, 3, 4]


def test_decompose_K1_text(fixtures_dir):
    res = run_cli("decompose", str(fixtures_dir / "K1.sc"))
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert lines[0] == "Z_K ~ S^3 v 2S^5 v 2S^6"
    assert "S^3: w~(3,4)" in lines
    assert "S^6: [w~(1,2,3), a~4]" in lines
    assert not any(line.startswith("FLAG") for line in lines)


def test_decompose_skeleton42_flagged(fixtures_dir):
    res = run_cli("decompose", str(fixtures_dir / "skel42.sc"))
    assert res.returncode == 1
    assert "FLAG dim 6: enumeration=4 series=4 porter=3" in res.stdout


def test_decompose_spheres(fixtures_dir):
    res = run_cli(
        "decompose", str(fixtures_dir / "tri.sc"),
        "--target", "spheres", "--dims", "1,1,1", "--max-dim", "8",
    )
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert lines[0] == "Z_K ~ S^5 v 3S^6 v 6S^7 v 10S^8 (truncated)"
    assert "S^6: [w(1,2,3), a2]" in lines


def test_decompose_spheres_requires_dims(fixtures_dir):
    res = run_cli("decompose", str(fixtures_dir / "tri.sc"), "--target", "spheres")
    assert res.returncode == 3


def test_loop_homology_K1(fixtures_dir):
    res = run_cli("loop-homology", str(fixtures_dir / "K1.sc"), "--max-degree", "6")
    assert res.returncode == 0
    assert "u(1,2,3) degree 4" in res.stdout
    assert "b1*b2 + b2*b1 = 0" in res.stdout
    assert "graded dimensions (degrees 0..6): 1 4 7 8 10 18 32" in res.stdout
    assert "kernel generator series (degrees 0..6): 0 0 1 0 2 2 0" in res.stdout


def test_loop_homology_json(fixtures_dir):
    res = run_cli(
        "loop-homology", str(fixtures_dir / "K1.sc"), "--max-degree", "5", "--json"
    )
    doc = json.loads(res.stdout)
    assert doc["graded_dimensions"] == [1, 4, 7, 8, 10, 18]
    assert doc["kernel_generator_series"] == [0, 0, 1, 0, 2, 2]


def test_allday_check_bubenik():
    res = run_cli("allday", "--dims", "2,2,2", "--check-bubenik", "--max-degree", "8")
    assert res.returncode == 0
    assert "d^2=0: ok" in res.stdout
    assert "homology == Bubenik closed form: ok" in res.stdout


def test_allday_product_model():
    res = run_cli("allday", "--dims", "1,1", "--model", "product", "--max-degree", "6")
    assert res.returncode == 0
    assert "d^2=0: ok" in res.stdout


def test_porter():
    res = run_cli("porter", "4", "2")
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "Z_K ~ 4S^5 v 3S^6"


def test_check_flagged(fixtures_dir):
    res = run_cli("check", str(fixtures_dir / "skel42.sc"))
    assert res.returncode == 1
    assert "dim 6: enumeration=4 series=4 porter=3 -> mismatch" in res.stdout
    assert "verdict: mismatch" in res.stdout


def test_check_clean(fixtures_dir):
    res = run_cli("check", str(fixtures_dir / "K1.sc"), "--max-dim", "6")
    assert res.returncode == 0
    assert "verdict: all routes agree" in res.stdout


def test_json_output_is_deterministic(fixtures_dir):
    args = ("decompose", str(fixtures_dir / "K1.sc"), "--json")
    assert run_cli(*args).stdout == run_cli(*args).stdout


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.sc"
    bad.write_text("vertices: 3\nface: 9\n")
    res = run_cli("analyze", str(bad))
    assert res.returncode == 2
    assert "error" in res.stderr


def test_missing_file_exit_code(tmp_path):
    res = run_cli("analyze", str(tmp_path / "absent.sc"))
    assert res.returncode == 2


def test_precondition_exit_code(fixtures_dir):
    # K2 is not an MF-complex, so the decomposition precondition fails
    res = run_cli("decompose", str(fixtures_dir / "K2.sc"))
    assert res.returncode == 3
    assert "error" in res.stderr


def test_budget_exit_code(fixtures_dir):
    res = run_cli("decompose", str(fixtures_dir / "K1.sc"), "--budget-words", "2")
    assert res.returncode == 3
    assert "budget" in res.stderr


def test_main_is_callable_in_process(fixtures_dir, capsys):
    code = main(["porter", "3", "1"])
    out = capsys.readouterr().out
    assert code == 0 and out.splitlines()[0] == "Z_K ~ S^5"
