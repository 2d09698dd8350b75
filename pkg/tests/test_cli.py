import io
import json
from contextlib import redirect_stdout

import numpy as np
import pytest

from covmap.cli import run


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


def test_usage_error_exit_code(capsys):
    code, _ = run_cli(["classify", "--group", "s3", "--l", "1,0,0", "--bogus"])
    assert code == 1


def test_validation_error_exit_code():
    code, _ = run_cli(["classify", "--group", "s3", "--l", "1,0", "--seed", "1"])
    assert code == 2


def test_io_error_exit_code(tmp_path):
    target = tmp_path / "file"
    target.write_text("x")
    code, _ = run_cli(
        ["scan", "--group", "s3", "--range", "lsgn=0:1:1,llam=0:1:1",
         "--seed", "1", "--out", str(target / "nested.csv")]
    )
    assert code == 3


def test_group_info():
    code, out = run_cli(["group", "info", "--group", "s3"])
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 6 and sorted(data["class_sizes"]) == [1, 2, 3]


def test_irrep_verify():
    code, out = run_cli(["irrep", "verify", "--group", "s4", "--irrep", "standard"])
    assert code == 0
    data = json.loads(out)
    assert data["irreducible"] and data["homomorphism_dev"] < 1e-10


def test_irrep_show_matches_printed():
    code, out = run_cli(["irrep", "show", "--group", "s4", "--element", "(23)"])
    assert code == 0
    data = json.loads(out)
    m = np.array([[complex(re, im) for re, im in row] for row in data["rows"]])
    expected = np.array(
        [[0.5, 0.5 + 0.5j, -0.5j], [0.5 - 0.5j, 0, 0.5 + 0.5j], [0.5j, 0.5 - 0.5j, 0.5]]
    )
    assert np.abs(m - expected).max() < 1e-12


def test_classify_worked_example():
    code, out = run_cli(["classify", "--group", "s3", "--l", "1,-1,-1", "--seed", "7"])
    assert code == 0
    data = json.loads(out)
    assert data["cp"] is False
    assert data["reduction_sufficient"] is True
    assert data["witness_flag"] is True
    assert data["exact_positive"] is True


def test_classify_mu():
    code, out = run_cli(
        ["classify", "--group", "mu", "--d", "3", "--alpha", "-0.4", "--beta", "1.0", "--seed", "2"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["exact_positive"] is True and data["cp"] is False


def test_map_build(tmp_path):
    out_path = tmp_path / "map.json"
    code, _ = run_cli(
        ["map", "build", "--group", "q", "--l", "1,-0.5,0.3,0.2", "--out", str(out_path)]
    )
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["mat"]["dim"] == 4 and data["choi"]["dim"] == 4
    assert (tmp_path / "map.json.meta.json").exists()


def test_scan_row_count(tmp_path):
    out_path = tmp_path / "r.csv"
    code, _ = run_cli(
        ["scan", "--group", "mu", "--d", "3", "--alpha", "-1:1:0.5", "--beta", "-1:1:0.5",
         "--seed", "1", "--out", str(out_path), "--restarts", "8"]
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 1 + 25
    assert lines[0] == "alpha,beta,cp,cop,cuboid,diag,reduction,exact,sampled_min"


def test_scan_requires_all_axes():
    code, _ = run_cli(["scan", "--group", "s4", "--range", "lmb1=0:1:1", "--seed", "1", "--out", "/tmp/x.csv"])
    assert code == 2


def test_scan_jobs_parallel_matches_serial(tmp_path):
    base = ["scan", "--group", "s3", "--range", "lsgn=-1:1:0.5,llam=-1:1:0.5",
            "--seed", "5", "--restarts", "8"]
    p1, p2 = tmp_path / "serial.csv", tmp_path / "par.csv"
    assert run_cli(base + ["--out", str(p1)])[0] == 0
    assert run_cli(base + ["--out", str(p2), "--jobs", "2"])[0] == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_catalog_commands():
    code, out = run_cli(["catalog", "mu", "--d", "3", "--alpha", "-0.4", "--beta", "1"])
    assert code == 0
    data = json.loads(out)
    assert data["exact_positive"] is True and data["cp"] is False

    code, out = run_cli(["catalog", "quat-decompose", "--l", "1,-1,0.2,0.3"])
    assert code == 0
    data = json.loads(out)
    assert data["reconstruction_max_dev"] < 1e-12
    assert data["parts_cp"] == [True, True]

    code, out = run_cli(["catalog", "choi-compare", "--alpha", "-0.45", "--beta", "0.2"])
    assert code == 0
    data = json.loads(out)
    assert data["choi_max_dev"] < 1e-12

    code, out = run_cli(["catalog", "ssv", "--eta", "0.5,0.5,-0.2"])
    assert code == 0
    data = json.loads(out)
    assert data["positive"] is True and data["cp"] is False


def test_catalog_quat_decompose_outside_region():
    code, _ = run_cli(["catalog", "quat-decompose", "--l", "1,-1.5,0.2,0.3"])
    assert code == 2


def test_stdout_determinism():
    argv = ["classify", "--group", "q", "--l", "1,-0.9,0.8,0.7", "--seed", "11"]
    assert run_cli(argv) == run_cli(argv)
