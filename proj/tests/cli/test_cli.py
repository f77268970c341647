import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("ICCSI_BIN", "build/tools/iccsi")
DATA = Path(os.environ.get("ICCSI_DATA", "data"))


def run(*args, check_rc=0):
    proc = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=120)
    assert proc.returncode == check_rc, proc.stdout + proc.stderr
    return proc.stdout


def test_validate():
    assert run("validate", "--instance", DATA / "syndrome_walkthrough.json").strip() == (
        "valid: q=2 t=1 n=4 m=4 d_S=4"
    )
    canon = json.loads(run("validate", "-v", "--instance", DATA / "min_rank_two.json"))
    assert canon["p"] == 2 and canon["e"] == 1
    assert len(canon["users"]) == 6


def test_validate_rejects_bad_instance(tmp_path):
    bad = json.loads((DATA / "min_rank_two.json").read_text())
    bad["p"] = 6
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    run("validate", "--instance", path, check_rc=2)


@pytest.mark.parametrize(
    "name,kappa,alpha",
    [
        ("alpha_equals_kappa", 3, 3),
        ("coded_side_info_mds", 3, 3),
        ("min_rank_three", 3, 2),
        ("min_rank_two", 2, 2),
        ("rank_walkthrough", 3, 3),
        ("syndrome_walkthrough", 2, 2),
    ],
)
def test_minrank(name, kappa, alpha):
    out = json.loads(run("minrank", "--instance", DATA / f"{name}.json", "--out", "json"))
    assert out["kappa"] == kappa
    assert out["alpha"] == alpha
    assert len(out["kappa_witness"]) == kappa
    assert out["bracket"]["lower"] <= out["bracket"]["upper"]


def test_bounds_single_query():
    out = run("bounds", "--zippel", "--q", 4, "--m-prime", 2, "--sender-dim", 10, "-N", 1)
    assert "zippel,4,1,10,1,0,2,0.0009766,true" in out


def test_bounds_presets():
    rows = run("bounds", "--table2").strip().splitlines()
    assert rows[0] == "name,q,t,n,N,delta,m,value,verdict"
    assert len(rows) == 57
    rows4 = run("bounds", "--table4").strip().splitlines()[1:]
    assert len(rows4) == 24
    assert all(r.endswith(",true") for r in rows4)
    table3 = json.loads(run("bounds", "--table3", "--out", "json"))
    assert len(table3) == 24


def test_syndrome_round_trip(tmp_path):
    frame = tmp_path / "frame.bin"
    run(
        "encode", "--instance", DATA / "syndrome_walkthrough.json",
        "--encoder", DATA / "syndrome_walkthrough_encoder.json",
        "--data", "1,1,1,1", "--frame", frame, "--error", "0;0;0;1;0",
    )
    out = run(
        "decode", "--instance", DATA / "syndrome_walkthrough.json",
        "--encoder", DATA / "syndrome_walkthrough_encoder.json",
        "--frame", frame, "--data", "1,1,1,1", "--delta", 1,
    )
    assert out.split() == ["user", "0:", "1", "user", "1:", "1", "user", "2:", "1", "user", "3:", "1"]


def test_syndrome_failure_exit_code(tmp_path):
    frame = tmp_path / "frame.bin"
    run(
        "encode", "--instance", DATA / "syndrome_walkthrough.json",
        "--encoder", DATA / "syndrome_walkthrough_encoder.json",
        "--data", "1,1,1,1", "--frame", frame, "--error", "1;1;0;0;0",
    )
    out = run(
        "decode", "--instance", DATA / "syndrome_walkthrough.json",
        "--encoder", DATA / "syndrome_walkthrough_encoder.json",
        "--frame", frame, "--data", "1,1,1,1", "--delta", 1, "--user", 1,
        check_rc=3,
    )
    assert out.startswith("failure")


def test_rank_trap_round_trip(tmp_path):
    frame = tmp_path / "frame.bin"
    run(
        "encode", "--instance", DATA / "rank_walkthrough.json",
        "--encoder", DATA / "rank_walkthrough_encoder.json",
        "--data", "1,0,1,0", "--frame", frame, "--pad", 2, "--send-encoder",
        "--error-rank", 1, "--seed", 4,
    )
    out = run(
        "decode", "--instance", DATA / "rank_walkthrough.json", "--metric", "rank",
        "--frame", frame, "--data", "1,0,1,0",
    )
    assert [line.split(": ")[1] for line in out.strip().splitlines()] == ["1", "0", "1", "0"]


def test_budget_exit_code():
    run("minrank", "--instance", DATA / "min_rank_three.json", "--budget", 1, check_rc=4)


def test_usage_error_exit_code():
    run("bounds", "--zippel", "--q", 4, check_rc=2)


def test_simulate_is_deterministic():
    args = [
        "simulate", "--instance", DATA / "syndrome_walkthrough.json", "--method", "concatenated",
        "--delta", 1, "--error", "hamming:1", "--trials", 500, "--seed", 11, "--out", "json",
    ]
    a, b = run(*args), run(*args)
    assert a == b
    report = json.loads(a)
    for user in report["users"]:
        assert user["success"] == 500


def test_simulate_csv_columns():
    out = run(
        "simulate", "--instance", DATA / "rank_walkthrough.json", "--encoder",
        DATA / "rank_walkthrough_encoder.json", "--metric", "rank", "--pad", 2,
        "--error", "rank:1", "--trials", 200, "--out", "csv",
    )
    header, *rows = out.strip().splitlines()
    assert header == "user,trials,success,detected,undetected,trap_undetected,success_rate,wilson_lo,wilson_hi"
    assert len(rows) == 4
    for row in rows:
        fields = row.split(",")
        assert int(fields[2]) + int(fields[3]) + int(fields[4]) == 200
