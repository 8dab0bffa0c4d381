import csv
import io
import json
import math

import pytest

import probelab.cli as cli
from probelab.butterfly import instance_from_dict
from probelab.fixtures import figure3_json_path


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["gen", "--degree", "2", "--depth", "2", "--missing-prob", "0.3",
            "--seed", "42"]
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_probability_extremes(capsys):
    code, out, _ = run_cli(capsys, "gen", "--degree", "2", "--depth", "2",
                           "--missing-prob", "0")
    assert code == 0
    assert json.loads(out)["missing_edges"] == []
    code, out, _ = run_cli(capsys, "gen", "--degree", "2", "--depth", "2",
                           "--missing-prob", "1")
    assert code == 0
    data = json.loads(out)
    assert len(data["missing_edges"]) == 16
    instance_from_dict(data)


def test_gen_rejects_bad_params(capsys):
    assert run_cli(capsys, "gen", "--degree", "1", "--depth", "2")[0] == 2
    assert run_cli(capsys, "gen", "--degree", "2", "--depth", "0")[0] == 2
    assert run_cli(capsys, "gen", "--degree", "2", "--depth", "2",
                   "--missing-prob", "1.5")[0] == 2


def test_verify_shipped_instance(capsys, tmp_path):
    path = tmp_path / "figure3.json"
    path.write_text(figure3_json_path().read_text())
    code, out, _ = run_cli(capsys, "verify", str(path), "--exhaustive-pairs")
    assert code == 0
    assert "pairs checked: 16/16 (exhaustive)" in out
    assert "mismatches: 0" in out


def test_verify_full_butterfly(capsys, tmp_path):
    path = tmp_path / "full.json"
    assert cli.main(["gen", "--degree", "2", "--depth", "2", "--missing-prob",
                     "0", "--out", str(path)]) == 0
    code, out, _ = run_cli(capsys, "verify", str(path))
    assert code == 0
    assert "mismatches: 0" in out


def test_verify_corrupted_instance(capsys, tmp_path):
    path = tmp_path / "corrupt.json"
    path.write_text(json.dumps({
        "degree": 2, "depth": 2,
        "missing_edges": [{"layer": 0, "lower_index": 0, "upper_index": 2}],
    }))
    code, _, err = run_cli(capsys, "verify", str(path))
    assert code == 2
    assert "error" in err


def test_verify_reports_engineered_mismatch(capsys, tmp_path, monkeypatch):
    path = tmp_path / "figure3.json"
    path.write_text(figure3_json_path().read_text())
    monkeypatch.setattr(cli, "oracle_reachable", lambda sub, s, t: True)
    code, out, err = run_cli(capsys, "verify", str(path), "--exhaustive-pairs")
    assert code == 1
    assert "MISMATCH" in out
    assert "verification failed" in err


def test_verify_samples_large_instances(capsys, tmp_path):
    path = tmp_path / "big.json"
    assert cli.main(["gen", "--degree", "2", "--depth", "6", "--missing-prob",
                     "0.2", "--seed", "7", "--out", str(path)]) == 0
    code, out, _ = run_cli(capsys, "verify", str(path))
    assert code == 0
    assert "(sampled)" in out


def test_bench_csv_is_well_formed(capsys):
    code, out, _ = run_cli(capsys, "bench", "--degree", "2", "--depth", "1,2,3",
                           "--trials", "2", "--seed", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    header = out.splitlines()[0]
    assert header == "b,d,n,m,s,w,t_max,bound_curve"
    for row in rows:
        d = int(row["d"])
        assert int(row["t_max"]) <= 2 * (d + 1) + 2
        n, s, w = int(row["n"]), int(row["s"]), int(row["w"])
        assert int(row["m"]) + n == d * 2 ** (d + 1)
        if row["bound_curve"]:
            expected = math.log2(n) / math.log2(s * w / n)
            assert abs(float(row["bound_curve"]) - expected) < 1e-9


def test_bench_zero_trials_gives_header_only(capsys, tmp_path):
    out_path = tmp_path / "bench.csv"
    assert cli.main(["bench", "--degree", "2", "--depth", "2", "--trials", "0",
                     "--out", str(out_path)]) == 0
    assert out_path.read_text().strip() == "b,d,n,m,s,w,t_max,bound_curve"


def test_bench_deterministic_for_seed(capsys):
    args = ["bench", "--degree", "2", "--depth", "2", "--trials", "3",
            "--seed", "5"]
    code, first, _ = run_cli(capsys, *args)
    assert code == 0
    code, second, _ = run_cli(capsys, *args)
    assert first == second


def test_bench_rejects_bad_lists(capsys):
    assert run_cli(capsys, "bench", "--degree", "x")[0] == 2


def test_demo_transcript(capsys):
    code, out, _ = run_cli(capsys, "demo-figure3")
    assert code == 0
    assert "version layer 2 index 0; mark layer 1 index 1" in out
    assert "layer 1: {e_3, e_4} | {e_5}" in out
    assert "layer 2: {e_1} | - | {e_2} | -" in out
    assert "layer 1: index 1" in out
    assert "layer 2: indices 0, 2" in out
    assert "agree with the path oracle: True" in out


def test_bound_curve_reference_points():
    assert cli.bound_curve(16, 64, 16) == pytest.approx(4 / 6)
    assert cli.bound_curve(0, 10, 10) is None
    assert cli.bound_curve(100, 1, 1) is None
