import json

import pytest

import pircodex as px
from pircodex.cli import main


@pytest.fixture
def ex1_file(tmp_path, ex1):
    path = tmp_path / "ex1.code"
    px.save_code(ex1, path)
    return str(path)


@pytest.fixture
def ex1_lambda_file(tmp_path, ex1_lambda):
    path = tmp_path / "ex1.lam"
    px.save_rate_matrix(ex1_lambda, path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_capacity_text(capsys):
    code, out = run(capsys, "capacity", "5", "3", "2")
    assert code == 0
    assert out.strip() == "5/8 (0.625)"


def test_capacity_json_deterministic(capsys):
    code, out1 = run(capsys, "capacity", "5", "3", "2", "--format", "json")
    _, out2 = run(capsys, "capacity", "5", "3", "2", "--format", "json")
    assert code == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["capacity"] == "5/8"


def test_capacity_limit_flag(capsys):
    code, out = run(capsys, "capacity", "5", "3", "--limit")
    assert code == 0
    assert out.strip().startswith("2/5")


def test_rate_from_files(capsys, ex1_file, ex1_lambda_file):
    code, out = run(capsys, "rate", "--code", ex1_file, "--lambda", ex1_lambda_file,
                    "--files", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rate"] == "27/50"
    assert payload["meets_capacity"] is False


def test_rate_curve_writes_csv_and_figure(capsys, tmp_path):
    prefix = str(tmp_path / "curve")
    code, out = run(capsys, "rate", "--construct", "mds", "--n", "5", "--k", "3",
                    "--field", "gf(5)", "--files", "2", "--curve-out", prefix)
    assert code == 0
    csv_text = (tmp_path / "curve.csv").read_text()
    assert csv_text.splitlines()[0] == "files,capacity,rate"
    assert "5/8,5/8" in csv_text
    assert (tmp_path / "curve.png").stat().st_size > 0


def test_classify_capacity_achieving(capsys, tmp_path):
    out_lambda = str(tmp_path / "witness.lam")
    code, out = run(capsys, "classify", "--construct", "mds", "--n", "5", "--k", "3",
                    "--field", "gf(5)", "--out-lambda", out_lambda, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "capacity_achieving"
    lam = px.load_rate_matrix(out_lambda)
    assert (lam.kappa, lam.nu) == (3, 5)


def test_classify_ruled_out_exit_code(capsys, ex1_file):
    code, out = run(capsys, "classify", "--code", ex1_file, "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "ruled_out"
    assert payload["failing_s"] == 2


def test_simulate_json_deterministic(capsys, ex1_file, ex1_lambda_file):
    argv = ["simulate", "--code", ex1_file, "--lambda", ex1_lambda_file,
            "--files", "2", "--request", "2", "--seed", "9", "--format", "json"]
    code1, out1 = run(capsys, *argv)
    code2, out2 = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["recovered"] is True
    assert payload["download_total"] == 50
    assert payload["seed"] == 9


def test_simulate_writes_trace_file(capsys, tmp_path, ex1_file, ex1_lambda_file):
    trace = tmp_path / "trace.json"
    code, _ = run(capsys, "simulate", "--code", ex1_file, "--lambda", ex1_lambda_file,
                  "--files", "2", "--seed", "3", "--out", str(trace))
    assert code == 0
    payload = json.loads(trace.read_text())
    assert payload["rate"] == "27/50"


def test_audit_pass_and_negative_control(capsys, ex1_file, ex1_lambda_file):
    code, out = run(capsys, "audit", "--code", ex1_file, "--lambda", ex1_lambda_file,
                    "--files", "2", "--trials", "300", "--seed", "5",
                    "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True
    code, out = run(capsys, "audit", "--code", ex1_file, "--lambda", ex1_lambda_file,
                    "--files", "2", "--trials", "300", "--seed", "5",
                    "--negative-control", "2", "--format", "json")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_scan_writes_delimited_output_and_figure(capsys, tmp_path):
    prefix = str(tmp_path / "scan")
    code, out = run(capsys, "scan", "--nmax", "3", "--out", prefix, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["disagreements"] == 0
    header = (tmp_path / "scan.csv").read_text().splitlines()[0]
    assert header.startswith("n,k,generator")
    assert (tmp_path / "scan.png").stat().st_size > 0


def test_scan_sample_spec(capsys):
    code, out = run(capsys, "scan", "--nmax", "6", "--sample", "6:2:4",
                    "--seed", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["summary"]["codes"] == 4


def test_usage_errors_exit_two(capsys):
    assert main(["capacity", "5"]) == 2                      # missing k
    assert main(["rate", "--files", "2"]) == 2               # no code source
    assert main(["simulate", "--construct", "cyclic", "--n", "7",
                 "--files", "2"]) == 2                       # missing gpoly
    assert main(["frobnicate"]) == 2                         # unknown subcommand
    assert main(["scan", "--nmax", "3", "--sample", "bad"]) == 2


def test_construct_cyclic_roundtrip(capsys):
    code, out = run(capsys, "classify", "--construct", "cyclic", "--n", "7",
                    "--gpoly", "1,1,0,1", "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "capacity_achieving"


def test_interference_matches_library(capsys, ex1_file, ex1_lambda_file):
    code, out = run(capsys, "interference", "--code", ex1_file, "--lambda",
                    ex1_lambda_file, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["A"] == [[2, 1, 1, 1, 1], [3, 3, 3, 2, 2]]
    assert payload["B"] == [[1, 2, 2, 3, 3]]
    assert payload["s_sets"]["1"] == [2, 3, 4, 5]
    assert payload["decodable"] is True


def test_every_subcommand_has_help(capsys):
    assert main(["--help"]) == 0
    listing = capsys.readouterr().out
    for name in ("capacity", "rate", "classify", "interference", "scan",
                 "simulate", "audit"):
        assert name in listing
        assert main([name, "--help"]) == 0
        assert capsys.readouterr().out.startswith("usage:")


def test_env_seed_default(capsys, monkeypatch, ex1_file, ex1_lambda_file):
    monkeypatch.setenv("PIRCODEX_SEED", "77")
    code, out = run(capsys, "simulate", "--code", ex1_file, "--lambda",
                    ex1_lambda_file, "--files", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["seed"] == 77
