"""Command-line surface: exit codes, report shapes, determinism."""

import json
import subprocess
import sys

import pytest

from anisowidth.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def sobolev_file(tmp_path):
    return write(tmp_path, "prob.json", {"kind": "sobolev", "p": [1], "q": [4], "r": [2]})


@pytest.fixture
def ball_file(tmp_path):
    return write(
        tmp_path, "ball.json", {"kind": "ball", "k": [16], "n": 4, "p": [2], "q": [4]}
    )


# ---------------------------------------------------------------------------
# exponent / phi


def test_exponent_report_keys(sobolev_file, capsys):
    assert main(["exponent", "--input", sobolev_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exponent"] == "3/2"
    assert out["theta_table"] == {"0": "5/2", "1": "3/2"}
    assert out["argmin_index"] == 1
    assert out["h_min_crosscheck"]["agrees"] is True
    assert out["conditions"]["emb_cond_ok"] is True
    assert out["mu"] == 0 and out["nu"] == 0


def test_exponent_low_q_dispatch(tmp_path, capsys):
    path = write(
        tmp_path,
        "lowq.json",
        {"kind": "nikolskii", "p": [1, 2], "q": [2, 2], "r": [1, 1], "nu_split": 1},
    )
    assert main(["exponent", "--input", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["mode"] == "low_q"
    assert out["exponent"] == "1/4"


def test_exponent_rejects_ball_kind(ball_file, capsys):
    assert main(["exponent", "--input", ball_file]) == 2


def test_exponent_not_compact_exit_code(tmp_path, capsys):
    path = write(
        tmp_path, "bad.json", {"kind": "sobolev", "p": [1], "q": [4], "r": [0.2]}
    )
    assert main(["exponent", "--input", path]) == 2
    err = capsys.readouterr().err
    assert "not compactly embedded" in err


def test_phi_report_keys(ball_file, capsys):
    assert main(["phi", "--input", ball_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 1.0
    assert out["branch"] == "constant"
    assert out["regime"] == "corner"
    assert out["s_vector"] == [1]


def test_phi_low_q_dispatch(tmp_path, capsys):
    path = write(
        tmp_path,
        "lowq_ball.json",
        {
            "kind": "ball",
            "k": [8, 9],
            "n": 0,
            "p": [1, "inf"],
            "q": [2, 2],
            "nu_split": 1,
        },
    )
    assert main(["phi", "--input", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["branch"] == "low_q"
    assert out["value"] == pytest.approx(3.0, rel=1e-9)


def test_phi_rejects_class_kind(sobolev_file, capsys):
    assert main(["phi", "--input", sobolev_file]) == 2


def test_phi_guard_rejects_large_rank(tmp_path, capsys):
    path = write(
        tmp_path, "guard.json", {"kind": "ball", "k": [4], "n": 3, "p": [2], "q": [2]}
    )
    assert main(["phi", "--input", path]) == 2


# ---------------------------------------------------------------------------
# input handling


def test_missing_file_exit_two(capsys):
    assert main(["exponent", "--input", "/nonexistent/prob.json"]) == 2


def test_garbage_json_exit_two(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("not json at all")
    assert main(["exponent", "--input", str(path)]) == 2


def test_unknown_kind_exit_two(tmp_path, capsys):
    path = write(tmp_path, "weird.json", {"kind": "mystery", "p": [2]})
    assert main(["exponent", "--input", str(path)]) == 2


def test_toml_requires_new_interpreter(tmp_path, capsys):
    path = tmp_path / "prob.toml"
    path.write_text('kind = "sobolev"\n')
    code = main(["exponent", "--input", str(path)])
    if sys.version_info < (3, 11):
        assert code == 2
        assert "tomllib" in capsys.readouterr().err
    else:
        assert code == 2  # contentless file still fails validation


def test_inf_strings_accepted(tmp_path, capsys):
    path = write(
        tmp_path,
        "infp.json",
        {"kind": "sobolev", "p": ["inf", 2], "q": [2, 2], "r": [1, 1]},
    )
    assert main(["exponent", "--input", path]) == 0


def test_bad_numeric_entry(tmp_path, capsys):
    path = write(
        tmp_path, "badnum.json", {"kind": "sobolev", "p": ["two"], "q": [2], "r": [1]}
    )
    assert main(["exponent", "--input", path]) == 2


# ---------------------------------------------------------------------------
# output formats


def test_table_format(sobolev_file, capsys):
    assert main(["exponent", "--input", sobolev_file, "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "exponent" in out and "3/2" in out


def test_csv_format(sobolev_file, capsys):
    assert main(["exponent", "--input", sobolev_file, "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "key,value"
    assert any(line.startswith("exponent,") for line in lines)


# ---------------------------------------------------------------------------
# verify suites


def test_verify_norms_passes(capsys):
    assert main(["verify", "norms", "--seed", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["violations"] == 0
    assert out["checks"] > 0
    assert all("property" in row for row in out["rows"])


def test_verify_interp_passes(capsys):
    assert main(["verify", "interp", "--seed", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["violations"] == 0


def test_verify_kernels_passes(capsys):
    assert main(["verify", "kernels", "--seed", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["violations"] == 0
    names = {row["property"] for row in out["rows"]}
    assert "fejer_mean_one" in names
    assert "weyl_inversion" in names


def test_verify_rates_passes(capsys):
    assert main(["verify", "rates", "--seed", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["violations"] == 0


# ---------------------------------------------------------------------------
# full report and determinism


def test_report_writes_artifacts(tmp_path, sobolev_file, capsys):
    out_dir = tmp_path / "artifacts"
    code = main(
        ["report", "--out", str(out_dir), "--seed", "3", "--input", sobolev_file]
    )
    assert code == 0
    summary = json.loads((out_dir / "summary.json").read_text())
    assert set(summary["suites"]) == {"interp", "kernels", "norms", "rates", "sandwich"}
    assert all(v["violations"] == 0 for v in summary["suites"].values())
    assert summary["problem"]["exponent"] == "3/2"
    rows = (out_dir / "verify_rows.csv").read_text().splitlines()
    assert rows[0] == "suite,property,status,detail"
    assert len(rows) > 10
    assert (out_dir / "sandwich_ledger.csv").exists()


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "anisowidth.cli", *args],
        capture_output=True,
        timeout=300,
    )


def test_stdout_byte_identical_across_runs(sobolev_file):
    a = run_cli(["exponent", "--input", sobolev_file])
    b = run_cli(["exponent", "--input", sobolev_file])
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout

    c = run_cli(["verify", "norms", "--seed", "9"])
    d = run_cli(["verify", "norms", "--seed", "9"])
    assert c.returncode == d.returncode == 0
    assert c.stdout == d.stdout


def test_console_help():
    res = run_cli(["--help"])
    assert res.returncode == 0
    assert b"anisowidth" in res.stdout
