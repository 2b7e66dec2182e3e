"""CLI contract: exit codes, formats, config precedence, round-trips."""

import json
import subprocess
import sys

from qsv.cli import main


def run_cli(args):
    """In-process invocation capturing stdout."""
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(args)
    return rc, buf.getvalue()


def test_coeffs_partition_numbers():
    rc, out = run_cli(["coeffs", "1", "3", "0", "0", "--order", "6",
                       "--normalized"])
    assert rc == 0
    values = [line.split("\t")[1] for line in out.strip().splitlines()[1:]]
    assert values == ["1", "1", "2", "3", "5", "7"]


def test_coeffs_invalid_parameters_exit_2():
    rc, _ = run_cli(["coeffs", "2", "4", "0", "0"])
    assert rc == 2
    rc, _ = run_cli(["coeffs", "2", "5", "0", "1"])
    assert rc == 2
    rc, _ = run_cli(["coeffs", "2", "5", "1", "1", "--order", "0"])
    assert rc == 2


def test_coeffs_json_machine_readable():
    rc, out = run_cli(["coeffs", "3", "8", "1", "1", "--order", "20",
                       "--format", "json", "--normalized"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["pprime"] == 8
    assert payload["terms"][0] == {"q": "0", "value": "1"}
    assert len(payload["terms"]) == 20
    # round trip: parse and re-serialize is idempotent
    assert json.dumps(payload, indent=2) + "\n" == out


def test_character_table():
    rc, out = run_cli(["character", "2", "5", "0", "--order", "3",
                       "--format", "csv"])
    assert rc == 0
    rows = out.strip().splitlines()
    assert rows[0] == "q_exponent,z_exponent,coefficient"
    assert len(rows) > 3


def test_list_contains_expected_ids():
    rc, out = run_cli(["list"])
    assert rc == 0
    assert "thm:generalPolarFiniteOddSpin" in out
    assert len(out.strip().splitlines()) >= 60
    rc, out = run_cli(["list", "--format", "json"])
    payload = json.loads(out)
    assert isinstance(payload, list) and {"id", "anchor"} <= set(payload[0])


def test_verify_pass_and_exit_codes(tmp_path):
    out_file = tmp_path / "report.json"
    rc = main(["verify", "--filter", "lemma:unusualThetaIdentity1",
               "--format", "json", "--output", str(out_file)])
    assert rc == 0
    payload = json.loads(out_file.read_text())
    assert payload["summary"] == {"pass": 1, "fail": 0, "skipped": 0}
    check = payload["checks"][0]
    assert check["status"] == "pass"
    assert check["wall_time_ms"] == 0  # deterministic default


def test_verify_csv_row_count(tmp_path):
    out_file = tmp_path / "report.csv"
    rc = main(["verify", "--filter", "eq:kacPeterson:*", "--order", "30",
               "--format", "csv", "--output", str(out_file)])
    assert rc == 0
    rows = out_file.read_text().strip().splitlines()
    assert len(rows) == 1 + 4  # header + one row per check


def test_verify_skip_exit_codes():
    # forcing order 50 onto the four-term opening display skips it
    rc, _ = run_cli(["verify", "--filter", "eq:f3-opening-coefficients",
                     "--order", "50"])
    assert rc == 3
    rc, _ = run_cli(["verify", "--filter", "eq:f3-opening-coefficients",
                     "--order", "50", "--strict-skip"])
    assert rc == 1


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "qsv.cfg"
    cfg.write_text("order=5\nformat=json\n")
    rc, out = run_cli(["--config", str(cfg), "coeffs", "1", "3", "0", "0",
                       "--normalized"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["order"] == "5"
    # explicit flag beats the file
    rc, out = run_cli(["--config", str(cfg), "coeffs", "1", "3", "0", "0",
                       "--normalized", "--order", "3", "--format", "csv"])
    assert rc == 0
    assert out.splitlines()[0] == "q_exponent,coefficient"
    assert len(out.strip().splitlines()) == 1 + 3


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "qsv.cli", "coeffs", "1", "3", "0", "0",
         "--order", "4", "--normalized", "--format", "csv"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "0,1"


def test_byte_stable_output():
    args = ["verify", "--filter", "eq:mockIdentity-*", "--order", "25",
            "--format", "json"]
    rc1, out1 = run_cli(args)
    rc2, out2 = run_cli(args)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_qsv_threads_env_default(monkeypatch):
    monkeypatch.setenv("QSV_THREADS", "2")
    rc, out = run_cli(["verify", "--filter", "eq:kacPeterson:C1_00",
                       "--order", "20", "--format", "json"])
    assert rc == 0
    assert json.loads(out)["summary"]["pass"] == 1
