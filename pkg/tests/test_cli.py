"""Command-line behavior: formats, rendering, exit codes, golden output."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

import factzeros.cli as cli
from factzeros.cli import OutputRecord, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_process(*argv):
    return subprocess.run(
        [sys.executable, "-m", "factzeros", *argv],
        capture_output=True,
        text=True,
    )


# --- record envelope --------------------------------------------------------


def test_record_json_round_trip():
    rec = OutputRecord("1", "zeros", {"base": 10, "n": 25}, {"zeros": 6})
    line = rec.to_json()
    assert OutputRecord.from_json(line) == rec
    assert json.loads(line)["schema_version"] == "1"


def test_record_serialization_is_deterministic():
    a = OutputRecord("1", "x", {"b": 1, "a": 2}, {"d": 3, "c": 4})
    b = OutputRecord("1", "x", {"a": 2, "b": 1}, {"c": 4, "d": 3})
    assert a.to_json() == b.to_json()
    assert " " not in a.to_json()


# --- rendering --------------------------------------------------------------


def test_zeros_single_value_text(capsys):
    code, out, _ = run(capsys, "zeros", "--base", "10", "25")
    assert code == 0 and out == "6\n"


def test_zeros_range_text_pairs(capsys):
    code, out, _ = run(capsys, "zeros", "--base", "2", "3..5")
    assert code == 0
    assert out == "3 1\n4 3\n5 3\n"


def test_zeros_mixed_tokens(capsys):
    code, out, _ = run(capsys, "zeros", "--base", "10", "4..6", "25")
    assert code == 0
    assert out == "4 0\n5 1\n6 1\n6\n"


def test_zeros_json_payload(capsys):
    code, out, _ = run(capsys, "zeros", "--base", "12", "12", "--format", "json")
    rec = OutputRecord.from_json(out.strip())
    assert code == 0
    assert rec.command == "zeros"
    assert rec.inputs == {"base": 12, "n": 12}
    assert rec.results == {"zeros": 5}


def test_zeros_csv(capsys):
    code, out, _ = run(capsys, "zeros", "--base", "10", "24..26", "--format", "csv")
    assert code == 0
    assert out == "n,zeros\n24,4\n25,6\n26,6\n"


def test_zeros_bfile(capsys):
    code, out, _ = run(capsys, "zeros", "--base", "10", "5..9", "--format", "bfile")
    assert code == 0
    assert out == "5 1\n6 1\n7 1\n8 1\n9 1\n"


def test_jumps_text(capsys):
    code, out, _ = run(capsys, "jumps", "--base", "2", "--to", "8")
    assert code == 0
    assert out.splitlines() == ["2 1 2^1:1", "4 2 2^1:2", "6 1 2^1:1", "8 3 2^1:3"]


def test_jumps_empty_range(capsys):
    code, out, _ = run(capsys, "jumps", "--base", "7", "--from", "5", "--to", "6")
    assert code == 0 and out == ""


def test_jumps_json_components(capsys):
    _, out, _ = run(capsys, "jumps", "--base", "10", "--to", "10", "--format", "json")
    first = OutputRecord.from_json(out.splitlines()[0])
    assert first.results["location"] == 5
    assert first.results["per_component"] == [
        {"prime": 2, "exponent": 1, "amplitude": 0},
        {"prime": 5, "exponent": 1, "amplitude": 1},
    ]


def test_member_text_and_codes(capsys):
    code, out, _ = run(capsys, "member", "--base", "2", "0")
    assert code == 0 and out == "0 member witness=0\n"
    code, out, _ = run(capsys, "member", "--base", "10", "5")
    assert code == 2
    assert out == "5 non-member bracket n=24 below=4 above=6\n"


def test_member_json_bracket(capsys):
    code, out, _ = run(capsys, "member", "--base", "10", "5", "--format", "json")
    rec = OutputRecord.from_json(out.strip())
    assert code == 2
    assert rec.results == {
        "member": False,
        "witness": None,
        "bracket": {"n": 24, "z_below": 4, "z_above": 6},
    }


def test_gaps_text_and_bfile(capsys):
    code, out, _ = run(capsys, "gaps", "--base", "2", "--max", "15")
    assert code == 0
    assert out == "2\n5\n6\n9\n12\n13\n14\n"
    _, out, _ = run(capsys, "gaps", "--base", "2", "--max", "15", "--format", "bfile")
    assert out == "1 2\n2 5\n3 6\n4 9\n5 12\n6 13\n7 14\n"


def test_families_text(capsys):
    code, out, _ = run(capsys, "families", "prop3a", "-p", "2", "-n", "3")
    assert code == 0 and out == "6\n5\n"
    code, out, _ = run(capsys, "families", "cor3", "-q", "3")
    assert code == 0 and out == "20\n"


def test_families_verify_annotates(capsys):
    code, out, _ = run(capsys, "families", "prop3a", "-p", "2", "-n", "3", "--verify")
    assert code == 0
    assert out == "6 non-member\n5 non-member\n"


def test_families_as_printed(capsys):
    code, out, _ = run(capsys, "families", "cor3", "-q", "3", "--as-printed")
    assert code == 0 and out == "62\n"


def test_density_text(capsys):
    code, out, _ = run(capsys, "density", "-p", "2", "-k", "4")
    assert code == 0
    assert out == "p=2 N=15 a_exact=9 formula=10 ratio=3/5 divergence=true\n"


def test_density_by_upper_bound(capsys):
    code, out, _ = run(capsys, "density", "-p", "2", "-N", "10", "--format", "json")
    rec = OutputRecord.from_json(out.strip())
    assert code == 0
    assert rec.inputs == {"p": 2, "k": None, "N": 10}
    assert rec.results["a_paper_formula"] is None
    assert rec.results["divergence"] is False


def test_verify_clean_run(capsys):
    code, out, _ = run(capsys, "verify", "--bases", "2,10..12", "--n-max", "40")
    assert code == 0
    assert "checked=164" in out and "mismatches=0" in out


def test_verify_reports_mismatch(capsys, monkeypatch):
    real = cli.z_base
    monkeypatch.setattr(cli, "z_base", lambda b, n: real(b, n) + (n == 7))
    code, out, _ = run(capsys, "verify", "--bases", "10", "--n-max", "9")
    assert code == 3
    assert "mismatches=1" in out
    assert "MISMATCH base=10 n=7" in out


def test_verify_json_mismatch_sample(capsys, monkeypatch):
    monkeypatch.setattr(cli, "z_base", lambda b, n: 99)
    code, out, _ = run(capsys, "verify", "--bases", "10", "--n-max", "2", "--format", "json")
    rec = OutputRecord.from_json(out.strip())
    assert code == 3
    assert rec.results["mismatches"] == 3
    assert rec.results["mismatch_sample"][0] == {
        "base": 10,
        "n": 0,
        "oracle": 0,
        "closed_form": 99,
    }


# --- format selection -------------------------------------------------------


def test_env_var_sets_default_format(capsys, monkeypatch):
    monkeypatch.setenv(cli.FORMAT_ENV_VAR, "json")
    _, out, _ = run(capsys, "zeros", "--base", "10", "25")
    assert out.startswith("{")


def test_flag_overrides_env_var(capsys, monkeypatch):
    monkeypatch.setenv(cli.FORMAT_ENV_VAR, "json")
    _, out, _ = run(capsys, "zeros", "--base", "10", "25", "--format", "text")
    assert out == "6\n"


def test_bad_env_format_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv(cli.FORMAT_ENV_VAR, "yaml")
    code, out, err = run(capsys, "zeros", "--base", "10", "25")
    assert code == 1 and out == "" and "yaml" in err


@pytest.mark.parametrize("command", [["jumps", "--base", "2", "--to", "4"], ["member", "--base", "2", "3"], ["density", "-p", "2", "-k", "2"], ["verify", "--bases", "10", "--n-max", "2"]])
def test_bfile_rejected_outside_sequences(capsys, command):
    code, _, err = run(capsys, *command, "--format", "bfile")
    assert code == 1
    assert "bfile" in err


# --- usage errors -----------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["zeros", "--base", "10", "5..2"],
        ["zeros", "--base", "10", "2..x"],
        ["zeros", "--base", "1", "5"],
        ["zeros", "--base", "10", "--", "-3"],
        ["zeros", "--base", "10"],
        ["member", "--base", "10"],
        ["families", "prop3b", "-p", "2", "-n", "3"],
        ["families", "cor3", "-q", "3", "--as-printed", "--verify"],
        ["families", "cor2", "-p", "2", "-k", "3"],
        ["density", "-p", "2"],
        ["density", "-p", "2", "-k", "2", "-N", "5"],
        ["verify", "--bases", "1", "--n-max", "4"],
        ["verify", "--bases", "10", "--n-max", "-1"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err != ""


def test_family_precondition_exits_4(capsys):
    code, _, err = run(capsys, "families", "prop7", "-p", "2", "-r", "2", "-k", "2")
    assert code == 4
    assert "precondition" in err


# --- end-to-end process tests ----------------------------------------------


def test_exit_codes_through_real_processes():
    assert run_process("zeros", "--base", "10", "25").returncode == 0
    assert run_process("zeros", "--base", "0", "25").returncode == 1
    assert run_process("member", "--base", "2", "2").returncode == 2
    assert run_process("families", "prop7", "-p", "2", "-r", "2", "-k", "2").returncode == 4


def test_verify_mismatch_through_real_process():
    script = (
        "import factzeros.cli as c\n"
        "c.z_base = lambda b, n: 99\n"
        "raise SystemExit(c.main(['verify', '--bases', '10', '--n-max', '3']))\n"
    )
    proc = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True)
    assert proc.returncode == 3


def test_console_output_matches_in_process():
    proc = run_process("gaps", "--base", "2", "--max", "15")
    assert proc.returncode == 0
    assert proc.stdout == "2\n5\n6\n9\n12\n13\n14\n"


def test_bfile_golden_is_byte_exact():
    proc = subprocess.run(
        [sys.executable, "-m", "factzeros", "zeros", "--base", "10", "0..30", "--format", "bfile"],
        capture_output=True,
    )
    golden = (GOLDEN / "b10_zeros_0_30.txt").read_bytes()
    assert proc.returncode == 0
    assert proc.stdout == golden
    assert b"\r" not in proc.stdout
    assert max(proc.stdout) < 128  # pure ASCII


def test_json_round_trips_across_commands(capsys):
    commands = [
        ["zeros", "--base", "10", "0..40"],
        ["jumps", "--base", "12", "--to", "80"],
        ["member", "--base", "10", "5"],
        ["member", "--base", "2", "3"],
        ["gaps", "--base", "2", "--max", "15"],
        ["families", "prop3b", "-p", "3", "-n", "4", "-k", "2", "--verify"],
        ["families", "cor3", "-q", "5"],
        ["density", "-p", "3", "-k", "3"],
        ["verify", "--bases", "2..6", "--n-max", "25"],
    ]
    seen = 0
    for argv in commands:
        _, out, _ = run(capsys, *argv, "--format", "json")
        for line in out.splitlines():
            assert OutputRecord.from_json(line).to_json() == line
            seen += 1
    assert seen > 60
