import json
import subprocess
import sys

import pytest

from kronlef import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_coeff_first_example_entry(capsys):
    code, out, _ = run(capsys, "coeff", "--d", "3", "--k", "4", "--tuple", "4,2;2,2,2;3,2,1",
                       "--jobs", "1")
    assert code == 0 and out["value"] == "1"


def test_coeff_both_backends(capsys):
    code, out, _ = run(capsys, "coeff", "--tuple", "2,1;2,1;2,1", "--backend", "both")
    assert code == 0 and out["hwv"] == out["characters"] == out["value"] == "1"


def test_sl2_check(capsys):
    code, out, _ = run(capsys, "sl2-check", "--d", "3")
    assert code == 0 and out["holds"] is True and out["checked"] == 256


def test_at_full_cube(capsys):
    code, out, _ = run(capsys, "at", "--d", "3", "--k", "2")
    assert code == 0
    assert out["negative"] == "0" and out["positive"] == out["at"] == "24"


def test_at_of_type(capsys):
    code, out, _ = run(capsys, "at", "--type", "111,222")
    assert code == 0 and out["at"] == "1"
    code, _, err = run(capsys, "at", "--type", "111")
    assert code == 2 and "magic" in err


def test_sequence_empty_tuple(capsys):
    code, out, _ = run(capsys, "sequence", "--d", "3", "--k", "2", "--tuple", ";;")
    assert code == 0 and out["values"] == ["1"] * 5 and out["symmetric"]


def test_omega_power(capsys):
    code, out, _ = run(capsys, "omega-power", "--d", "3", "--k", "3", "--n", "2")
    assert code == 0 and out["zero"] is True
    code, out, _ = run(capsys, "omega-power", "--n", "4", "--terms")
    assert out["vector"][0]["coefficient"] == "24"


def test_lefschetz_modes(capsys):
    code, out, _ = run(capsys, "lefschetz", "lp", "--tuple", "1;1;1")
    assert code == 0 and out["holds"]
    code, out, _ = run(capsys, "lefschetz", "hlp", "--tuple", ";;")
    assert code == 0 and out["holds"]
    code, out, _ = run(capsys, "lefschetz", "lp-full", "--k", "4")
    assert code == 0 and out["holds"] is False and out["witnesses"][0]["vector"] == "slice"


def test_magic_count(capsys):
    code, out, _ = run(capsys, "magic-count")
    assert out["counts"] == ["1", "4", "8", "4", "1"]
    code, out, _ = run(capsys, "magic-count", "--n", "1", "--list")
    assert out["count"] == "4" and len(out["sets"]) == 4


def test_hodge_check(capsys):
    code, out, _ = run(capsys, "hodge-check", "--tuple", "2,1;2,1;2,1")
    assert code == 0 and out["holds"] and out["star_star"]


def test_full_report(capsys):
    code, out, _ = run(capsys, "magic-count", "--json")
    assert set(out) == {"command", "parameters", "results", "timings", "cache"}
    assert out["command"] == "magic-count"


def test_usage_errors(capsys):
    assert run(capsys, "coeff", "--tuple", "2;1")[0] == 2
    assert run(capsys, "coeff", "--tuple", "x;1;1")[0] == 2
    assert run(capsys, "coeff")[0] == 2
    assert run(capsys, "verify-paper", "--only", "99")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 2


def test_budget_exit(capsys):
    code, out, err = run(capsys, "coeff", "--tuple", "2,2,2;2,2,2;2,2,2", "--backend", "hwv",
                         "--budget", "1")
    assert code == 1 and "error" in out


def test_verification_failure_exit(capsys, monkeypatch):
    from kronlef import verify
    monkeypatch.setitem(verify.CRITERIA, 11, ("forced", None, lambda opts: (False, {})))
    code, out, err = run(capsys, "verify-paper", "--only", "11")
    assert code == 3 and out["passed"] is False and "[FAIL]" in err


def test_verify_second_run_hits_character_cache(tmp_path):
    env = {"KRON_CACHE_DIR": str(tmp_path), "PATH": ""}
    cmd = [sys.executable, "-m", "kronlef.cli", "verify-paper", "--only", "6", "--jobs", "1"]
    rates = []
    for _ in range(2):
        done = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True)
        rates.append(json.loads(done.stdout)["character_cache"]["hit_rate"])
    assert rates[1] >= 0.9 and rates[1] >= rates[0]
