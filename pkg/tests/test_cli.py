import json
import subprocess
import sys

import pytest

from rwhopf.cli import EXIT_CAP, EXIT_FAILURE, EXIT_INPUT, EXIT_OK, main, parse_range
from rwhopf.divided_power import make_A1
from rwhopf.errors import InputError
from rwhopf.hopf_core import dump_model


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("-4..8") == list(range(-4, 9))
    assert parse_range("3") == [3]
    with pytest.raises(InputError):
        parse_range("5..2")
    with pytest.raises(InputError):
        parse_range("a..b")


def test_partitions(capsys):
    code, out, _ = run(capsys, "partitions", "--n", "10")
    assert code == EXIT_OK and out.strip() == "42"


def test_verify_eq46_grid(capsys):
    code, out, _ = run(capsys, "verify-eq46", "--k", "-4..8", "--trunc", "20", "--output", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["schema"] == 1 and len(data["cells"]) == 13
    assert all(c["ok"] for c in data["cells"])


def test_verify_tor_k(capsys):
    code, out, _ = run(capsys, "verify-tor-k", "--k=-3..6")
    assert code == EXIT_OK and "False" not in out


def test_verify_induction_text_table(capsys):
    code, out, _ = run(capsys, "verify-induction", "--m", "1..3", "--trunc", "16")
    assert code == EXIT_OK
    assert out.splitlines()[0].split()[:4] == ["k", "\\", "m", "1"]
    assert "FAIL" not in out


def test_verify_induction_small_trunc(capsys):
    code, _, err = run(capsys, "verify-induction", "--trunc", "4")
    assert code == EXIT_INPUT and "too small" in err


def test_hopf_check_builtin(capsys):
    code, out, _ = run(capsys, "hopf-check", "--algebra", "A2", "--k", "1", "--trunc", "6")
    assert code == EXIT_OK and "hold" in out


def test_hopf_check_corrupted_model(capsys, tmp_path):
    data = dump_model(make_A1(1, 8).hopf)
    data["coproduct"].remove(["b2", "b1", "b1", 1])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "hopf-check", "--model", str(path), "--output", "json")
    assert code == EXIT_FAILURE
    axioms = {f["axiom"] for f in json.loads(out)["failures"]}
    assert "coassociativity" in axioms


def test_hopf_check_good_model(capsys, tmp_path):
    path = tmp_path / "a1.json"
    path.write_text(json.dumps(dump_model(make_A1(2, 10).hopf)))
    code, _, _ = run(capsys, "hopf-check", "--model", str(path))
    assert code == EXIT_OK


def test_hopf_check_malformed_model(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{ nope")
    code, _, err = run(capsys, "hopf-check", "--model", str(path))
    assert code == EXIT_INPUT and "input error" in err
    code, _, _ = run(capsys, "hopf-check", "--model", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT


def test_verschiebung(capsys):
    code, out, _ = run(capsys, "verschiebung", "--k", "1..2", "--trunc", "12", "--output", "json")
    assert code == EXIT_OK
    assert [c["k"] for c in json.loads(out)["cells"]] == [1, 2]


def test_tor(capsys):
    code, out, _ = run(capsys, "tor", "--degrees", "1,2", "--trunc", "6", "--s-max", "3", "--output", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["mismatches"] == []
    code, _, _ = run(capsys, "tor", "--k", "2", "--trunc", "6", "--no-bar")
    assert code == EXIT_OK


def test_tor_cap(capsys):
    code, _, err = run(capsys, "tor", "--degrees", "1,1,1,1", "--trunc", "10", "--cap", "100")
    assert code == EXIT_CAP and "cap" in err


def test_edge(capsys):
    code, out, _ = run(capsys, "edge", "--k", "2", "--ell", "4")
    assert code == EXIT_OK and "injective" in out
    code, _, _ = run(capsys, "edge", "--k", "-3", "--ell", "10", "--cap", "50")
    assert code == EXIT_CAP


def test_series(capsys):
    code, out, _ = run(capsys, "series", "--which", "r", "--k", "1", "--trunc", "3")
    assert out.strip() == "k=1: 1 + a + 2*a^2 + 4*a^3 + O(a^4)"


def test_bad_trunc(capsys):
    code, _, _ = run(capsys, "verify-eq46", "--trunc", "0")
    assert code == EXIT_INPUT


def test_json_is_deterministic_across_workers(capsys):
    _, one, _ = run(capsys, "verify-induction", "--m", "1..4", "--output", "json", "--workers", "1")
    _, four, _ = run(capsys, "verify-induction", "--m", "1..4", "--output", "json", "--workers", "4")
    assert one == four


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rwhopf", "partitions", "--n", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "5"
