import json
import os

import pytest

from wittlat import io as wio
from wittlat.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_rz_stream(capsys):
    code, out, _ = run_cli(["enumerate", "rz", "--p", "2", "--n", "2", "--j", "1"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    header = json.loads(lines[0])
    assert header["p"] == 2 and header["n"] == 2 and header["F"] == [1, 1, 1]
    assert header["kind"] == "rz" and "version" in header
    assert len(lines) == 1 + 3


def test_enumerate_hearts_27(capsys):
    code, out, _ = run_cli(["enumerate", "hearts", "--p", "2", "--n", "4"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 27


def test_enumerate_requires_k(capsys):
    code, _, err = run_cli(["enumerate", "dl", "--p", "2", "--n", "2"], capsys)
    assert code == 3
    assert "needs --k" in err


def test_invalid_k_exit_3(capsys):
    code, _, err = run_cli(["enumerate", "dl", "--p", "2", "--n", "4", "--k", "3"], capsys)
    assert code == 3
    assert "out of range" in err


def test_odd_m_exit_3(capsys):
    code, _, err = run_cli(["verify", "duality", "--p", "2", "--m", "3", "--n", "2"], capsys)
    assert code == 3


def test_ceiling_exit_2(capsys):
    code, _, err = run_cli(
        ["enumerate", "rz", "--p", "2", "--n", "4", "--ceiling", "10"], capsys
    )
    assert code == 2
    assert "ceiling" in err


def test_unknown_flag_exit_3(capsys):
    code, _, _ = run_cli(["enumerate", "rz", "--bogus"], capsys)
    assert code == 3


def test_cache_roundtrip(tmp_path, capsys):
    args = ["enumerate", "rz", "--p", "2", "--n", "2",
            "--cache-dir", str(tmp_path)]
    code, out1, err1 = run_cli(args, capsys)
    assert code == 0 and "cache hit" not in err1
    code, out2, err2 = run_cli(args, capsys)
    assert code == 0 and "cache hit" in err2
    assert out1 == out2
    # exactly one cache entry was written
    entries = [f for f in os.listdir(tmp_path) if f.endswith(".jsonl")]
    assert len(entries) == 1


def test_cache_key_includes_version(tmp_path):
    k1 = wio.cache_key("rz", {"p": 2}, "0.1.0")
    k2 = wio.cache_key("rz", {"p": 2}, "0.2.0")
    assert k1 != k2


def test_verify_theorem_a_n2(capsys):
    code, out, _ = run_cli(
        ["verify", "theorem-A", "--p", "2", "--n", "2", "--k", "1"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    counts = payload["suites"][0]["counts"]
    assert counts["rz_k"] == counts["dl"] == counts["pairs"] == 3


def test_verify_all_n2(capsys):
    code, out, _ = run_cli(
        ["verify", "all", "--p", "2", "--n", "2", "--j-max", "1"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    names = [s["suite"] for s in payload["suites"]]
    assert set(names) >= {"duality", "stratification", "theorem-A", "theorem-B", "beta", "counts"}


def test_table_csv_roundtrip(capsys):
    code, out, _ = run_cli(["table", "--p", "2", "--n", "2", "--j-max", "1"], capsys)
    assert code == 0
    rows = wio.parse_census_csv(out)
    assert rows[0] == {
        "p": "2", "m": "2", "n": "2", "k": "1", "j": "1",
        "count": "3", "oracle_count": "3", "match": "true",
    }


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("WITTLAT_P", "3")
    code, out, _ = run_cli(["enumerate", "rz", "--n", "2"], capsys)
    assert code == 0
    header = json.loads(out.splitlines()[0])
    assert header["p"] == 3
    # explicit flag wins over the environment
    code, out, _ = run_cli(["enumerate", "rz", "--p", "2", "--n", "2"], capsys)
    header = json.loads(out.splitlines()[0])
    assert header["p"] == 2


def test_determinism_byte_identical(capsys):
    args = ["enumerate", "dl", "--p", "2", "--n", "2", "--k", "1", "--seed", "5"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2
