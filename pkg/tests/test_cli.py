from __future__ import annotations

import json
import random
import subprocess
import sys

import pytest

from hlc.cli import bytes_to_message, main, message_to_bytes

DESIGNS = {
    "gf25": ["--construction", "all_symbol", "--n", "24", "--k", "14", "--levels", "12:8,4:3"],
    "gf13": ["--construction", "all_symbol", "--n", "12", "--k", "5", "--levels", "6:4,3:2"],
    "gf17": ["--construction", "all_symbol", "--n", "16", "--k", "5", "--levels", "8:3,4:2,2:1"],
    "pyramid": ["--construction", "pyramid", "--k", "4", "--d", "3", "--levels", "r1=2,r2=1", "--delta1", "3"],
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def design(tmp_path, capsys, name):
    path = tmp_path / f"{name}.json"
    code, out = run(capsys, "design", *DESIGNS[name], "--out", path)
    assert code == 0
    return path, json.loads(out)


def test_design_summaries(tmp_path, capsys):
    _, s = design(tmp_path, capsys, "gf25")
    assert (s["field"], s["bound_d"], s["designed_d"], s["optimal"]) == ("GF(5^2)", 6, 6, True)
    assert "length_match" in s["optimal_by"]
    _, s = design(tmp_path, capsys, "gf13")
    assert (s["field"], s["designed_d"], s["optimal"]) == ("GF(13)", 6, True)
    assert "ceiling_identity" in s["optimal_by"]
    path, s = design(tmp_path, capsys, "pyramid")
    assert s["n"] == 10 and s["field"] == "GF(7)"
    assert json.loads(path.read_text())["length_formula"] == 10


def test_design_is_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        assert run(capsys, "design", *DESIGNS["gf25"], "--out", out)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_design_field_override(tmp_path, capsys):
    code, out = run(capsys, "design", *DESIGNS["pyramid"], "--field", "13")
    assert code == 0 and json.loads(out)["field"] == "GF(13)"
    code, out = run(capsys, "design", *DESIGNS["gf13"], "--field", "5^2")
    assert code == 0 and json.loads(out)["field"] == "GF(5^2)"
    assert run(capsys, "design", *DESIGNS["gf13"], "--field", "11")[0] == 3
    assert run(capsys, "design", *DESIGNS["gf13"], "--field", "12")[0] == 3


@pytest.mark.parametrize("argv", [
    ["design", "--construction", "all_symbol", "--n", "12", "--k", "5", "--levels", "5:4,3:2"],
    ["design", "--construction", "all_symbol", "--n", "12", "--k", "5", "--levels", "junk"],
    ["design", "--construction", "all_symbol", "--k", "5"],
    ["design", "--construction", "nope", "--k", "5"],
    ["frobnicate"],
])
def test_usage_errors_exit_3(argv, capsys):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 3


def _encode(tmp_path, capsys, profile, msg, name="s.jsonl"):
    m = tmp_path / "m.json"
    m.write_text(json.dumps(msg))
    out = tmp_path / name
    assert run(capsys, "encode", "--profile", profile, "--in", m, "--out", out)[0] == 0
    return out


def _values(path):
    rows = [json.loads(x) for x in path.read_text().splitlines()]
    return rows[0], [r["value"] for r in rows[1:]]


def _erase(src, dst, indices):
    lines = src.read_text().splitlines()
    for i in indices:
        row = json.loads(lines[i + 1])
        row["value"] = None
        lines[i + 1] = json.dumps(row)
    dst.write_text("\n".join(lines) + "\n")


def test_encode_examples(tmp_path, capsys):
    prof, _ = design(tmp_path, capsys, "gf13")
    assert _values(_encode(tmp_path, capsys, prof, [0] * 5))[1] == [0] * 12
    assert _values(_encode(tmp_path, capsys, prof, [1, 0, 0, 0, 0]))[1] == [1] * 12
    vals = _values(_encode(tmp_path, capsys, prof, [1, 0, 0, 0, 1]))[1]
    assert sum(1 for v in vals if v) == 6
    m = tmp_path / "bad.json"
    for bad in ([1, 2], [0, 0, 0, 0, 13]):
        m.write_text(json.dumps(bad))
        assert run(capsys, "encode", "--profile", prof, "--in", m, "--out", tmp_path / "x")[0] == 3


def test_repair_reports(tmp_path, capsys):
    prof, _ = design(tmp_path, capsys, "gf25")
    shards = _encode(tmp_path, capsys, prof, list(range(14)))
    _, original = _values(shards)
    code, out = run(capsys, "repair", "--profile", prof, "--shards", shards, "--out", tmp_path / "r0")
    assert code == 0 and json.loads(out)["repairs"] == [] and json.loads(out)["total_reads"] == 0
    _erase(shards, tmp_path / "e.jsonl", [7])
    code, out = run(capsys, "repair", "--profile", prof, "--shards", tmp_path / "e.jsonl",
                    "--out", tmp_path / "r.jsonl")
    rep = json.loads(out)
    assert code == 0 and rep["levels_used"] == [2] and rep["total_reads"] == 3
    assert _values(tmp_path / "r.jsonl")[1] == original
    _erase(shards, tmp_path / "bad.jsonl", range(12))
    code, out = run(capsys, "repair", "--profile", prof, "--shards", tmp_path / "bad.jsonl")
    assert code == 2 and json.loads(out)["stuck"]


def test_profile_hash_mismatch(tmp_path, capsys):
    p25, _ = design(tmp_path, capsys, "gf25")
    p13, _ = design(tmp_path, capsys, "gf13")
    shards = _encode(tmp_path, capsys, p13, [1, 2, 3, 4, 5])
    with pytest.raises(SystemExit) as info:
        main(["repair", "--profile", str(p25), "--shards", str(shards)])
    assert info.value.code == 1


def test_verify(tmp_path, capsys):
    p13, _ = design(tmp_path, capsys, "gf13")
    code, out = run(capsys, "verify", "--profile", p13, "--oracle", "--audit")
    rep = json.loads(out)
    assert code == 0 and rep["oracle_d"] == 6 == rep["bound"]
    assert rep["checks"]["indicator_properties"] and rep["violations"] == []
    p25, _ = design(tmp_path, capsys, "gf25")
    code, out = run(capsys, "verify", "--profile", p25)
    rep = json.loads(out)
    assert code == 0 and rep["designed_d"] == rep["bound"] == 6 and rep["checks"]["locality_audit"]
    doc = json.loads(p25.read_text())
    doc["exp"][0] = 19
    tampered = tmp_path / "t.json"
    tampered.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", "--profile", tampered)
    assert code == 1 and not json.loads(out)["checks"]["profile_consistent"]
    code, _ = run(capsys, "verify", "--profile", p25, "--oracle")
    assert code == 3                 # 25^14 codewords exceed the oracle cap


def test_verify_pyramid(tmp_path, capsys):
    prof, _ = design(tmp_path, capsys, "pyramid")
    code, out = run(capsys, "verify", "--profile", prof, "--oracle", "--audit")
    rep = json.loads(out)
    assert code == 0 and rep["oracle_d"] == 3 == rep["bound"]


@pytest.mark.parametrize("name", sorted(DESIGNS))
def test_round_trip_100_seeds(name, tmp_path, capsys):
    prof, summary = design(tmp_path, capsys, name)
    doc = json.loads(prof.read_text())
    q = doc["field"]["p"] ** doc["field"]["m"]
    n, k, d = doc["n"], doc["k"], doc["designed_d"]
    for seed in range(100):
        rng = random.Random(seed)
        msg = [rng.randrange(q) for _ in range(k)]
        shards = _encode(tmp_path, capsys, prof, msg)
        _, original = _values(shards)
        lost = rng.sample(range(n), rng.randint(0, d - 1))
        _erase(shards, tmp_path / "e.jsonl", lost)
        code, _ = run(capsys, "repair", "--profile", prof, "--shards", tmp_path / "e.jsonl",
                      "--out", tmp_path / "r.jsonl")
        assert code == 0
        assert _values(tmp_path / "r.jsonl")[1] == original
        code, out = run(capsys, "decode", "--profile", prof, "--shards", tmp_path / "e.jsonl")
        assert code == 0 and json.loads(out) == msg


def test_raw_bytes_round_trip(tmp_path, capsys):
    prof, _ = design(tmp_path, capsys, "gf25")
    payload = b"\x00h\xff"
    src = tmp_path / "in.bin"
    src.write_bytes(payload)
    shards = tmp_path / "s.jsonl"
    assert run(capsys, "encode", "--profile", prof, "--in", src, "--raw", "--out", shards)[0] == 0
    _erase(shards, tmp_path / "e.jsonl", [0, 5, 13, 20, 23])
    out = tmp_path / "out.bin"
    assert run(capsys, "decode", "--profile", prof, "--shards", tmp_path / "e.jsonl", "--raw", "--out", out)[0] == 0
    assert out.read_bytes() == payload
    src.write_bytes(b"x" * 5)
    assert run(capsys, "encode", "--profile", prof, "--in", src, "--raw", "--out", shards)[0] == 3


@pytest.mark.parametrize("payload", [b"", b"\x00", b"\x00\x00", b"abc", bytes(range(20))])
def test_byte_packing(payload):
    q, k = 25, 60
    assert message_to_bytes(bytes_to_message(payload, q, k), q) == payload


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "hlc.cli", "design", *DESIGNS["gf13"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["designed_d"] == 6
    res = subprocess.run([sys.executable, "-m", "hlc.cli", "encode", "--help"], capture_output=True, text=True)
    assert "little-endian" in res.stdout
