from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

from cylrig.cli import main
from cylrig.constructions import fixture
from cylrig.graph import parse_graph, read_graph, serialize_graph

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_rank_fig1_with_pair(capsys):
    code, out, _ = run(capsys, "rank", FIX / "fig1.graph", "--pair", "u", "v")
    assert code == 0
    assert "uv-rank: 11" in out
    assert "verdict: uv-dependent" in out


def test_rank_fig1_plain(capsys):
    code, out, _ = run(capsys, "rank", FIX / "fig1.graph")
    assert code == 0
    assert "rank: 12" in out and "verdict: (2,2)-tight" in out


def test_rank_fig2c_numeric(capsys):
    code, out, _ = run(capsys, "rank", FIX / "fig2c.graph", "--pair", "u", "v", "--numeric", "--brute")
    assert code == 0
    assert "uv-rank: 12" in out and "numeric: 12" in out and "brute: 12" in out
    assert "agree: true" in out and "minimally uv-rigid" in out


def test_rank_json_schema(capsys):
    code, out, _ = run(capsys, "rank", FIX / "fig2c.graph", "--pair", "--numeric", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == "cylrig/1"
    assert d["combinatorial_rank"] == 12 == d["numeric_rank"]
    assert d["agree"] is True and d["trials"] == 3
    assert d["brute_rank"] is None
    assert d["verdict"] == "minimally uv-rigid"


def test_rank_sphere(capsys, tmp_path):
    rim = "e h a\ne h b\ne h c\ne h d\ne a b\ne b c\ne c d\ne a d\n"
    f = tmp_path / "wheel.graph"
    f.write_text(rim)
    code, out, _ = run(capsys, "rank", f, "--surface", "sphere", "--pair", "a", "c", "--brute")
    assert code == 0
    assert "rank(G-uv): 7" in out and "rank(G/uv): 5" in out
    assert "verdict: uv-rigid on spheres" in out
    code, out, _ = run(capsys, "rank", f, "--surface", "sphere")
    assert code == 0 and "rank: 7" in out and "verdict: rigid" in out


def test_rank_plain_numeric(capsys):
    code, out, _ = run(capsys, "rank", FIX / "fig1.graph", "--numeric", "--brute", "--json")
    d = json.loads(out)
    assert code == 0 and d["combinatorial_rank"] == d["numeric_rank"] == d["brute_rank"] == 12


def test_rank_input_errors(capsys, tmp_path):
    assert run(capsys, "rank", tmp_path / "missing.graph")[0] == 1
    bad = tmp_path / "bad.graph"
    bad.write_text("e a a\n")
    assert run(capsys, "rank", bad)[0] == 1
    nopair = tmp_path / "nopair.graph"
    nopair.write_text("e a b\n")
    assert run(capsys, "rank", nopair, "--pair")[0] == 1
    assert run(capsys, "rank", nopair, "--pair", "a")[0] == 1
    assert run(capsys, "rank", nopair, "--pair", "a", "q")[0] == 1
    assert run(capsys, "rank", nopair, "--surface", "sphere", "--numeric")[0] == 1
    assert run(capsys, "rank", FIX / "fig1.graph", "--bogus")[0] == 1


def test_usage_error_exits_one(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "--help")[0] == 0


def test_dump_matrix(capsys, tmp_path):
    out = tmp_path / "m.json"
    code, _, _ = run(capsys, "rank", FIX / "fig1.graph", "--pair", "--dump-matrix", out)
    assert code == 0
    d = json.loads(out.read_text())
    assert len(d["entries"]) == 19 and len(d["entries"][0]) == 21
    assert all("/" in x for row in d["entries"] for x in row)


def test_generate_base_case(capsys):
    code, out, _ = run(capsys, "generate", "--n", "7", "--seed", "5")
    assert code == 0
    assert parse_graph(out) == fixture("fig2c")


def test_generate_then_rank(capsys, tmp_path):
    a, b = tmp_path / "a.graph", tmp_path / "b.graph"
    assert run(capsys, "generate", "--n", "10", "--seed", "3", "--out", a)[0] == 0
    assert run(capsys, "generate", "--n", "10", "--seed", "3", "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "rank", a, "--pair", "--numeric")
    assert code == 0 and "verdict: minimally uv-rigid" in out and "agree: true" in out


def test_generate_too_small(capsys):
    assert run(capsys, "generate", "--n", "6")[0] == 1


def test_split_check(capsys, tmp_path):
    k5 = tmp_path / "k5.graph"
    k5.write_text("".join(f"e {a} {b}\n" for i, a in enumerate("abcde") for b in "abcde"[i + 1:]))
    code, out, _ = run(capsys, "split-check", k5, "--pivot", "a", "--moved", "b,c", "--assume-globally-rigid")
    assert code == 0
    assert "verdict: guaranteed" in out
    assert "|V| 5 -> 6, |E| 10 -> 11" in out
    code, out, _ = run(capsys, "split-check", k5, "--pivot", "a", "--moved", "b,c")
    assert "not guaranteed (global rigidity of input not assumed)" in out
    code, out, _ = run(capsys, "split-check", FIX / "fig2c.graph", "--pivot", "v3", "--moved", "v4", "--assume-globally-rigid")
    assert "not guaranteed (split graph minus bridging edge not rigid)" in out
    assert run(capsys, "split-check", k5, "--pivot", "a", "--moved", "")[0] == 1
    assert run(capsys, "split-check", k5, "--pivot", "a", "--moved", "zz")[0] == 1


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-exhaustive-n", "4", "--random-samples", "4", "--workers", "1")
    assert code == 0
    assert "0 disagreements" in out
    assert "exhaustive: 74 instances" in out


def test_verify_json_and_fault(capsys):
    code, out, _ = run(capsys, "verify", "--max-exhaustive-n", "4", "--random-samples", "10",
                       "--workers", "1", "--json", "--inject-fault")
    assert code == 2
    d = json.loads(out)
    assert d["schema"] == "cylrig/1" and d["disagreements"] > 0


def test_verify_guard(capsys):
    assert run(capsys, "verify", "--max-exhaustive-n", "7")[0] == 1
    assert run(capsys, "verify", "--n-min", "9", "--n-max", "7")[0] == 1


def test_fixture_files_round_trip():
    for name in ("fig1", "fig2a", "fig2b", "fig2c"):
        g, pair = read_graph(FIX / f"{name}.graph")
        assert serialize_graph(g, pair) == serialize_graph(*fixture(name))


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cylrig", "rank", str(FIX / "fig1.graph"), "--pair"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "uv-rank: 11" in r.stdout
