import csv
import io
import subprocess
import sys

import pytest

from squarerun.cli import BENCH_FIELDS, RUNS_FIELDS, SCHEMA, SQUARE_FIELDS, main
from squarerun.corpus import read_tokens


def rows(text):
    lines = text.strip().split("\n")
    assert lines[0] == SCHEMA
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_gen(tmp_path, capsys):
    assert main(["gen", "tm3", "--n", "7"]) == 0
    assert capsys.readouterr().out == "2 1 0 2 0 1 2\n"
    a, b = tmp_path / "a", tmp_path / "b"
    for f in (a, b):
        assert main(["gen", "random", "--n", "10", "--sigma", "2", "--seed", "1", "--out", str(f)]) == 0
    assert a.read_text() == b.read_text()
    assert main(["gen", "unary", "--n", "3", "--out", str(a)]) == 0
    assert read_tokens(a) == [0, 0, 0]
    assert main(["gen", "nope", "--n", "3"]) == 2
    assert main(["gen", "random", "--n", "3"]) == 2
    assert main(["gen", "periodic", "--n", "9", "--period", "2", "--out", str(a)]) == 0


def test_squares(tmp_path, capsys):
    tm = tmp_path / "tm"
    main(["gen", "tm3", "--n", "4096", "--out", str(tm)])
    assert main(["squares", str(tm), "--algo", "phased"]) == 0
    out = rows(capsys.readouterr().out)
    assert list(out[0]) == SQUARE_FIELDS and out[0]["found"] == "0"
    ban = tmp_path / "ban"
    ban.write_bytes(b"banananas")
    assert main(["squares", str(ban), "--algo", "brute", "--raw"]) == 1
    r = rows(capsys.readouterr().out)[0]
    assert r["witness_half"] == "2" and r["n"] == "9"
    for algo in ("ml", "phased"):
        assert main(["squares", str(ban), "--algo", algo, "--raw"]) == 1
    assert main(["squares", str(ban), "--algo", "simple", "--sigma", "4", "--raw"]) == 1
    capsys.readouterr()
    assert main(["squares", str(ban), "--algo", "simple", "--raw"]) == 2
    assert "needs --sigma" in capsys.readouterr().err
    assert main(["squares", str(tmp_path / "missing")]) == 2
    bad = tmp_path / "bad"
    bad.write_text("1 2 x\n")
    assert main(["squares", str(bad)]) == 2


def test_runs(tmp_path, capsys):
    mis = tmp_path / "mis"
    mis.write_bytes(b"mississippi\n")
    outs = {}
    for algo in ("brute", "dc", "phased"):
        assert main(["runs", str(mis), "--raw", "--algo", algo]) == 0
        cap = capsys.readouterr()
        outs[algo] = cap.out
        assert list(rows(cap.err)[0]) == RUNS_FIELDS
    assert outs["phased"] == outs["brute"] == outs["dc"] == "2 8 3\n3 4 1\n6 7 1\n9 10 1\n"
    tm = tmp_path / "tm"
    main(["gen", "tm3", "--n", "1024", "--out", str(tm)])
    main(["runs", str(tm)])
    assert capsys.readouterr().out == ""
    u = tmp_path / "u"
    main(["gen", "unary", "--n", "8", "--out", str(u)])
    csv_path = tmp_path / "r.csv"
    main(["runs", str(u), "--csv", str(csv_path)])
    assert capsys.readouterr().out == "1 8 1\n"
    assert rows(csv_path.read_text())[0]["runs"] == "1"


def test_bench_lower_alpha(capsys):
    assert main(["bench", "--suite", "lower-alpha", "--sizes", "1024", "--sigmas", "4"]) == 0
    r = rows(capsys.readouterr().out)
    assert list(r[0]) == BENCH_FIELDS
    assert int(r[0]["comparisons_negative"]) > 512 and r[0]["ok"] == "1"


def test_bench_lower_square_small(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--suite", "lower-square", "--sizes", "4096", "--sigmas", "16",
                 "--no-anchor", "--csv", str(out)]) == 0
    r = rows(out.read_text())
    assert [x["algo"] for x in r] == ["phased", "ml"]
    # the bound is negative here, so it holds vacuously
    assert all(float(x["bound"]) < 0 and x["ok"] == "1" for x in r)


def test_bench_upper(capsys):
    assert main(["bench", "--suite", "upper", "--sizes", "2^8..2^10", "--sigmas", "3,16"]) == 0
    r = rows(capsys.readouterr().out)
    assert len(r) == 12 and {x["algo"] for x in r} == {"phased-squares", "phased-runs"}


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bench", "--suite", "nope"]) == 2
    capsys.readouterr()


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "squarerun.cli", "gen", "tm3", "--n", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "2 1 0\n"
