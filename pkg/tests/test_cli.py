import io
import json
import os

import pytest

from frechet_xlate.cli import EXIT_USAGE, main
from frechet_xlate.curves import Curve, serialize_curve


@pytest.fixture
def files(tmp_path, example_a):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text(serialize_curve(example_a[0]))
    b.write_text(serialize_curve(example_a[1]))
    return str(a), str(b)


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_decide(files):
    a, b = files
    assert run(["decide", "--pi", a, "--sigma", b, "--delta", "1.0"]) == (0, "YES\n")
    assert run(["decide", "--pi", a, "--sigma", b, "--delta", "0.9", "--selfcheck"]) == (0, "NO\n")


def test_frechet(files):
    code, text = run(["frechet", "--pi", files[0], "--sigma", files[1], "--tol", "1e-9"])
    assert code == 0 and abs(float(text) - 1.0) <= 1e-8


def test_sweep(files, tmp_path):
    a, b = files
    trace = tmp_path / "t.jsonl"
    code, text = run(["sweep", "--pi", a, "--sigma", b, "--dir", "0", "-1", "--delta", "0.5",
                      "--range", "0", "3", "--trace", str(trace), "--selfcheck"])
    assert code == 0
    word, lo, hi = text.split()
    assert word == "FEASIBLE" and abs(float(lo) - 0.5) <= 1e-9 and abs(float(hi) - 1.5) <= 1e-9
    assert len(trace.read_text().splitlines()) > 0
    code, text = run(["sweep", "--pi", a, "--sigma", b, "--dir", "0", "1", "--delta", "0.5", "--range", "0", "3",
                      "--backend", "blocked"])
    assert (code, text) == (0, "INFEASIBLE\n")


@pytest.mark.parametrize("extra", [["--delta", "-1"], ["--delta", "nan"], ["--delta", "x"], ["--delta", "1", "--bogus"]])
def test_usage_errors(files, extra, capsys):
    assert run(["decide", "--pi", files[0], "--sigma", files[1]] + extra)[0] != 0
    assert capsys.readouterr().err


def test_bad_files(tmp_path, files, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\nthree 4\n")
    assert run(["decide", "--pi", str(bad), "--sigma", files[1], "--delta", "1"])[0] == EXIT_USAGE
    assert run(["decide", "--pi", str(tmp_path / "missing"), "--sigma", files[1], "--delta", "1"])[0] == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_zero_direction_and_reversed_range(files):
    a, b = files
    assert run(["sweep", "--pi", a, "--sigma", b, "--dir", "0", "0", "--delta", "0.5"])[0] == EXIT_USAGE
    assert run(["sweep", "--pi", a, "--sigma", b, "--dir", "0", "1", "--delta", "0.5", "--range", "3", "0"])[0] == EXIT_USAGE


def test_xlate2d(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text(serialize_curve(Curve.from_points([(0, 0), (1, 0)])))
    b.write_text(serialize_curve(Curve.from_points([(0, 0), (3, 0)])))
    base = ["xlate2d", "--pi", str(a), "--sigma", str(b)]
    assert run(base + ["--delta", "0.9", "--mode", "oracle"]) == (0, "NO\n")
    code, text = run(base + ["--delta", "1.05", "--mode", "events", "--selfcheck"])
    assert code == 0 and text.startswith("YES ") and len(text.split()) == 3
    code, text = run(base + ["--delta", "1.05", "--mode", "oracle", "--json"])
    rep = json.loads(text)
    assert rep["decision"] == "YES" and len(rep["witness"]) == 2 and rep["candidates"] >= 1


def test_trace(files, tmp_path):
    out = tmp_path / "snap"
    code, text = run(["trace", "--pi", files[0], "--sigma", files[1], "--delta", "1.0", "--out", str(out),
                      "--dir", "0", "-1", "--range", "0", "3"])
    assert code == 0 and text.startswith("YES ")
    names = set(os.listdir(out))
    assert {"fsg.json", "grid.pbm", "events.jsonl", "curves.svg", "grid.svg", "sweep.svg"} <= names
    n_events = int(text.split()[1])
    assert len((out / "events.jsonl").read_text().splitlines()) == n_events
    json.loads((out / "fsg.json").read_text())
    assert (out / "grid.pbm").read_text().startswith("P1\n6 6\n")


def test_bench(tmp_path):
    code, text = run(["bench", "--seed", "1", "--n", "3", "--trials", "2", "--json"])
    assert code == 0 and json.loads(text)["trials"] == 2
    svg = tmp_path / "b.svg"
    code, text = run(["bench", "--seed", "1", "--n", "3", "--trials", "2", "--out", str(svg)])
    assert code == 0 and text.splitlines()[0].startswith("trial\t") and svg.exists()
    assert run(["bench", "--seed", "1", "--n", "1", "--trials", "2"])[0] == EXIT_USAGE


def test_module_entry_point(files):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "frechet_xlate", "decide", "--pi", files[0], "--sigma", files[1],
                           "--delta", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "YES\n"
