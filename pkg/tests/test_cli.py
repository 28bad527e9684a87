import csv
import json
import subprocess
import sys

import pytest

from budgetcut import bundled_instance, bundled_names
from budgetcut.cli import BENCH_FIELDS, main

from _util import F4_TEXT


@pytest.fixture
def f4_file(tmp_path):
    p = tmp_path / "f4.txt"
    p.write_text(F4_TEXT)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("sense, method, budget, want", [
    ("min", "bnb", ["--budget", "5"], 3),
    ("max", "bnb", ["--budget", "5"], 9),
    ("min", "lagrangian", ["--budget-p", "0.5"], 3),
    ("min", "oracle", ["--budget", "5"], 3),
    ("max", "blocks", ["--budget", "5"], 9),
])
def test_solve_examples(capsys, f4_file, sense, method, budget, want):
    code, out, _ = run(capsys, "solve", "--sense", sense, *budget, "--method", method, f4_file)
    rec = json.loads(out)
    assert code == 0 and rec["value"] == want and rec["proven"] is True


def test_solve_exit_codes(capsys, f4_file):
    assert run(capsys, "solve", "--budget", "1", f4_file)[0] == 2
    code, out, _ = run(capsys, "solve", "--sense", "max", "--budget", "5", "--node-limit", "3", f4_file)
    assert code == 3 and json.loads(out)["status"] == "limit"
    assert run(capsys, "solve", "--sense", "max", "--budget", "5", "--method", "lagrangian",
               f4_file)[0] == 64
    assert run(capsys, "solve", "--budget", "5", str(f4_file) + ".missing")[0] == 64
    assert run(capsys, "solve", "--budget", "-1", f4_file)[0] == 64
    assert run(capsys, "solve", "--budget-p", "half", f4_file)[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["solve", f4_file])  # no budget
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--budget", "1", "--budget-p", "1", f4_file])
    assert exc.value.code == 64


def test_solve_heuristic_exit_zero(capsys, tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("3 3\n1 2 1 10\n1 3 2 1\n2 3 3 1\n")
    code, out, _ = run(capsys, "solve", "--budget", "3", "--method", "lagrangian", str(p))
    assert code == 0 and json.loads(out)["status"] == "heuristic"


def test_oracle_size_cap(capsys, tmp_path):
    assert run(capsys, "generate", "-n", "21", "-m", "25", "--outdir", str(tmp_path))[0] == 0
    path = tmp_path / "rnd_21_25_1.txt"
    assert run(capsys, "solve", "--budget", "5", "--method", "oracle", str(path))[0] == 64


def test_solve_is_deterministic(capsys, f4_file):
    args = ("solve", "--sense", "max", "--budget", "6", "--no-timing", f4_file)
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_time_limit_from_environment(capsys, monkeypatch, f4_file):
    monkeypatch.setenv("BUDGETCUT_TIME_LIMIT", "0")
    assert run(capsys, "solve", "--sense", "max", "--budget", "5", f4_file)[0] == 3


def test_generate(capsys, tmp_path):
    out = tmp_path / "a"
    assert run(capsys, "generate", "-n", "20", "-m", "30", "--count", "30", "--seed", "7",
               "--outdir", str(out))[0] == 0
    files = sorted(out.iterdir())
    assert len(files) == 30 and (out / "rnd_20_30_30.txt").exists()
    again = tmp_path / "b"
    run(capsys, "generate", "-n", "20", "-m", "30", "--count", "30", "--seed", "7",
        "--outdir", str(again))
    assert all(f.read_text() == (again / f.name).read_text() for f in files)
    # the bundled class was made by this very command
    assert (out / "rnd_20_30_1.txt").read_text().splitlines()[1:] == \
        _bundled_lines("rnd_20_30_1")
    assert run(capsys, "generate", "-n", "5", "-m", "6", "--count", "0",
               "--outdir", str(tmp_path / "c"))[0] == 0
    assert list((tmp_path / "c").iterdir()) == []
    assert run(capsys, "generate", "-n", "4", "-m", "9", "--outdir", str(tmp_path))[0] == 64


def _bundled_lines(name):
    from budgetcut.instances import serialize_instance
    return serialize_instance(bundled_instance(name)).splitlines()[1:]


def test_reduce(capsys, tmp_path):
    items = tmp_path / "items.txt"
    items.write_text("6 2\n10 4\n12 6\n")
    out = tmp_path / "red.txt"
    code, stdout, _ = run(capsys, "reduce", str(items), "8", "-o", str(out))
    assert code == 0
    note = json.loads(stdout)
    assert (note["budget"], note["expected"]) == (14, 10)
    text = out.read_text()
    assert "# budget 14" in text and "terminals 1 2" in text
    code, stdout, _ = run(capsys, "solve", "--budget", "14", str(out))
    assert json.loads(stdout)["value"] == 10


def test_reduce_edge_cases(capsys, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    assert run(capsys, "reduce", str(empty), "3")[0] == 64
    zero = tmp_path / "zero.txt"
    zero.write_text("0 3\n")
    for cap in ("0", "5"):
        code, out, _ = run(capsys, "reduce", str(zero), cap)
        assert code == 0 and "# expected_st_optimum 0" in out


def test_bench_empty_dir(capsys, tmp_path):
    (tmp_path / "none").mkdir()
    out = tmp_path / "b.csv"
    assert run(capsys, "bench", str(tmp_path / "none"), "-o", str(out))[0] == 0
    assert out.read_text().strip() == ",".join(BENCH_FIELDS)


def _instances(capsys, tmp_path, count=3):
    d = tmp_path / "inst"
    run(capsys, "generate", "-n", "6", "-m", "9", "--count", str(count), "--seed", "1",
        "--outdir", str(d))
    return d


def test_bench_rows_resume_and_workers(capsys, tmp_path):
    d = _instances(capsys, tmp_path)
    out = tmp_path / "b.csv"
    args = ["bench", str(d), "--sense", "min", "--methods", "bnb,lagrangian,oracle", "-o", str(out)]
    assert run(capsys, *args)[0] == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 3 * 3 * 3
    assert [r["instance"] for r in rows] == sorted(r["instance"] for r in rows)
    run(capsys, *args)  # resume: nothing new
    assert len(list(csv.DictReader(out.open()))) == 27
    par = tmp_path / "p.csv"
    run(capsys, *args[:-1], str(par), "--workers", "2")
    key = lambda r: {k: v for k, v in r.items() if k != "millis"}
    assert [key(r) for r in csv.DictReader(par.open())] == [key(r) for r in rows]
    by = {}
    for r in rows:
        by.setdefault((r["instance"], r["p"]), {})[r["method"]] = r["value"]
    assert all(v["bnb"] == v["oracle"] for v in by.values())


def test_bench_error_and_limit_rows(capsys, tmp_path):
    d = _instances(capsys, tmp_path, 1)
    out = tmp_path / "b.csv"
    code, _, err = run(capsys, "bench", str(d), "--sense", "max", "--p", "2",
                       "--methods", "bnb,lagrangian", "--node-limit", "2", "-o", str(out))
    rows = list(csv.DictReader(out.open()))
    assert code == 0 and len(rows) == 2
    assert rows[0]["proven"] == "false"
    assert rows[1]["proven"] == "error" and rows[1]["value"] == "" and "lagrangian" in err


def test_oracle_and_bnb_agree_on_bundled():
    from budgetcut.bnb import constrained_cut
    from budgetcut.instances import compute_budget
    from budgetcut.oracle import brute_force_cut
    for name in bundled_names()[:6]:
        g = bundled_instance(name).graph
        T = compute_budget(g, "3/4").T
        a = constrained_cut(g, T, "min").optimal
        b = brute_force_cut(g, T, "min")
        assert (a and a.weight) == (b and b.weight)


def test_module_entry_point(tmp_path):
    p = tmp_path / "f4.txt"
    p.write_text(F4_TEXT)
    proc = subprocess.run([sys.executable, "-m", "budgetcut", "solve", "--budget", "5", str(p)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 3
    proc = subprocess.run([sys.executable, "-m", "budgetcut", "frobnicate"],
                          capture_output=True, text=True)
    assert proc.returncode == 64
