import csv
import io
import json
from itertools import combinations

import pytest

from dynqc import bench
from dynqc.cli import main
from dynqc.workload import gen_random, planted_graph, write_stream

from conftest import complete_edges


def write_edges(path, edges):
    path.write_text("# test graph\n" + "".join(f"{u} {v}\n" for u, v in edges))
    return path


@pytest.fixture
def fixture30(tmp_path):
    g = planted_graph(30, [8, 6], p_in=0.95, p_out=0.05, seed=4)
    # shift ids so the id mapping is exercised
    ds = write_edges(tmp_path / "g.txt", [(u + 100, v + 100) for u, v in g.edges()])
    s = gen_random(g, 100, seed=2)
    s.ops = [type(op)(op.kind, op.u + 100, op.v + 100) for op in s.ops]
    ops = tmp_path / "ops.txt"
    write_stream(s, ops)
    return ds, ops


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_run_writes_reports(tmp_path, capsys, fixture30):
    ds, ops = fixture30
    code, out, _ = run_cli(capsys, "run", "--dataset", ds, "--stream", ops, "--backend", "exact",
                           "--out", tmp_path / "r", "--check-invariants")
    assert code == 0
    summary = json.loads(out)
    assert summary["n_ops"] == 100 and summary["mean_density"] >= 0.8
    rows = list(csv.DictReader(open(tmp_path / "r.ops.csv")))
    assert len(rows) == 100 and list(rows[0]) == list(bench.CSV_COLUMNS)
    assert json.load(open(tmp_path / "r.summary.json"))["n_ops"] == 100


def test_run_empty_stream(capsys, fixture30):
    ds, _ = fixture30
    code, out, _ = run_cli(capsys, "run", "--dataset", ds)
    summary = json.loads(out)
    assert code == 0 and summary["n_ops"] == 0 and summary["init_time_s"] >= 0


@pytest.mark.parametrize("engine", ["dmi", "nsf", "static"])
def test_run_is_deterministic(tmp_path, capsys, fixture30, engine):
    ds, ops = fixture30
    cols = []
    for i in range(2):
        run_cli(capsys, "run", "--dataset", ds, "--stream", ops, "--engine", engine,
                "--seed", "17", "--out", tmp_path / f"r{i}")
        rows = list(csv.DictReader(open(tmp_path / f"r{i}.ops.csv")))
        cols.append([(r["op_index"], r["best_size"], r["best_density"], r["rebuilt"]) for r in rows])
    assert cols[0] == cols[1]


def test_seed_from_environment(tmp_path, capsys, fixture30, monkeypatch):
    ds, ops = fixture30
    monkeypatch.setenv("DYNQC_SEED", "0x99")
    code, out, _ = run_cli(capsys, "run", "--dataset", ds)
    assert code == 0 and json.loads(out)["params"]["seed"] == 0x99
    monkeypatch.setenv("DYNQC_SEED", "nope")
    assert run_cli(capsys, "run", "--dataset", ds)[0] == 2


def test_bad_params_name_constraint(capsys, fixture30):
    ds, ops = fixture30
    code, _, err = run_cli(capsys, "run", "--dataset", ds, "--alpha", "0.95")
    assert code == 2 and "1 - (1 - gamma)/b" in err


def test_replay_collision_reports_line(tmp_path, capsys, fixture30):
    ds, _ = fixture30
    u, v = next(iter(open(ds).read().split("\n")[1:2])).split()
    ops = tmp_path / "bad.txt"
    ops.write_text(f"%q 1 %seed 0 %flavor rand\n# dup\n+ {u} {v}\n")
    code, _, err = run_cli(capsys, "run", "--dataset", ds, "--stream", ops)
    assert code == 2 and "line 3" in err


def test_missing_file_is_input_error(tmp_path, capsys):
    assert run_cli(capsys, "run", "--dataset", tmp_path / "none.txt")[0] == 2


def test_invariant_violation_exit_code(capsys, fixture30, monkeypatch):
    ds, ops = fixture30
    monkeypatch.setattr(bench, "list_violations", lambda *a, **k: ["forced"])
    code, _, err = run_cli(capsys, "run", "--dataset", ds, "--stream", ops, "--check-invariants")
    assert code == 3 and "forced" in err


def test_sweep_single_point_equals_run(tmp_path, capsys, fixture30):
    ds, ops = fixture30
    run_cli(capsys, "run", "--dataset", ds, "--stream", ops, "--out", tmp_path / "r")
    code, out, _ = run_cli(capsys, "sweep", "--dataset", ds, "--stream", ops, "--grid", "B=5",
                           "--out", tmp_path / "s")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    ref = json.load(open(tmp_path / "r.summary.json"))
    assert float(row["mean_size"]) == ref["mean_size"]
    assert float(row["mean_density"]) == ref["mean_density"]
    assert (tmp_path / "s.sweep.csv").exists() and (tmp_path / "s.0.ops.csv").exists()


def test_sweep_B_direction(tmp_path, capsys):
    # two equal 8-cliques; the stream erodes the first one only
    edges = complete_edges(range(8)) + complete_edges(range(8, 16))
    ds = write_edges(tmp_path / "g.txt", edges)
    ops = tmp_path / "ops.txt"
    ops.write_text("".join(f"- {u} {v}\n" for u, v in combinations(range(8), 2) if (u + v) % 3 == 0))
    code, out, _ = run_cli(capsys, "sweep", "--dataset", ds, "--stream", ops, "--backend", "exact",
                           "--grid", "B=1,9")
    rows = {r["B"]: float(r["mean_size"]) for r in csv.DictReader(io.StringIO(out))}
    assert code == 0 and rows["9"] == 8.0
    assert rows["9"] >= rows["1"]
    assert rows["1"] < 8.0


def test_sweep_gamma_direction(tmp_path, capsys):
    g = planted_graph(40, [10, 8], p_in=0.95, p_out=0.03, seed=6)
    ds = write_edges(tmp_path / "g.txt", sorted(g.edges()))
    ops = tmp_path / "ops.txt"
    write_stream(gen_random(g, 60, seed=1), ops)
    code, out, _ = run_cli(capsys, "sweep", "--dataset", ds, "--stream", ops, "--backend", "exact",
                           "--alpha", "0.15", "--grid", "gamma=0.5,0.9")
    rows = {float(r["gamma"]): r for r in csv.DictReader(io.StringIO(out))}
    assert code == 0 and all(r["mean_size"] for r in rows.values())
    assert float(rows[0.5]["mean_size"]) >= float(rows[0.9]["mean_size"])


def test_sweep_bad_grid(capsys, fixture30):
    ds, ops = fixture30
    assert run_cli(capsys, "sweep", "--dataset", ds, "--grid", "B")[0] == 2
    assert run_cli(capsys, "sweep", "--dataset", ds, "--grid", "seed=1")[0] == 2
    assert run_cli(capsys, "sweep", "--dataset", ds, "--grid", "k=x")[0] == 2


def test_gen_rand_keeps_dataset_ids(tmp_path, capsys, fixture30):
    ds, _ = fixture30
    out = tmp_path / "gen.txt"
    code, _, err = run_cli(capsys, "gen", "--dataset", ds, "--flavor", "rand", "--q", 50, "--seed", 3,
                           "--out", out)
    assert code == 0 and "50 operations" in err
    ids = {int(x) for line in out.read_text().splitlines()[1:] for x in line.split()[1:]}
    assert min(ids) >= 100
    code, _, _ = run_cli(capsys, "run", "--dataset", ds, "--stream", out)
    assert code == 0


def test_gen_temporal(tmp_path, capsys):
    src = tmp_path / "t.tsv"
    src.write_text("1 2 1 0\n2 3 1 5\n1 2 1 8\n")
    out = tmp_path / "temp.txt"
    code, _, err = run_cli(capsys, "gen", "--dataset", src, "--flavor", "tinc", "--q", 10, "--out", out)
    assert code == 0
    assert (tmp_path / "temp.txt.initial.edges").read_text().splitlines()[1:] == ["1 2"]
    assert out.read_text().splitlines()[1:] == ["+ 2 3"]


def test_oracle_command(tmp_path, capsys):
    ds = write_edges(tmp_path / "g.txt", [(u + 1, v + 1) for u, v in complete_edges(range(5))] + [(6, 7)])
    code, out, _ = run_cli(capsys, "oracle", "--dataset", ds, "--alpha", "1.0")
    res = json.loads(out)
    assert code == 0 and res["size"] == 5 and res["vertices"] == [1, 2, 3, 4, 5]
    big = write_edges(tmp_path / "big.txt", [(i, i + 1) for i in range(30)])
    assert run_cli(capsys, "oracle", "--dataset", big, "--alpha", "0.5")[0] == 2


def test_module_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "dynqc", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "run" in out.stdout
