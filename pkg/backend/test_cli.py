import asyncio
import json

import pytest

from backend.cli import main
from backend.codec import CSV_COLUMNS
from backend.store import load_records

PUBLISHED_12 = "0,6,1,7,2,8,11,5,4,10,3,9"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in ("SIGMA_NODE_BUDGET", "SIGMA_TIME_BUDGET", "SIGMA_WORKERS", "SIGMA_FORMAT", "SIGMA_OUTPUT_DIR"):
        monkeypatch.delenv(var, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_published_ordering(capsys):
    code, out, _ = run(capsys, "check", "k3n12:000121", PUBLISHED_12)
    assert code == 0
    assert json.loads(out)["verdict"] == "accept"


def test_check_reads_json_files(capsys, tmp_path):
    seq_file, order_file = tmp_path / "part.json", tmp_path / "order.json"
    seq_file.write_text('{"k": 3, "n": 12, "a": [0, 0, 0, 1, 2, 1]}')
    order_file.write_text('{"n": 12, "tau": [%s]}' % PUBLISHED_12)
    code, _, _ = run(capsys, "check", str(seq_file), str(order_file))
    assert code == 0


def test_solve_as_dot(capsys):
    code, out, _ = run(capsys, "--format", "dot", "solve", "k3n12:000121")
    assert code == 0
    assert out.startswith("digraph")
    _, out, _ = run(capsys, "--format", "dot", "solve", "k3n3:0")
    assert out.startswith("graph")


def test_check_rejected_ordering(capsys):
    code, out, _ = run(capsys, "check", "k3n3:0", "0,1,2")
    assert code == 1
    assert json.loads(out)["first_violation"] == [1, 2]


def test_standard_missing(capsys):
    code, out, _ = run(capsys, "standard", "k3n12:000121")
    assert code == 1
    assert out.strip() == "null"


def test_standard_all(capsys):
    code, out, _ = run(capsys, "standard", "k3n6:000", "--all")
    assert code == 0
    assert [o["tau"] for o in json.loads(out)] == [[0, 1, 2, 5, 4, 3], [3, 4, 5, 2, 1, 0]]


@pytest.mark.parametrize("argv,expected", [
    (["solve", "k3n12:000121"], 0),
    (["solve", "k3n3:0"], 1),
    (["solve", "--oracle", "k3n9:0000"], 1),
    (["solve", "--oracle", "k3n12:000121"], 2),
    (["solve", "k3n4:00"], 64),
    (["bogus"], 64),
    (["necessary", "k3n6:002"], 1),
    (["necessary", "k3n6:012"], 0),
    (["blowup", "detect", "k3n24:000120001121"], 1),
    (["blowup", "detect", "k3n12:000121"], 0),
    (["hamiltonian", "paths", "--n", "7"], 64),
    (["conjecture", "--odd-n", "9"], 0),
    (["label", "k3n6:000", "--edge", "1"], 64),
])
def test_exit_codes(capsys, argv, expected):
    code, _, err = run(capsys, *argv)
    assert code == expected
    if expected == 64:
        assert err.startswith("error:")


def test_solve_output_has_no_timing_by_default(capsys):
    _, out, _ = run(capsys, "solve", "k3n12:000121")
    data = json.loads(out)
    assert data["status"] == "sat"
    assert "seconds" not in data["stats"]
    _, out, _ = run(capsys, "solve", "--timing", "k3n12:000121")
    assert "seconds" in json.loads(out)["stats"]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "k3n6:000")
    assert code == 0
    assert len(json.loads(out)) == 2
    code, out, _ = run(capsys, "solve", "--all", "--oracle", "--cap", "1", "k3n6:000")
    assert len(json.loads(out)) == 1


def test_label_edge(capsys):
    code, out, _ = run(capsys, "label", "k3n24:000120001121", "--edge", "4,8")
    assert code == 0
    assert out.strip() == "2"


def test_label_part(capsys):
    _, out, _ = run(capsys, "label", "k3n6:000", "--part", "0")
    assert json.loads(out) == [[0, 1], [0, 2], [0, 3], [3, 4], [3, 5]]


def test_blowup_make_and_lift(capsys):
    code, out, _ = run(capsys, "blowup", "make", "--base", "k3n6:000", "--n", "12", "--free", "6=1")
    assert code == 0
    assert json.loads(out)["a"] == [0, 0, 0, 1, 2, 1]
    _, out, _ = run(
        capsys, "blowup", "lift", "--base", "k3n6:000", "--order", "0,1,2,5,4,3", "--target", "k3n12:000121"
    )
    assert ",".join(str(v) for v in json.loads(out)["tau"]) == PUBLISHED_12


def test_blowup_make_rejects_bad_free_values(capsys):
    code, _, _ = run(capsys, "blowup", "make", "--base", "k3n6:000", "--n", "12", "--free", "6")
    assert code == 64


def test_dual(capsys):
    _, out, _ = run(capsys, "dual", "k3n6:000")
    assert json.loads(out)["a"] == [0, 1, 2]
    _, out, _ = run(capsys, "dual", "k3n6:000", "--order", "0,1,2,5,4,3")
    assert json.loads(out)["tau"] == [0, 5, 4, 1, 2, 3]


def test_classify(capsys):
    _, out, _ = run(capsys, "classify", "k3n12:000121")
    assert json.loads(out)["tags"] == ["halt", "halt", "step", "step", "jump"]


def test_gen_canonical(capsys):
    code, out, _ = run(capsys, "gen", "--n", "6", "--canonical")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 9
    assert lines[0] == "k3n6:000" and lines[-1] == "k3n6:022"


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "sweep", "--n", "6")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert lines[0].startswith("k,n,sequence,standard")


def test_sweep_shard_and_db(capsys, tmp_path):
    db = str(tmp_path / "results.db")
    code, out, _ = run(capsys, "sweep", "--n", "6", "--shard", "0:4", "--db", db)
    assert code == 0
    assert [r["index"] for r in json.loads(out)] == [0, 1, 2, 3]
    stored = asyncio.run(load_records(3, 6, db))
    assert [r.index for r in stored] == [0, 1, 2, 3]


def test_out_is_resolved_against_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SIGMA_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "--out", "result.json", "solve", "k3n12:000121")
    assert code == 0
    assert out == ""
    assert json.loads((tmp_path / "result.json").read_text())["status"] == "sat"


def test_sweep_format_follows_out_suffix(capsys, tmp_path):
    out = tmp_path / "results.csv"
    code, _, _ = run(capsys, "--out", str(out), "sweep", "--n", "6")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 10


def test_format_flag_beats_out_suffix(capsys, tmp_path):
    out = tmp_path / "results.csv"
    run(capsys, "--format", "json", "--out", str(out), "sweep", "--n", "6")
    assert out.read_text().lstrip().startswith("[")


def test_hamiltonian_with_dot(capsys, tmp_path):
    dot = tmp_path / "cycles.dot"
    code, out, _ = run(capsys, "hamiltonian", "cycles", "--n", "7", "--dot", str(dot))
    assert code == 0
    assert len(json.loads(out)["parts"]) == 3
    assert dot.read_text().count(" -> ") == 21


def test_export_dot(capsys):
    _, out, _ = run(capsys, "export-dot", "k3n6:000", "--order", "0,1,2,5,4,3")
    assert out.startswith("digraph")


def test_invalid_environment_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("SIGMA_NODE_BUDGET", "0")
    code, _, err = run(capsys, "solve", "k3n6:000")
    assert code == 64
    assert "invalid configuration" in err


def test_flags_override_environment(capsys, monkeypatch):
    monkeypatch.setenv("SIGMA_FORMAT", "csv")
    _, out, _ = run(capsys, "--format", "json", "sweep", "--n", "6")
    assert out.lstrip().startswith("[")
