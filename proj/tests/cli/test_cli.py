"""End-to-end tests of the robustis command-line tool."""

import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

ROOT = Path(os.environ.get("ROBUSTIS_ROOT", Path(__file__).resolve().parents[2]))
CLI = os.environ.get("ROBUSTIS_CLI", str(ROOT / "build" / "tools" / "robustis"))
SCHEMA = json.loads((ROOT / "docs" / "schema.json").read_text())


def run(*args, stdin=None):
    return subprocess.run([CLI, *map(str, args)], input=stdin, capture_output=True, text=True, timeout=600)


def validate(doc, name):
    sub = {"$ref": f"#/$defs/{name}", "$defs": SCHEMA["$defs"]}
    jsonschema.Draft202012Validator(sub).validate(doc)


def ok_json(*args):
    r = run(*args)
    assert r.returncode == 0, r.stderr
    return json.loads(r.stdout)


# --- sum-game --------------------------------------------------------------


def test_sum_game_example_passes():
    doc = ok_json("sum-game", "--strategy", "ones", "--eps", 0.2, "--delta", 0.1, "--trials", 400, "--seed", 7,
                  "--horizon", 200)
    validate(doc, "sum_game_report")
    assert doc["win_rate"] >= 0.875
    assert doc["acceptance"]["pass"] is True
    assert doc["config"]["strategy"] == "ones"


@pytest.mark.parametrize("strategy", ["ones", "geometric", "p-one", "max-greedy", "ratio-greedy", "error-chaser"])
def test_every_strategy_runs(strategy):
    doc = ok_json("sum-game", "--strategy", strategy, "--trials", 3, "--horizon", 50)
    validate(doc, "sum_game_report")


def test_trials_zero_is_rejected():
    r = run("sum-game", "--trials", 0)
    assert r.returncode == 2
    assert "trials" in r.stderr


@pytest.mark.parametrize("args", [
    ["sum-game", "--strategy", "nope"],
    ["sum-game", "--eps", 1.5],
    ["sum-game", "--delta", 0],
    ["sum-game", "--format", "xml"],
    ["hypergraph", "--n", 1],
    ["hypergraph", "--min-size", 5, "--max-size", 3],
    ["subspace", "--d", 0],
    ["subspace", "--eps", 0],
    ["frobnicate"],
])
def test_invalid_configs_exit_2(args):
    assert run(*args).returncode == 2


def test_unreachable_threshold_exits_1():
    r = run("sum-game", "--trials", 5, "--horizon", 20, "--min-win-rate", 1.5)
    assert r.returncode == 1
    assert "acceptance failed" in r.stderr
    assert json.loads(r.stdout)["acceptance"]["pass"] is False


def test_csv_transcript_columns():
    r = run("sum-game", "--strategy", "geometric", "--trials", 2, "--horizon", 4, "--format", "csv")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == SCHEMA["$defs"]["csv_headers"]["const"]["sum-game"]
    assert len(lines) == 1 + 2 * 4
    first = lines[1].split(",")
    assert first[:6] == ["0", "1", "1", "1", "1", "1"]


def test_transcripts_side_file(tmp_path):
    path = tmp_path / "t.csv"
    doc = ok_json("sum-game", "--trials", 2, "--horizon", 5, "--transcripts", path)
    assert doc["n_trials"] == 2
    assert len(path.read_text().splitlines()) == 11


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"strategy": "geometric", "trials": 4, "horizon": 30, "seed": 9}))
    from_file = ok_json("sum-game", "--config", cfg)
    assert from_file["config"]["strategy"] == "geometric"
    assert from_file["n_trials"] == 4
    assert from_file["config"]["seed"] == 9
    overridden = ok_json("sum-game", "--config", cfg, "--trials", 2, "--strategy", "ones")
    assert overridden["n_trials"] == 2
    assert overridden["config"]["strategy"] == "ones"
    assert overridden["config"]["horizon"] == 30


def test_nested_config_rejected(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"strategy": {"name": "ones"}}))
    assert run("sum-game", "--config", cfg).returncode == 2


def test_out_file_matches_stdout(tmp_path):
    out = tmp_path / "r.json"
    args = ["sum-game", "--trials", 3, "--horizon", 40, "--seed", 5]
    assert run(*args, "--out", out).returncode == 0
    assert out.read_text() == run(*args).stdout


# --- determinism -----------------------------------------------------------


@pytest.mark.parametrize("args", [
    ["sum-game", "--strategy", "ratio-greedy", "--trials", 12, "--horizon", 300, "--seed", 3],
    ["sum-game", "--strategy", "error-chaser", "--trials", 12, "--horizon", 300, "--seed", 3, "--format", "csv"],
    ["hypergraph", "--n", 6, "--m", 40, "--trials", 6, "--k1", 0.05, "--verify", "all-cuts", "--audit", "--seed", 4],
    ["hypergraph", "--n", 6, "--m", 40, "--trials", 6, "--adversary", "reinsert", "--k1", 0.05, "--format", "csv"],
    ["subspace", "--d", 3, "--n", 60, "--trials", 6, "--k1", 0.05, "--verify", "--audit", "--seed", 4],
    ["subspace", "--d", 3, "--n", 60, "--trials", 6, "--adversary", "resubmit", "--k1", 0.05, "--format", "csv"],
])
def test_output_independent_of_jobs(args):
    outs = [run(*args, "--jobs", j) for j in (1, 3)]
    assert outs[0].returncode in (0, 1)
    assert outs[0].returncode == outs[1].returncode
    assert outs[0].stdout == outs[1].stdout
    assert run(*args, "--jobs", 2).stdout == outs[0].stdout


def test_seed_changes_output():
    a = run("sum-game", "--trials", 2, "--horizon", 200, "--amp", 4, "--seed", 1, "--format", "csv").stdout
    b = run("sum-game", "--trials", 2, "--horizon", 200, "--amp", 4, "--seed", 2, "--format", "csv").stdout
    assert a != b


# --- hypergraph --------------------------------------------------------------


def test_k33_stream_all_cuts():
    doc = ok_json("hypergraph", "--n", 6, "--stream", ROOT / "data" / "k3x3.txt", "--eps", 0.3,
                  "--verify", "all-cuts", "--audit")
    validate(doc, "hypergraph_report")
    ver = doc["trials"][0]["verification"]
    assert ver["partitions_checked"] == 202  # Bell(6) - 1
    assert ver["worst_ratio_low"] <= 1.0 <= ver["worst_ratio_high"]
    assert doc["summary"]["pass"] is True
    assert "stream" not in doc["trials"][0]
    assert len(doc["config"]["stream"]) == 9


def test_stream_from_stdin():
    text = "# triangle\n0 1\n1 2\n\n0 2\n"
    r = run("hypergraph", "--n", 3, "--stream", "-", "--verify", "two-cuts", stdin=text)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["trials"][0]["verification"]["partitions_checked"] == 3


def test_bad_stream_reports_line():
    r = run("hypergraph", "--n", 3, "--stream", "-", stdin="0 1\n0 x\n")
    assert r.returncode == 2
    assert "2" in r.stderr


def test_vertex_out_of_range():
    assert run("hypergraph", "--n", 3, "--stream", "-", stdin="0 5\n").returncode == 2


def test_two_cut_count_n8():
    doc = ok_json("hypergraph", "--n", 8, "--m", 30, "--verify", "two-cuts")
    assert doc["trials"][0]["verification"]["partitions_checked"] == 127


def test_tiny_k1_exposes_violations():
    r = run("hypergraph", "--n", 6, "--m", 60, "--trials", 20, "--k1", 0.005, "--verify", "all-cuts")
    doc = json.loads(r.stdout)
    validate(doc, "hypergraph_report")
    frac = doc["summary"]["violation_fraction"]
    assert frac > 0.05
    assert r.returncode == 1
    assert "acceptance failed" in r.stderr


def test_hypergraph_csv():
    r = run("hypergraph", "--n", 4, "--m", 5, "--trials", 2, "--format", "csv")
    lines = r.stdout.splitlines()
    assert lines[0] == SCHEMA["$defs"]["csv_headers"]["const"]["hypergraph"]
    assert len(lines) == 11


def test_verify_and_audit_hypergraph(tmp_path):
    rep = tmp_path / "h.json"
    assert run("hypergraph", "--n", 5, "--m", 25, "--trials", 2, "--k1", 0.05, "--out", rep).returncode in (0, 1)
    v = run("verify", "hypergraph", "--sparsifier", rep, "--trial", 1, "--cuts", "all-cuts")
    assert v.returncode in (0, 1)
    doc = json.loads(v.stdout)
    validate(doc, "hypergraph_verify_report")
    assert doc["partitions_checked"] == 51
    a = json.loads(run("audit", "hypergraph", "--sparsifier", rep).stdout)
    validate(a, "size_audit")
    assert a["pass"] is True

    # A bare sparsifier document needs the stream supplied separately.
    full = json.loads(rep.read_text())
    bare = tmp_path / "s.json"
    bare.write_text(json.dumps(full["trials"][0]["sparsifier"]))
    stream = tmp_path / "e.txt"
    stream.write_text("\n".join(" ".join(map(str, e)) for e in full["trials"][0]["stream"]) + "\n")
    v2 = run("verify", "hypergraph", "--sparsifier", bare, "--stream", stream)
    v1 = run("verify", "hypergraph", "--sparsifier", rep)
    assert json.loads(v2.stdout) == json.loads(v1.stdout)
    assert run("verify", "hypergraph", "--sparsifier", bare).returncode == 2


# --- subspace ----------------------------------------------------------------


def test_subspace_default_run():
    doc = ok_json("subspace", "--d", 4, "--n", 80, "--trials", 3, "--verify", "--audit")
    validate(doc, "subspace_report")
    for t in doc["trials"]:
        assert t["verification"]["mode"] == "pencil"
        assert len(t["embedding"]["steps"]) == 80
        assert t["audits"]["pass"] is True


def test_subspace_rows_file(tmp_path):
    rows = tmp_path / "rows.txt"
    rows.write_text("1 0 0\n0 1 0\n1 0 0\n1 0 0\n0 0 2\n")
    doc = ok_json("subspace", "--rows", rows, "--verify")
    t = doc["trials"][0]
    assert t["verification"]["pass"] is True
    assert [k["index"] for k in t["embedding"]["kept"]][:2] == [0, 1]
    assert t["embedding"]["steps"][2]["s_prime"] == 1.0
    assert t["embedding"]["steps"][3]["s_prime"] == 0.5


def test_subspace_ragged_rows_rejected():
    assert run("subspace", "--rows", "-", stdin="1 2\n3\n").returncode == 2


def test_subspace_entry_bound_enforced():
    assert run("subspace", "--rows", "-", "--entry-bound", 5, stdin="1 9\n").returncode == 2


def test_subspace_net_mode():
    doc = ok_json("subspace", "--d", 2, "--n", 30, "--verify", "--net", "--resolution", 0.25)
    assert doc["trials"][0]["verification"]["mode"] == "net"


def test_subspace_net_size_limit():
    r = run("subspace", "--d", 5, "--n", 10, "--verify", "--net", "--resolution", 0.01, "--max-net-points", 100000)
    assert r.returncode == 2


def test_subspace_general_p():
    doc = ok_json("subspace", "--d", 2, "--n", 20, "--p", 1, "--audit")
    assert doc["config"]["p"] == 1.0


def test_subspace_tiny_k1_fails_acceptance():
    r = run("subspace", "--d", 4, "--n", 150, "--trials", 10, "--k1", 0.002, "--verify")
    doc = json.loads(r.stdout)
    assert doc["summary"]["pass_rate"] < 0.9
    assert r.returncode == 1


def test_subspace_csv():
    r = run("subspace", "--d", 2, "--n", 4, "--trials", 2, "--format", "csv")
    lines = r.stdout.splitlines()
    assert lines[0] == SCHEMA["$defs"]["csv_headers"]["const"]["subspace"]
    assert len(lines) == 9


def test_verify_and_audit_subspace(tmp_path):
    rep = tmp_path / "s.json"
    assert run("subspace", "--d", 3, "--n", 50, "--trials", 2, "--out", rep).returncode == 0
    v = json.loads(run("verify", "subspace", "--embedding", rep, "--trial", 1).stdout)
    validate(v, "embedding_report")
    assert v["pass"] is True
    a = json.loads(run("audit", "subspace", "--embedding", rep).stdout)
    validate(a, "sensitivity_audit")
    assert a["kept"] == 50

    full = json.loads(rep.read_text())
    emb = tmp_path / "e.json"
    emb.write_text(json.dumps(full["trials"][0]["embedding"]))
    rows = tmp_path / "rows.txt"
    rows.write_text("\n".join(" ".join(map(str, r)) for r in full["trials"][0]["rows"]) + "\n")
    assert json.loads(run("audit", "subspace", "--embedding", emb, "--rows", rows).stdout) == a
    rows.write_text("1 2 3\n")
    assert run("audit", "subspace", "--embedding", emb, "--rows", rows).returncode == 2


def test_help_exits_zero():
    r = run("--help")
    assert r.returncode == 0
    assert "sum-game" in r.stdout


def test_verify_uses_stream_from_config(tmp_path):
    rep = tmp_path / "k.json"
    assert run("hypergraph", "--n", 6, "--stream", ROOT / "data" / "k3x3.txt", "--out", rep).returncode == 0
    doc = json.loads(run("verify", "hypergraph", "--sparsifier", rep).stdout)
    assert doc["partitions_checked"] == 202
    assert doc["pass"] is True
