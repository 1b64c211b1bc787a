import json
from pathlib import Path

import pytest

from atamkit.cli import DEFAULT_RNG_SEED, main
from atamkit.core import explore, is_valid_sequence
from atamkit.serialize import (
    configuration_from_json,
    dump,
    representation_to_json,
    sequence_from_json,
    sequence_to_json,
    system_to_json,
    window_to_json,
)
from atamkit.systems import branch_system, keystone_system, scaled_line_fixture
from atamkit.windows import line_pump_fixture

GOLDEN = Path(__file__).resolve().parents[1] / "fixtures" / "paper_encoding.txt"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode_golden(capsys):
    code, out, _ = run(capsys, "encode", "--fixtures", "example")
    assert code == 0
    assert out.strip() == " ".join(GOLDEN.read_text().split())


def test_encode_binary_from_system_file(tmp_path, capsys):
    path = tmp_path / "keystone.json"
    dump(system_to_json(keystone_system()), path)
    code, out, _ = run(capsys, "encode", "--tiles", str(path), "--mode", "binary")
    assert code == 0 and out.startswith("B") and " " not in out.strip()


def test_explore_is_byte_identical(tmp_path, capsys):
    path = tmp_path / "keystone.json"
    dump(system_to_json(keystone_system()), path)
    first = run(capsys, "explore", "--system", str(path), "--max-tiles", "20")[1]
    second = run(capsys, "explore", "--system", str(path), "--max-tiles", "20")[1]
    assert first == second


def test_explore_output_reloads(capsys):
    code, out, _ = run(capsys, "explore", "--system", "branch", "--max-tiles", "5")
    doc = json.loads(out)
    loaded = [configuration_from_json(a) for a in doc["assemblies"]]
    assert loaded == explore(branch_system(), 5).assemblies


def test_splice_fixture_is_valid(capsys):
    code, out, _ = run(capsys, "splice", "--fixture", "line-pump-down")
    assert code == 0
    seq = sequence_from_json(json.loads(out)["sequence"])
    assert is_valid_sequence(seq) and len(seq.result()) == 4


def test_splice_from_files(tmp_path, capsys):
    seq_a, wa, seq_b, wb, offset = line_pump_fixture()
    paths = {}
    for name, doc in [("a", sequence_to_json(seq_a)), ("wa", window_to_json(wa)),
                      ("b", sequence_to_json(seq_b)), ("wb", window_to_json(wb))]:
        paths[name] = tmp_path / f"{name}.json"
        dump(doc, paths[name])
    code, out, _ = run(capsys, "splice", "--a", str(paths["a"]), "--wa", str(paths["wa"]),
                       "--b", str(paths["b"]), "--wb", str(paths["wb"]),
                       "--offset=" + ",".join(map(str, offset)))
    assert code == 0
    assert is_valid_sequence(sequence_from_json(json.loads(out)["sequence"]))


def test_check_sim_from_files(tmp_path, capsys):
    simulated, simulator, rep = scaled_line_fixture()
    files = {"simulated": system_to_json(simulated), "simulator": system_to_json(simulator),
             "rep": representation_to_json(rep)}
    argv = ["check-sim", "--bound", "8", "--strict"]
    for flag, doc in files.items():
        dump(doc, tmp_path / f"{flag}.json")
        argv += [f"--{flag}", str(tmp_path / f"{flag}.json")]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_system_file_uses_pos_tile_records(tmp_path, capsys):
    doc = {"dimension": 2, "temperature": 1,
           "tiles": [{"name": "s", "glues": {"E": ["a", 1]}}, {"name": "r", "glues": {"W": ["a", 1]}}],
           "seed": [{"pos": [0, 0], "tile": "s"}]}
    (tmp_path / "t.json").write_text(json.dumps(doc))
    code, out, _ = run(capsys, "explore", "--system", str(tmp_path / "t.json"), "--max-tiles", "3")
    assert code == 0
    sizes = [len(a["placements"]) for a in json.loads(out)["assemblies"]]
    assert sizes == [1, 2]


def test_run_records_seed(capsys):
    code, out, _ = run(capsys, "run", "--system", "keystone", "--max-tiles", "15")
    assert code == 0 and json.loads(out)["rng_seed"] == DEFAULT_RNG_SEED


def test_check_sim_fixture_and_strict_exit(capsys):
    code, out, _ = run(capsys, "check-sim", "--fixture", "identity:line", "--bound", "6")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run(capsys, "check-sim", "--fixture", "diagonal-fuzz", "--bound", "6", "--strict")
    assert code == 1 and json.loads(out)["clause"].startswith("clean mapping")


def test_gadget_and_layout(capsys, tmp_path):
    emit = tmp_path / "g.json"
    code, out, _ = run(capsys, "gadget", "--bits", "010", "--emit", str(emit))
    assert code == 0 and json.loads(out)["readback"] == ["READ_010"]
    assert json.loads(emit.read_text())["dimension"] == 3
    code, out, _ = run(capsys, "layout", "--tiles", "5")
    assert code == 0 and "side length 957" in out


def test_render_writes_svg(tmp_path, capsys):
    target = tmp_path / "a.svg"
    code, _, _ = run(capsys, "render", "--system", "keystone", "--max-tiles", "20", "--out", str(target))
    assert code == 0 and target.read_text().startswith("<svg")


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "explore")[0] == 2
    assert run(capsys, "layout", "--tiles", "0")[0] == 2
    assert run(capsys, "gadget", "--bits", "abc")[0] == 2


def test_domain_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "explore", "--system", str(bad))
    assert code == 1 and "bad.json" in err


def test_budget_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv("ATAM_BUDGET", "3")
    code, out, _ = run(capsys, "explore", "--system", "keystone", "--max-tiles", "20")
    doc = json.loads(out)
    assert code == 0 and doc["truncated"] and len(doc["assemblies"]) == 3
    code, out, _ = run(capsys, "explore", "--system", "keystone", "--max-tiles", "20", "--budget", "5")
    assert len(json.loads(out)["assemblies"]) == 5
    monkeypatch.setenv("ATAM_BUDGET", "lots")
    assert run(capsys, "explore", "--system", "keystone")[0] == 2
