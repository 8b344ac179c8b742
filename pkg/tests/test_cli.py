import json

import pytest

from locale_lab import fixtures as fx
from locale_lab.cli import main
from locale_lab.io import frame_to_json, map_to_json
from locale_lab.maps import left_adjoint


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def c3_file(tmp_path):
    return write(tmp_path / "c3.json", {"name": "C3", "elements": ["0", "a", "1"], "order": {"mode": "covers", "pairs": [["0", "a"], ["a", "1"]]}})


def test_validate_topology_and_lattice(tmp_path, capsys, c3_file):
    sier = write(tmp_path / "s.json", {"name": "S", "points": ["x", "y"], "opens": [[], ["x"], ["x", "y"]]})
    assert run(capsys, "validate", sier)[0] == 0
    code, out = run(capsys, "validate", c3_file, "--json")
    assert code == 0 and json.loads(out)["elements"] == 3


def test_validate_rejects_non_distributive(tmp_path, capsys):
    n5 = {"elements": ["0", "a", "b", "c", "1"], "order": {"mode": "covers", "pairs": [["0", "a"], ["a", "b"], ["b", "1"], ["0", "c"], ["c", "1"]]}}
    assert run(capsys, "validate", write(tmp_path / "n5.json", n5))[0] == 2


def test_bad_input_is_exit_two(tmp_path, capsys):
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    (tmp_path / "junk.json").write_text("{nope")
    assert run(capsys, "validate", str(tmp_path / "junk.json"))[0] == 2
    assert run(capsys, "verify", "--theorem", "nope")[0] == 2
    assert run(capsys, "search", "--predicate", "open &&")[0] == 2


def test_sublocales_json(capsys, c3_file):
    code, out = run(capsys, "sublocales", c3_file, "--json")
    assert code == 0 and len(json.loads(out)["sublocales"]) == 4


def test_analyze_map(tmp_path, capsys, c3_file):
    m = write(tmp_path / "m.json", {"source": "c3.json", "target": "c3.json", "assignments": {"0": "0", "a": "1", "1": "1"}})
    code, out = run(capsys, "analyze-map", m, "--report", "full", "--json")
    data = json.loads(out)
    assert code == 0 and data["flags"]["meet_preserving"] and not data["flags"]["L1"]
    assert data["witnesses"]["L1"] == {"a": "a"}
    j = write(tmp_path / "j.json", map_to_json(fx.maps()["j_closed"]))
    code, out = run(capsys, "analyze-map", j, "--json")
    data = json.loads(out)
    assert code == 0 and data["flags"]["localic"] and not data["flags"]["open"]
    assert run(capsys, "analyze-map", m)[0] == 0


def test_analyze_map_with_wrong_declared_adjoint(tmp_path, capsys):
    f = fx.maps()["f_surj"]
    obj = map_to_json(f)
    obj["left_adjoint"] = {l: "1" for l in f.target.labels}
    assert run(capsys, "analyze-map", write(tmp_path / "f.json", obj))[0] == 1
    obj["left_adjoint"] = left_adjoint(f).assignments()
    assert run(capsys, "analyze-map", write(tmp_path / "g.json", obj))[0] == 0


def test_verify(capsys, tmp_path):
    code, out = run(capsys, "verify", "--theorem", "jt", "--max-ji", "2", "--json")
    assert code == 0 and json.loads(out)[0]["verdict"] == "pass"
    assert run(capsys, "verify", "--theorem", "type-I", "--max-ji", "1", "--jobs", "1")[0] == 0


def test_search(capsys):
    code, out = run(capsys, "search", "--predicate", "localic & !open", "--max-ji", "2", "--json")
    assert code == 1 and json.loads(out)["found"]
    code, out = run(capsys, "search", "--predicate", "open & !localic", "--max-ji", "2")
    assert code == 0 and "exhausted at spec bounds" in out


def test_catalog(tmp_path, capsys):
    assert run(capsys, "catalog", "--max-ji", "2", "--out", str(tmp_path / "cat"))[0] == 0
    index = json.loads((tmp_path / "cat" / "index.json").read_text())
    assert [e["name"] for e in index["frames"]] == ["C1", "C2", "B2", "C3"]
    files = sorted(p.name for p in (tmp_path / "cat").glob("0*.json"))
    assert len(files) == 4
    for name in files:
        assert run(capsys, "validate", str(tmp_path / "cat" / name))[0] == 0


def test_replay(tmp_path, capsys):
    bad = fx.C3().with_tables(join=((0, 1, 2), (1, 1, 1), (2, 2, 2)), name="C3~j")
    w = write(tmp_path / "w.json", {"theorem_id": "frame-tables", "kind": "frame", "frame": frame_to_json(bad, tables=True)})
    code, out = run(capsys, "replay", w, "--json")
    assert code == 1 and json.loads(out)["reproduced"]
    ok = write(tmp_path / "ok.json", {"theorem_id": "frame-tables", "kind": "frame", "frame": frame_to_json(fx.C3(), tables=True)})
    assert run(capsys, "replay", ok)[0] == 0
