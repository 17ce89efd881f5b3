import json

import pytest

from jointkit.cli import main
from jointkit.generators import BadParams, axes, families_random, generate, grid, random_lines
from jointkit.incidence import find_joints
from jointkit.serialize import dumps, load_system, save_system, system_from_dict, system_to_dict


def test_generate_examples():
    g = generate("grid", p=5, d=3)
    assert len(g.entries) == 75 and len(find_joints(g)) == 125
    a = generate("axes", p=5, d=3)
    assert len(a.entries) == 3 and len(find_joints(a)) == 1
    with pytest.raises(BadParams):
        generate("random", p=5, d=3, n=0)
    with pytest.raises(BadParams):
        generate("grid", p=6, d=3)


def test_round_trip(tmp_path):
    for L in (grid(3, 3), random_lines(7, 3, 9, seed=2, planted=2, max_mult=3), families_random(5, 3, [2, 3, 1], seed=1)):
        path = tmp_path / "sys.json"
        save_system(L, path)
        assert load_system(path) == L


def test_non_canonical_input_is_canonicalized():
    doc = {"p": 5, "d": 3, "lines": [{"base": [1, 2, 3], "dir": [2, 4, 0], "mult": 1}]}
    L = system_from_dict(doc)
    assert L.entries[0].line.base.coords == (0, 0, 3)
    assert system_to_dict(L)["lines"][0]["dir"] == [1, 2, 0]
    with pytest.raises(ValueError):
        system_from_dict({"p": 5, "lines": []})


def test_gen_then_joints(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["gen", "--kind", "grid", "--p", "5", "--d", "3", "--out", "g.json"]) == 0
    capsys.readouterr()
    assert main(["joints", "g.json"]) == 0
    assert "125 joints" in capsys.readouterr().out


def test_verify_bezout_exit_zero(capsys):
    assert main(["verify", "--suite", "bezout", "--p", "7", "--d", "3", "--cases", "500", "--seed", "1"]) == 0


def test_exit_codes(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    main(["gen", "--kind", "grid", "--p", "5", "--d", "3", "--out", "g.json"])
    assert main(["certify", "carbery", "g.json", "--B", "0"]) == 2
    assert main(["joints", "missing.json"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["gen", "--kind", "random", "--p", "5", "--d", "3", "--n", "0"]) == 2
    assert main(["certify", "multijoints", "g.json"]) == 2
    assert main(["verify", "--suite", "reduction", "--cases", "2"]) == 1


def test_out_dir_override_and_determinism(tmp_path, monkeypatch):
    monkeypatch.setenv("JOINTKIT_OUT_DIR", str(tmp_path / "out"))
    monkeypatch.chdir(tmp_path)
    save_system(axes(3, 5), tmp_path / "a.json")
    for name in ("r1.json", "r2.json"):
        assert main(["certify", "carbery", "a.json", "--out", name]) == 0
    first = (tmp_path / "out" / "r1.json").read_bytes()
    assert first == (tmp_path / "out" / "r2.json").read_bytes()
    doc = json.loads(first)
    assert doc["passed"] and doc["metrics"]["config"]["B"] == 1
    for name in ("s1.json", "s2.json"):
        main(["gen", "--kind", "random", "--p", "7", "--d", "3", "--n", "12", "--seed", "9", "--out", name])
    assert (tmp_path / "out" / "s1.json").read_bytes() == (tmp_path / "out" / "s2.json").read_bytes()


def test_report_formats(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(dumps(system_to_dict(grid(5, 3))))
    assert main(["report", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("metric,value\n") and "joints,125" in out
    assert main(["report", str(path), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["metrics"]["joints"] == 125


def test_certify_joints_passes(tmp_path, capsys):
    path = tmp_path / "g.json"
    save_system(grid(5, 3), path)
    assert main(["certify", "joints", str(path)]) == 0
    assert "PASS  every_joint_special_somewhere" in capsys.readouterr().out
