import json
import shutil
import subprocess

import pytest

from borel_qo.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def tree_group(tmp_path, capsys):
    src = write(tmp_path, "tree.json", ["-"])
    out = str(tmp_path / "pres.json")
    code, _, _ = run(capsys, "build", "tree-group", "--input", src, "--depth", "0", "--output", out)
    assert code == 0
    return out


def test_build_tree_group_depth0(tmp_path, capsys):
    src = write(tmp_path, "tree.json", ["-"])
    code, out, _ = run(capsys, "build", "tree-group", "--input", src, "--depth", "0")
    assert code == 0
    pres = json.loads(out)
    assert sorted(pres["relators"]) == sorted(["x" * 59, "y" * 61])
    assert pres["metadata"]["cprime"] == "1/8"


def test_build_graph_group(tmp_path, capsys):
    src = write(tmp_path, "g.json", {"vertices": 2, "edges": [[0, 1]]})
    code, out, _ = run(capsys, "build", "graph-group", "--input", src)
    assert code == 0
    assert "v0v1" * 11 in json.loads(out)["relators"]


def test_build_malformed_tree_names_prefix(tmp_path, capsys):
    src = write(tmp_path, "bad.json", ["-", "01"])
    code, _, err = run(capsys, "build", "tree-group", "--input", src, "--depth", "2")
    assert code == 2
    assert "'0'" in err


def test_input_errors(tmp_path, capsys):
    code, _, _ = run(capsys, "dehn", "--input", str(tmp_path / "missing.json"), "--word", "x")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "check-cprime", "--input", str(bad))
    assert code == 2


def test_check_cprime_depth2(tmp_path, capsys):
    src = write(tmp_path, "tree.json", ["-", "0", "1", "00"])
    pres = str(tmp_path / "p.json")
    assert run(capsys, "build", "tree-group", "--input", src, "--depth", "2", "--output", pres)[0] == 0
    code, rep = report(capsys, "check-cprime", "--input", pres, "--lambda", "1/8")
    assert code == 0 and rep["outcome"] is True
    assert rep["certificate"]["piece_length"] >= 1
    assert rep["schema"] == "borel-qo/report/v1"


def test_check_cprime_false(tmp_path, capsys):
    pres = write(tmp_path, "p.json", {"generators": ["x", "y"], "relators": ["xxx", "xxxy"]})
    code, rep = report(capsys, "check-cprime", "--input", pres)
    assert code == 1
    assert rep["certificate"]["piece"] == "xxx"


def test_dehn_and_order(tree_group, capsys):
    code, rep = report(capsys, "dehn", "--input", tree_group, "--word", "x" * 59)
    assert code == 0 and rep["outcome"] is True
    code, rep = report(capsys, "dehn", "--input", tree_group, "--word", "xy")
    assert code == 1
    code, rep = report(capsys, "order", "--input", tree_group, "--word", "x")
    assert code == 0 and rep["order"] == 59
    code, _ = report(capsys, "order", "--input", tree_group, "--word", "x", "--max", "10")
    assert code == 1


def test_dehn_uncertified_exits_3(tmp_path, capsys):
    pres = write(tmp_path, "p.json", {"generators": ["x", "y"], "relators": ["xxx", "xxxy"]})
    code, _, err = run(capsys, "dehn", "--input", pres, "--word", "x")
    assert code == 3
    assert "certified" in err


def test_leq_variants(tmp_path, capsys):
    e = write(tmp_path, "e.json", ["-"])
    ea = write(tmp_path, "ea.json", ["-", "a"])
    eb = write(tmp_path, "eb.json", ["-", "b"])
    code, rep = report(capsys, "leq", "translate", "--input", e, "--right", ea)
    assert code == 0 and rep["witness"] == ["-", "A"]
    code, rep = report(capsys, "leq", "translate", "--input", ea, "--right", eb)
    assert code == 1 and rep["witness"] == "no witness"
    code, rep = report(capsys, "leq", "conj-K", "--input", e, "--right", ea)
    assert code == 0 and rep["witness"] == ["-", "A"]
    for variant in ("prefix", "suffix", "mbt"):
        code, rep = report(capsys, "leq", variant, "--input", ea, "--right", ea)
        assert code == 0 and rep["witness"] == "-"
    t0 = write(tmp_path, "t0.json", ["-", "0"])
    t1 = write(tmp_path, "t1.json", ["-", "1"])
    assert report(capsys, "leq", "tree", "--input", t0, "--right", t0)[1]["witness"] == "-"
    assert report(capsys, "leq", "tree", "--input", t0, "--right", t1)[0] == 1


def test_suite_command(capsys):
    code, rep = report(capsys, "suite", "lineup", "--size", "0.1")
    assert code == 0 and rep["outcome"] is True and rep["seed"] == 0
    code, rep = report(capsys, "suite", "fm", "--size", "0.1", "--corrupt")
    assert code == 1 and rep["counterexample"] is not None


def test_reports_byte_identical(tree_group, capsys):
    argv = ["order", "--input", tree_group, "--word", "xx", "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    a = run(capsys, "suite", "outline", "--size", "0.2", "--seed", "5")[1]
    b = run(capsys, "suite", "outline", "--size", "0.2", "--seed", "5")[1]
    assert a == b


def test_timing_flag(tree_group, capsys):
    code, rep = report(capsys, "order", "--input", tree_group, "--word", "x", "--timing")
    assert "seconds" in rep["timing"]


@pytest.mark.skipif(shutil.which("borel-qo") is None, reason="console script not installed")
def test_console_script(tree_group):
    proc = subprocess.run(["borel-qo", "dehn", "--input", tree_group, "--word", "xy"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "outcome: False" in proc.stdout
