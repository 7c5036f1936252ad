import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from uncertain_lattice.cli import main
from uncertain_lattice.document import Document, emit, parse
from uncertain_lattice.grades import Kind, MultiGrade, graded_set
from uncertain_lattice.graphs import CrispGraph, MultiGradedGraph, MultiKind

DOCS = Path(__file__).resolve().parent.parent / "demos" / "documents"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


GOLDEN = sorted(DOCS.glob("*.json")) + sorted((DOCS / "invalid").glob("*.json"))


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_golden_documents_are_canonical(path):
    text = path.read_text(encoding="utf-8")
    assert emit(parse(text)) == text


def test_validate_exit_codes(capsys):
    code, out, err = run(capsys, "validate", DOCS / "fuzzy_set.json")
    assert code == 0 and "valid Fuzzy" in out and not err
    code, out, err = run(capsys, "validate", DOCS / "invalid" / "fuzzy_out_of_range.json")
    assert code == 1 and "mu=1.2" in err
    code, _, err = run(capsys, "validate", DOCS / "malformed" / "not_json.json")
    assert code == 2 and "invalid JSON" in err
    code, _, _ = run(capsys, "validate", DOCS / "nope.json")
    assert code == 2


def test_validate_many_files_keeps_order_and_worst_code(capsys):
    paths = [DOCS / "fuzzy_set.json", DOCS / "invalid" / "fuzzy_out_of_range.json", DOCS / "soft_set.json"]
    code, out, _ = run(capsys, "validate", "--jobs", 3, *paths)
    assert code == 1
    assert [line.split(":")[0] for line in out.splitlines()] == [str(p) for p in paths]


def test_convert_fuzzy_to_neutrosophic(capsys):
    code, out, _ = run(capsys, "convert", DOCS / "fuzzy_set.json", "--to", "Neutrosophic")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "Neutrosophic"
    x1 = {r["key"]: r["value"] for r in doc["payload"]["grades"]}["x1"]
    assert x1 == {"T": 0.2, "I": 0.0, "F": 0.8}


def test_convert_failures(capsys, tmp_path):
    assert run(capsys, "convert", DOCS / "fuzzy_set.json", "--to", "CrispGraph")[0] == 3
    assert run(capsys, "convert", DOCS / "fuzzy_set.json", "--to", "Nope")[0] == 2
    assert run(capsys, "convert", DOCS / "invalid" / "fuzzy_out_of_range.json", "--to", "Neutrosophic")[0] == 1
    assert run(capsys, "convert", DOCS / "fuzzy_set.json", "--to", "Neutrosophic", "--param", "bogus=1")[0] == 2
    assert run(capsys, "convert", DOCS / "fuzzy_set.json", "--to", "Neutrosophic", "--param", "noequals")[0] == 2
    # an intuitionistic set reaches Plithogenic with s=3, so reading it back as s=2 is refused
    src = tmp_path / "if.json"
    src.write_text(emit(Document("IntuitionisticFuzzy", graded_set(Kind.INTUITIONISTIC, {"a": (0.3, 0.5)}))))
    code, out, _ = run(capsys, "convert", src, "--to", "Plithogenic")
    assert code == 0
    back = tmp_path / "p.json"
    back.write_text(out)
    code, _, err = run(capsys, "convert", back, "--to", "IntuitionisticFuzzy")
    assert code == 3 and "UnsupportedDims" in err


def test_convert_with_parameter(capsys, tmp_path):
    g = CrispGraph({"a", "b"}, [("a", "b")])
    mg = MultiGradedGraph(g, MultiKind.NEUTROSOPHIC,
                          {"a": MultiGrade((0.4, 0.6), (0.2, 0.2), (0.1, 0.3)), "b": MultiGrade((0.8,), (0.1,), (0.1,))},
                          {("a", "b"): MultiGrade((0.3,), (0.1,), (0.2,))})
    src = tmp_path / "mg.json"
    src.write_text(emit(Document("MultiNeutrosophicGraph", mg)))
    assert run(capsys, "convert", src, "--to", "NeutrosophicGraph")[0] == 3  # multiplicity 2 needs Mean
    code, out, _ = run(capsys, "convert", src, "--to", "NeutrosophicGraph", "--param", "mode=Mean")
    assert code == 0
    a = {r["key"]: r["value"] for r in json.loads(out)["payload"]["vertex_grades"]}["a"]
    assert a == {"T": 0.5, "I": 0.2, "F": 0.2}


def test_convert_output_is_canonical(capsys, tmp_path):
    code, out, _ = run(capsys, "convert", DOCS / "quadripartitioned_set.json", "--to", "Neutrosophic")
    assert code == 0
    f = tmp_path / "n.json"
    f.write_text(out)
    code, again, _ = run(capsys, "convert", f, "--to", "Neutrosophic")
    assert code == 0 and again == out


def test_powerset(capsys):
    code, out, _ = run(capsys, "powerset", "--universe", "a,b", "--n", 2)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 16 and "{}" in lines and "{{a,b},{a},{b},{}}" in lines
    code, _, err = run(capsys, "powerset", "--universe", "a,b,c", "--n", 3)
    assert code == 3 and "cap" in err
    assert run(capsys, "powerset", "--universe", "a", "--n", -1)[0] == 2
    assert run(capsys, "powerset", "--universe", "a,b", "--n", 2, "--cap", 15)[0] == 3


def test_rough_engines(capsys):
    code, out, _ = run(capsys, "rough", DOCS / "partition.json", "--target", "u1,u2,u3")
    rep = json.loads(out)
    assert code == 0 and rep["lower"] == ["u1", "u2"] and rep["upper"] == ["u1", "u2", "u3", "u4"]
    assert rep["regions"]["bnd"] == ["u3", "u4"] and rep["regions"]["definable"] is False
    code, out, _ = run(capsys, "rough", DOCS / "soft_set.json", "--engine", "soft", "--target", "a,b,d")
    assert code == 0 and json.loads(out)["upper"] == ["a", "b"]
    code, out, _ = run(capsys, "rough", DOCS / "treesoft_set.json", "--engine", "treesoft", "--target", "a,b,c")
    assert code == 0 and json.loads(out)["regions"]["bnd"] == ["c", "d"]
    code, out, _ = run(capsys, "rough", DOCS / "partition_family.json", "--engine", "multi", "--target", "u1,u2,u3")
    assert code == 0 and len(json.loads(out)["relations"]) == 2
    code, out, _ = run(capsys, "rough", DOCS / "hypersoft_set.json", "--engine", "hyper", "--relation", DOCS / "partition.json")
    keys = json.loads(out)["keys"]
    assert code == 0 and keys[1]["key"] == ["young", "city"] and keys[1]["value"]["lower"] == ["u1", "u2"]


def test_rough_errors(capsys):
    assert run(capsys, "rough", DOCS / "partition.json", "--target", "zz")[0] == 2
    assert run(capsys, "rough", DOCS / "soft_set.json", "--engine", "classic", "--target", "a")[0] == 2
    assert run(capsys, "rough", DOCS / "hypersoft_set.json", "--engine", "hyper")[0] == 2


def test_hierarchy(capsys):
    code, out, _ = run(capsys, "hierarchy", "--export")
    assert code == 0 and "Crisp -> Fuzzy : fuzzy-generalizes-crisp" in out.splitlines()
    code, out, _ = run(capsys, "hierarchy", "--check", DOCS / "crisp_set.json")
    assert code == 0 and "ok Crisp -> Plithogenic" in out and "FAIL" not in out
    assert run(capsys, "hierarchy", "--check", DOCS / "invalid" / "fuzzy_out_of_range.json")[0] == 1


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--samples", 2, "--seed", 1)
    assert code == 0 and out.startswith("edges=")


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["convert"])
    assert info.value.code == 2


def test_epsilon_override(capsys, tmp_path, monkeypatch):
    f = tmp_path / "f.json"
    f.write_text(emit(Document("Fuzzy", graded_set(Kind.FUZZY, {"x": 1.00001}))))
    assert run(capsys, "validate", f)[0] == 1
    monkeypatch.setenv("UK_EPSILON", "0.001")
    assert run(capsys, "validate", f)[0] == 0


@pytest.mark.skipif(shutil.which("uncertain-lattice") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["uncertain-lattice", "powerset", "--universe", "a", "--n", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines() == ["{a}", "{}"]
    res = subprocess.run([sys.executable, "-m", "uncertain_lattice.cli", "validate", str(DOCS / "fuzzy_set.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0
