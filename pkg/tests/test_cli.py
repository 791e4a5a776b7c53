import json
from fractions import Fraction

import pytest

from retorix import fixtures as fx
from retorix.cli import main, parse_relations
from retorix.complex import standard_complex
from retorix.dga import GradedBasis, parse_ring_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def write_rows(path, rows):
    path.write_text("\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    return str(path)


def write_relations(path, relations):
    path.write_text("# dependencies\n" + "\n".join(" + ".join(f"v{i}" for i in r) + " = 0" for r in relations) + "\n")
    return str(path)


def test_betti_klein(capsys, tmp_path):
    lam = write_rows(tmp_path / "klein.txt", fx.klein_lambda().to_lists())
    code, out, _ = run(capsys, "betti", "--complex", "cross:2", "--lambda", lam, "--totals-only")
    assert code == 0 and out["totals"] == [1, 1, 0]


def test_betti_complex_file(capsys, tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps(standard_complex("polygon:5").to_json()))
    code, out, _ = run(capsys, "betti", "--complex", str(path))
    assert code == 0 and out["totals"] == [1, 10, 1]  # genus-5 surface


def test_bott_deps_t1(capsys, tmp_path):
    deps = write_relations(tmp_path / "t1.deps", fx.T1_RELATIONS)
    code, out, _ = run(capsys, "bott", "--deps", deps, "--dim", "9", "--engine")
    assert code == 0
    assert out["betti"] == out["engine_betti"] == [1, 1, 0, 2, 3, 3, 4, 2, 0, 0]
    assert sorted(g["degree"] for g in out["generators"]) == [1, 3, 3, 4, 5, 5, 6, 6]


def test_bott_blocks(capsys, tmp_path):
    mat = write_rows(tmp_path / "b.txt", [[0, 1, 0], [0, 0, 0]])
    code, out, _ = run(capsys, "bott", "--matrix", mat, "--blocks", "1,2", "--engine")
    assert code == 0 and out["betti"] == out["engine_betti"]
    bad = write_rows(tmp_path / "bad.txt", [[1, 0, 0], [0, 0, 0]])
    code, out, _ = run(capsys, "bott", "--matrix", bad, "--blocks", "1,2")
    assert code == 1 and "error" in out


def test_matroid_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "matroid", "count", "--n", "4")
    assert (code, out["count"]) == (0, 16)
    code, out, _ = run(capsys, "matroid", "count", "--n", "9")
    assert code == 2 and out["kind"] == "capacity"
    deps = write_relations(tmp_path / "r.deps", fx.REMARK_RELATIONS_1)
    code, out, _ = run(capsys, "matroid", "circuits", "--deps", deps)
    assert out["degrees"] == {"1": 1, "8": 3, "10": 4}
    code, out, _ = run(capsys, "matroid", "triangularize", "--deps", deps)
    assert code == 0 and len(out["matrix"]) == 17


def test_csymp_commands(capsys):
    code, out, _ = run(capsys, "csymp", "--complex", "polygon:4")
    assert code == 0 and out["result"] is True
    code, out, _ = run(capsys, "csymp", "--complex", "simplex:3")
    assert out == {"reason": "odd dimension", "result": False}
    code, out, _ = run(capsys, "csymp", "--complex", "simplex:3", "--almost")
    assert out["result"] is False


def test_check(capsys, tmp_path):
    good = write_rows(tmp_path / "t.txt", fx.torus_lambda().to_lists())
    code, out, _ = run(capsys, "check", "--complex", "cross:2", "--lambda", good)
    assert out["characteristic"] is True
    bad = write_rows(tmp_path / "b.txt", [[1, 1, 0, 0], [0, 0, 1, 1]])
    code, out, _ = run(capsys, "check", "--complex", "cross:2", "--lambda", bad)
    assert out["characteristic"] is False and out["singular_face"]


def test_errors(capsys, tmp_path):
    code, out, _ = run(capsys, "betti", "--complex", "nosuch.json")
    assert code == 1 and "error" in out
    code, out, _ = run(capsys, "betti", "--complex", "polygon:2")
    assert code == 1
    broken = tmp_path / "x.json"
    broken.write_text("{")
    code, out, _ = run(capsys, "betti", "--complex", str(broken))
    assert code == 1


def test_parse_relations():
    assert parse_relations("v1 + v2 = 0\n# c\n3 4 5\nv_{6}+v7=0") == [[1, 2], [3, 4, 5], [6, 7]]


def test_ring_roundtrip_and_determinism(capsys, tmp_path):
    lam = write_rows(tmp_path / "t.txt", fx.torus_lambda().to_lists())
    code, data, raw = run(capsys, "ring", "--complex", "cross:2", "--lambda", lam)
    _, _, again = run(capsys, "ring", "--complex", "cross:2", "--lambda", lam)
    assert code == 0 and raw == again
    K = standard_complex("cross:2")
    classes = parse_ring_json(K, data)
    gb = GradedBasis(K)
    assert len(classes) == 4
    for prod in data["products"]:
        z = gb.cup(classes[prod["i"]], classes[prod["j"]])
        assert [Fraction(x) for x in prod["coords"]] == list(z.coords)
    top = [p for p in data["products"] if p["target"]["p"] == 2]
    assert top and all(p["coords"] != ["0"] for p in top)


def test_repro_and_selftest(capsys):
    code, out, _ = run(capsys, "repro")
    assert code == 0 and out["all_pass"]
    code, out, _ = run(capsys, "selftest", "--seed", "3", "--cases", "20")
    assert code == 0 and out["pass"]


def test_missing_command():
    with pytest.raises(SystemExit):
        main([])
