import json

import pytest

from cubhom import fixtures, io
from cubhom.cli import main

FIX = fixtures.HERE


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homology_interval_square(capsys):
    code, out, _ = run(capsys, "homology", FIX / "interval_square.cubset", FIX / "constant_Z.system",
                       "--max-degree", 3)
    assert code == 0 and out.strip() == "H0=Z H1=Z H2=Z H3=0"


def test_homology_twisted_standard_cube(capsys):
    code, out, _ = run(capsys, "homology", FIX / "cube2.cubset", FIX / "twist_cube2.system",
                       "--max-degree", 2)
    assert code == 0 and out.strip() == "H0=Z H1=0 H2=0"


def test_homology_structured_is_deterministic(capsys):
    args = ("homology", FIX / "boundary_square.cubset", "--group", "0,2", "--format", "structured",
            "--witnesses")
    code, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert code == 0 and first == second
    doc = json.loads(first)
    h1 = doc["homology"][1]
    assert h1["free_rank"] == 1 and h1["torsion"] == [2]


def test_single_degree(capsys):
    code, out, _ = run(capsys, "homology", FIX / "cube3.cubset", "--group", "6", "--degree", 0)
    assert code == 0 and out.strip() == "H0=Z/6"


def test_malformed_face_table(capsys, tmp_path):
    doc = json.loads((FIX / "cube2.cubset").read_text())
    doc["faces"]["[xx]"][0]["target"] = "[1x]"
    bad = tmp_path / "bad.cubset"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "homology", bad)
    assert code == 2
    diag = json.loads(err)
    assert diag["error"] == "PresentationError" and "[xx]" in diag["instance"]


def test_broken_system_reports_relation(capsys, tmp_path):
    X = io.read_set(FIX / "cube2.cubset")
    from cubhom.abgrp import FpAbGroup
    from cubhom.coeff import constant_system
    doc = io.system_to_json(constant_system(X, FpAbGroup.free(1), 3))
    for m in doc["face_maps"]:
        if m["cube"] == {"base": "[xx]", "eta": []} and (m["i"], m["tau"]) == (1, 0):
            m["matrix"] = [[-1]]
    path = tmp_path / "broken.system"
    path.write_text(io.dumps(doc))
    code, _, err = run(capsys, "validate", FIX / "cube2.cubset", path)
    assert code == 2
    v = json.loads(err)["violation"]
    assert v["relation"] == "face-face" and v["degree"] == 2 and v["cube"] == "[xx]"


def test_table_system_round_trip(tmp_path):
    X = io.read_set(FIX / "interval_square.cubset")
    F = io.read_system(FIX / "twist_cube2.system", io.read_set(FIX / "cube2.cubset"), 3)
    text = io.dumps(io.system_to_json(F))
    F2 = io.system_from_json(json.loads(text), F.base)
    assert io.dumps(io.system_to_json(F2)) == text
    assert X.count(1) == 9


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "e[1] d[1,0]")
    assert code == 0 and out.strip() == "d[1,0] e[1]"
    code, out, _ = run(capsys, "normal-form", "d[1,0] e[1]", "--order", "compose")
    assert out.strip() == "d[1,0] e[1]"
    code, _, _ = run(capsys, "normal-form", "e[3]", "--source-dim", 1)
    assert code == 2


def test_plus_complex(capsys):
    code, out, _ = run(capsys, "plus-complex", 4)
    assert code == 0 and out.strip() == "H0=Z, H1..H4=0"
    code, out, _ = run(capsys, "plus-complex", 0)
    assert out.strip() == "H0=Z"


def test_mv(capsys):
    code, out, _ = run(capsys, "mv", FIX / "boundary_square.cubset", "--first", "[0x],[x0]",
                       "--second", "[1x],[x1]")
    assert code == 0
    assert "H1(X1uX2) = Z" in out
    assert "verdict: exact" in out and "NO" not in out


def test_inverse_image(capsys, tmp_path):
    out_path = tmp_path / "inv.cubset"
    code, _, _ = run(capsys, "inverse-image", FIX / "cube1.cubset", FIX / "point.cubset",
                     FIX / "cube1_to_point.map", "[]<1>", "-o", out_path)
    assert code == 0
    S = io.read_set(out_path)
    assert [len(S.nondeg.get(k, ())) for k in range(3)] == [4, 5, 2]
    code, out, _ = run(capsys, "homology", out_path, "--max-degree", 3)
    assert out.strip() == "H0=Z H1=Z H2=Z H3=0"


def test_validate_fixture_system_without_cap(capsys):
    code, out, _ = run(capsys, "validate", FIX / "cube2.cubset", FIX / "twist_cube2.system")
    assert code == 0
    assert "valid system, cap 4" in out


def test_validate_properties_quick(capsys):
    code, out, _ = run(capsys, "validate", "--properties", "--quick", "--seed", 3)
    assert code == 0
    assert out.count("PASS") == 5


def test_usage_errors(capsys):
    code, _, _ = run(capsys, "validate")
    assert code == 2
    code, _, _ = run(capsys, "homology", "/nonexistent.cubset")
    assert code == 2


@pytest.mark.parametrize("name", sorted(n for n in fixtures.documents() if n.endswith(".cubset")))
def test_presentation_round_trip(name):
    text = (FIX / name).read_text()
    assert io.dumps(io.set_to_json(io.set_from_json(json.loads(text)))) == text


def test_fixtures_are_golden():
    for name, text in fixtures.documents().items():
        assert (FIX / name).read_text() == text, name
