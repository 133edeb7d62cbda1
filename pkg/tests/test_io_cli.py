import json
import subprocess
import sys
from pathlib import Path

import pytest

from catcov import fixtures as fx
from catcov import io
from catcov.category import PresentedCategory
from catcov.cli import main
from catcov.errors import InvalidInput, MissingComposite

DATA = Path(__file__).resolve().parent.parent / "data"


def _missing_composite_file():
    d = fx.missing_composite_square()
    return {
        "format": io.CATEGORY_FORMAT,
        "objects": d["objects"],
        "morphisms": [{"name": n, "src": s, "tgt": t} for n, s, t in d["morphisms"]],
        "compositions": [{"g": g, "f": f, "gf": h} for (g, f), h in d["compositions"].items()],
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


# -- file formats ------------------------------------------------------------------

@pytest.mark.parametrize("C", [fx.k2(), fx.idem(), fx.square(), fx.i2(), fx.z4grp().category])
def test_category_roundtrip(C):
    D = io.category_from_dict(json.loads(io.dumps(io.category_to_dict(C))))
    assert D.objects == C.objects and D.morphisms == C.morphisms and dict(D.table) == dict(C.table)


def test_presented_roundtrip():
    P = io.load_category(DATA / "loop.json")
    assert isinstance(P, PresentedCategory)
    Q = io.category_from_dict(io.presented_to_dict(P))
    assert Q.arrows == P.arrows and Q.relations == P.relations


def test_functor_roundtrip():
    F = io.load_functor(DATA / "k2_z2.json")
    d = io.functor_to_dict(F)
    G = io.functor_from_dict(d, F.source, F.target)
    assert G.same_maps(F)


def test_action_roundtrip():
    A = io.load_action(DATA / "k2_cover2_action.json")
    B = io.action_from_dict(A.category, A.to_dict())
    assert B.elements == A.elements
    assert all(B.functors[g].same_maps(A.functors[g]) for g in A.elements)


def test_groupoid_inverses():
    G = io.groupoid_from_dict(io.read_json(DATA / "z4grp.json"))
    assert G.inv("1") == "3"


def test_bad_files(tmp_path):
    with pytest.raises(InvalidInput):
        io.read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidInput):
        io.read_json(bad)
    with pytest.raises(InvalidInput):
        io.category_from_dict({"format": "other"})
    with pytest.raises(MissingComposite):
        io.category_from_dict(_missing_composite_file())


# -- verbs and exit codes ------------------------------------------------------------

def test_pi1_k2(capsys):
    code, rep = run(capsys, "pi1", DATA / "k2.json", "--base", "x0")
    assert code == 0
    assert rep["order"] == "infinite"
    code, rep = run(capsys, "abelianize", DATA / "k2.json", "--base", "x0")
    assert (rep["rank"], rep["torsion"]) == (1, [])


def test_pi1_idem(capsys):
    code, rep = run(capsys, "pi1", DATA / "idem.json", "--base", "o")
    assert code == 0 and rep["order"] == 1
    code, rep = run(capsys, "abelianize", DATA / "idem.json", "--base", "o")
    assert (rep["rank"], rep["torsion"]) == (0, [])


def test_pi1_word_equal(capsys):
    code, rep = run(capsys, "pi1", DATA / "loop.json", "--word-equal", "a", "a^-1")
    assert code == 1 and rep["word_equal"] is False
    code, rep = run(capsys, "pi1", DATA / "loop.json", "--word-equal", "a*a^-1", "1")
    assert code == 0 and rep["word_equal"] is True


def test_pi1_unknown_base(capsys):
    code, _ = run(capsys, "pi1", DATA / "k2.json", "--base", "nowhere")
    assert code == 2


def test_validate(capsys):
    code, rep = run(capsys, "validate", DATA / "square.json")
    assert code == 0 and rep["objects"] == 4 and rep["components"] == 1
    code, rep = run(capsys, "validate", DATA / "k2_z2.json")
    assert code == 0 and rep["kind"] == "functor"
    code, rep = run(capsys, "validate", DATA / "i2_swap.json")
    assert code == 0 and rep["free"] is True


def test_validate_missing_composite(capsys, tmp_path):
    p = tmp_path / "sq.json"
    p.write_text(json.dumps(_missing_composite_file()))
    code, _ = run(capsys, "validate", p)
    assert code == 2


def test_cover_check(capsys):
    code, rep = run(capsys, "cover-check", DATA / "k2_cover2_projection.json")
    assert code == 0 and rep["covering"] and rep["galois"]
    code, rep = run(capsys, "cover-check", DATA / "k2_z2.json")
    assert code == 1 and rep["covering"] is False


def test_galois_check(capsys):
    code, rep = run(capsys, "galois-check", DATA / "k3_cover3_projection.json")
    assert code == 1 and rep["galois"] is False
    code, rep = run(capsys, "galois-check", DATA / "k2_fold.json")
    assert code == 1
    code, rep = run(capsys, "galois-check", DATA / "k2_cover2_projection.json")
    assert code == 0 and rep["fibre_size"] == 2


def test_orbit_and_grade(capsys):
    code, rep = run(capsys, "orbit", DATA / "i2.json", DATA / "i2_swap.json")
    assert code == 0 and rep["category"]["objects"] == ["a"]
    code, rep = run(capsys, "grade", DATA / "k2_cover2.json", DATA / "k2_cover2_action.json")
    assert code == 0 and rep["degrees"] == {"alpha@0": "0", "beta@0": "1"}
    code, rep = run(capsys, "grade", DATA / "k2_cover2.json", DATA / "k2_cover2_action.json",
                    "--section", "(x0,1)")
    assert rep["degrees"] == {"alpha@0": "1", "beta@0": "0"}
    code, _ = run(capsys, "grade", DATA / "k2_cover2.json", DATA / "k2_cover2_action.json",
                  "--section", "(x0,0)", "--section", "(x0,1)")
    assert code == 2


def test_orbit_not_free(capsys, tmp_path):
    A = fx.i2_swap().to_dict()
    A["functors"]["s"] = A["functors"]["1"]
    p = tmp_path / "act.json"
    p.write_text(json.dumps(A))
    code, _ = run(capsys, "orbit", DATA / "i2.json", p)
    assert code == 2


def test_smash_and_effective(capsys):
    code, rep = run(capsys, "smash", DATA / "k2_z2.json", "--point", "*")
    assert code == 0 and rep["components"] == 1 and len(rep["category"]["objects"]) == 4
    code, rep = run(capsys, "smash", DATA / "k2_z2_flat.json")
    assert rep["components"] == 2
    assert run(capsys, "effective", DATA / "k2_z2.json")[0] == 0
    assert run(capsys, "effective", DATA / "k2_z2_flat.json")[0] == 1
    assert run(capsys, "effective", DATA / "k2_z2.json", "--strict")[0] == 2
    assert run(capsys, "effective", DATA / "zigzag4_z4.json", "--strict")[0] == 2


def test_roundtrip(capsys):
    code, rep = run(capsys, "roundtrip", DATA / "k2_k2.json", DATA / "k2_k2_swap.json")
    assert code == 0 and rep["commutes"]


def test_universal_and_dot(capsys, tmp_path):
    out, dot = tmp_path / "ball.json", tmp_path / "out.dot"
    code, _ = run(capsys, "universal", DATA / "k2.json", "--base", "x0", "--radius", 2,
                  "-o", out, "--dot", dot)
    assert code == 0
    rep = json.loads(out.read_text())
    assert len(rep["objects"]) == 10 and len(rep["morphisms"]) == 9
    assert rep["interior_star_bijective"]
    text = dot.read_text()
    assert text.count(" -> ") == 9
    code, again = run(capsys, "dot", out)
    assert code == 0 and again == text


def test_universal_nonfree(capsys):
    code, _ = run(capsys, "universal", DATA / "z4grp.json", "--radius", 1)
    assert code == 3


def test_budget_exit(capsys):
    code, rep = run(capsys, "pi1", DATA / "z4grp.json", "--coset-rows", "1")
    assert code == 3 and rep["order"] == "unknown"


def test_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["universal", str(DATA / "k2.json")])
    assert e.value.code == 2


def test_subprocess_determinism(tmp_path):
    cmd = [sys.executable, "-m", "catcov.cli", "universal", str(DATA / "k2.json"),
           "--base", "x0", "--radius", "3"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert b"objects" in a.stderr
