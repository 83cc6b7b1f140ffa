import json
import shutil
from pathlib import Path

import numpy as np
import pytest

from trigp import io
from trigp.algebra import Algebra
from trigp.cli import main
from trigp.modules import Module, is_isomorphic, regular_module
from trigp.triangular import Bimodule, TriangularAlgebra, TripleModule, build_triangular, e1_lambda

EXAMPLES = Path(__file__).resolve().parents[1] / "data" / "examples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


@pytest.fixture
def ex(tmp_path):
    d = tmp_path / "ex"
    shutil.copytree(EXAMPLES, d)
    return d


def test_validate_examples(capsys):
    files = sorted(EXAMPLES.glob("*.json"))
    assert len(files) >= 10
    code, out = run(capsys, "validate", *files)
    assert code == 0 and "FAIL" not in out


def test_loaded_types():
    assert isinstance(io.load(EXAMPLES / "lambda2.json"), Algebra)
    assert isinstance(io.load(EXAMPLES / "t2_lambda2.json"), TriangularAlgebra)
    assert isinstance(io.load(EXAMPLES / "lambda2_simple.json"), Module)
    t = io.load(EXAMPLES / "t2_lambda2_socle.json")
    assert isinstance(t, TripleModule) and t.dim == 3
    a, b = io.load(EXAMPLES / "lambda2.json"), io.load(EXAMPLES / "lambda2_structure.json")
    assert (a.table == b.table).all()


def test_round_trip_docs(g_l2, reg_l2):
    t = e1_lambda(g_l2, reg_l2)
    back = io.loads(io.dumps(io.triple_doc(t)))
    assert is_isomorphic(back.to_module(), t.to_module()) is not None
    m = io.loads(io.module_doc(reg_l2))
    assert (m.actions == reg_l2.actions).all()
    g = io.loads(io.triangular_doc(g_l2))
    assert (g.gamma.table == g_l2.gamma.table).all()


def test_broken_unit_law(capsys, tmp_path):
    doc = json.loads((EXAMPLES / "lambda2_structure.json").read_text())
    doc["unit"] = [0, 1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "validate", path)
    assert code == 1 and "unit" in out


def test_non_s_linear_phi(capsys, ex):
    path = ex / "t2_lambda2_socle.json"
    doc = json.loads(path.read_text())
    doc["phi"] = [[1], [0]]
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "validate", path)
    assert code == 1 and "S-basis element 1" in out


def test_digest_mismatch(ex):
    path = ex / "t2_lambda2_socle.json"
    doc = json.loads(path.read_text())
    doc["algebra"]["digest"] = "0000000000000000"
    path.write_text(json.dumps(doc))
    with pytest.raises(io.InputError, match="digest mismatch"):
        io.load(path)


def test_parse_error_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n "kind": "algebra",\n "form": \n}')
    with pytest.raises(io.InputError, match="line 4"):
        io.load(path)
    with pytest.raises(io.InputError, match="phi"):
        io.loads({"kind": "triple", "algebra": {"kind": "algebra", "form": "t2",
                                                "base": {"kind": "algebra", "form": "truncated", "p": 2, "t": 2}},
                  "x": {"ref": str(EXAMPLES / "lambda2_simple.json")},
                  "y": {"ref": str(EXAMPLES / "lambda2_simple.json")}, "phi": [[1, 1]]})


def test_check_gp_agree(capsys):
    code, out = run(capsys, "check", EXAMPLES / "t2_lambda2_socle.json", "--kind", "gp")
    last = out.strip().splitlines()[-1]
    assert code == 0
    assert last.startswith("GP (criterion) / ProvenGP") and "AGREE" in last and "[bound=8 seed=0]" in last


def test_check_not_gp(capsys):
    code, out = run(capsys, "check", EXAMPLES / "t2_f2_k0.json", "--kind", "gp")
    last = out.strip().splitlines()[-1]
    assert code == 0 and last.startswith("NotGP (criterion) / NotGP") and "AGREE" in last


def test_check_proj(capsys):
    code, out = run(capsys, "check", EXAMPLES / "t2_f2_e1_regular.json", "--kind", "proj")
    assert code == 0 and out.startswith("projective (criterion") and "/ projective (oracle) / AGREE" in out


def test_check_gi(capsys):
    code, out = run(capsys, "check", EXAMPLES / "t2_f2_k0.json", "--kind", "gi", "--bound", "4", "--seed", "3")
    last = out.strip().splitlines()[-1]
    assert code == 0 and last.startswith("GI (criterion)") and "[bound=4 seed=3]" in last


def test_check_inapplicable(capsys, tmp_path, lam2, simple_l2):
    # M = S as a Λ2-bimodule: Tor_1(M, S) != 0, so condition (1) fails
    m = Bimodule(lam2, lam2, simple_l2.actions, simple_l2.actions)
    g = build_triangular(lam2, lam2, m)
    t = e1_lambda(g, simple_l2)
    path = tmp_path / "t.json"
    path.write_text(io.dumps(io.triple_doc(t)))
    code, out = run(capsys, "check", path, "--kind", "gp", "--gp-r", EXAMPLES / "lambda2_simple.json")
    assert code == 3 and "criterion inapplicable" in out and "condition (1)" in out


def test_census_cli_bit_stable(capsys, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        code, out = run(capsys, "census", EXAMPLES / "t2_lambda2.json", "--bound", 4, "--out", d)
        assert code == 0 and "count=5 bound=4 complete=yes" in out and "seed=0" in out
        outs.append((d / "census_t2_lambda2_b4.json").read_bytes())
    assert outs[0] == outs[1]
    alg, entries = io.load_census(tmp_path / "run0" / "census_t2_lambda2_b4.json")
    assert len(entries) == 5


def test_census_cli_f2(capsys, tmp_path):
    code, out = run(capsys, "census", EXAMPLES / "t2_f2.json", "--bound", 4, "--out", tmp_path)
    assert code == 0 and "count=2 bound=4 complete=yes" in out


def test_workspace_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TRIGP_WORKSPACE", str(tmp_path / "ws"))
    code, _ = run(capsys, "census", EXAMPLES / "t2_f2.json", "--bound", 2)
    assert code == 0 and (tmp_path / "ws" / "census_t2_f2_b2.json").exists()


def test_suite_cli(capsys, tmp_path):
    code, out = run(capsys, "suite", "projective", "--out", tmp_path)
    summary = json.loads(out.strip().splitlines()[0])
    assert code == 0 and summary["passed"] and summary["seed"] == 0
    code, _ = run(capsys, "suite", "nonesuch")
    assert code == 1


def test_homological_verbs(capsys, tmp_path):
    s, r = EXAMPLES / "lambda2_simple.json", EXAMPLES / "lambda2_regular.json"
    code, out = run(capsys, "ext", s, s, "--degree", 3)
    assert code == 0 and "= 1 " in out
    code, out = run(capsys, "ext", r, s)
    assert "= 0 " in out
    code, out = run(capsys, "cover", s)
    assert code == 0 and "dim P = 2" in out and "dim kernel = 1" in out
    code, out = run(capsys, "syzygy", s, "--degree", 2, "--out", tmp_path)
    assert code == 0 and "= 1 " in out and (tmp_path / "lambda2_simple_2.json").exists() is False
    assert (tmp_path / "syzygy_lambda2_simple_2.json").exists()


def test_bad_args(capsys):
    code, out = run(capsys, "check", EXAMPLES / "t2_f2_k0.json", "--bound", 0)
    assert code == 1
    code, out = run(capsys, "check", EXAMPLES / "lambda2.json")
    assert code == 1 and "expected a triple" in out
