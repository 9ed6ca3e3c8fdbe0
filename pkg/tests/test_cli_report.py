import json
import shutil

import pytest

from k3lab.cli import main
from k3lab.fixtures import FixtureError, fixture_dir
from k3lab.report import CLAIMS, SKIPPED, h2d_table, reproduce_all


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pell(capsys):
    code, out, _ = run(capsys, "pell", "--m", "-7")
    assert code == 0
    assert json.loads(out)["solutions"][0] == {"x": 1, "y": 2, "primitive": True}


def test_represent_certificate(capsys):
    code, out, _ = run(capsys, "represent", "--gram", "4 5 2", "--n", "6")
    data = json.loads(out)
    assert code == 0 and data["result"] == "ObstructionCert" and data["modulus"] == 9


def test_dlist_text(capsys):
    code, out, _ = run(capsys, "--format", "text", "dlist", "--N", "20")
    assert out.split() == ["7", "14", "17"]


def test_ample_search(capsys):
    code, out, _ = run(capsys, "ample-search", "--d", "7")
    assert json.loads(out)["witness"] == [2, 1]
    code, out, _ = run(capsys, "ample-search", "--d", "5")
    assert json.loads(out)["verdict"] == "no_solution"
    code, _, err = run(capsys, "ample-search", "--d", "2")
    assert code == 2 and "k3lab: error" in err


def test_roots_and_nikulin(capsys):
    _, out, _ = run(capsys, "roots", "--gram", "4 0 -2", "--bound", "5")
    assert [0, 1] in json.loads(out)["roots"]
    _, out, _ = run(capsys, "nikulin", "--variant", "nonsymplectic_curves", "--pa", "2", "--k", "1")
    assert json.loads(out)["rho_lower_bound"] == 10


def test_count_points(capsys):
    _, out, _ = run(capsys, "count-points", "--fixture", "X4", "--p", "11")
    assert json.loads(out)["N"] == 145
    _, out, _ = run(capsys, "count-points", "--fixture", "X2", "--p", "5")
    assert json.loads(out)["N"] == 31
    code, _, err = run(capsys, "count-points", "--fixture", "nope", "--p", "5")
    assert code == 2 and "unknown fixture" in err
    code, _, _ = run(capsys, "count-points", "--fixture", "X4", "--p", "9")
    assert code == 2


def test_zeta_partial(capsys, tmp_path):
    counts = tmp_path / "c.txt"
    counts.write_text("31 651")
    code, out, _ = run(capsys, "zeta", "--counts-file", str(counts), "--p", "5")
    data = json.loads(out)
    assert code == 0 and data["traces"] == [5, 25] and data["partial"]


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify-example", "--name", "X4", "--max-k", "1")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    code, out, _ = run(capsys, "verify-example", "--name", "X6", "--p", "13", "--max-k", "1")
    assert code == 0


def test_h2d_table():
    rows = h2d_table(20)
    assert rows[0] == {"d": 1, "h": 1, "q_construction": True}
    assert [r["d"] for r in rows if r["q_construction"]] == [1, 2, 3, 4, 7, 14, 17]
    assert rows[6]["witness"] == [2, 1]


def test_claim_ids_cover_criteria():
    assert [cid[:2] for cid, _ in CLAIMS] == [f"{i:02d}" for i in range(1, 15)]
    assert len(SKIPPED) == 2


def test_reproduce_subset_is_deterministic(capsys):
    only = ["01-lattice-arithmetic", "05-d-list", "13-compare-reductions"]
    a = [r.to_dict() for r in reproduce_all(only=only)]
    b = [r.to_dict() for r in reproduce_all(only=only)]
    assert a == b and all(r["status"] == "pass" for r in a)


def test_empty_directory(tmp_path):
    with pytest.raises(FixtureError):
        reproduce_all(tmp_path)


def test_perturbed_fixture_is_caught(tmp_path):
    for f in fixture_dir().glob("*.fix"):
        shutil.copy(f, tmp_path / f.name)
    path = tmp_path / "X4.fix"
    text = path.read_text()
    assert "+z*w^3\n" in text
    path.write_text(text.replace("+z*w^3\n", "-z*w^3\n", 1))
    reps = reproduce_all(tmp_path, only=["08-symbolic-constructions", "09-finite-field-checks"])
    assert [r.status for r in reps] == ["fail", "fail"]


def test_broken_claim_does_not_stop_run(tmp_path):
    for f in fixture_dir().glob("*.fix"):
        if f.stem != "X2":
            shutil.copy(f, tmp_path / f.name)
    reps = reproduce_all(tmp_path, only=["12-zeta-roundtrip", "13-compare-reductions"])
    assert reps[0].status == "pass"
    assert reps[1].status == "fail" and "FixtureError" in reps[1].reason
