import json

import pytest

from tilecoh import cli
from tilecoh.limit import LimitGroup
from tilecoh.verify import run_checks


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == cli.INPUT_ERROR


def test_missing_system_file(capsys, tmp_path):
    code, _, err = run(capsys, "complex", "--system", str(tmp_path / "nope.json"))
    assert code == cli.INPUT_ERROR and "not found" in err


def test_malformed_system_names_field(capsys, tmp_path):
    f = tmp_path / "sys.json"
    f.write_text(json.dumps({"inflation": "2", "prototiles": [{"id": "S"}], "rules": {}}))
    code, _, err = run(capsys, "complex", "--system", str(f))
    assert code == cli.INPUT_ERROR and "prototiles[0].vertices" in err


def test_invalid_json(capsys, tmp_path):
    f = tmp_path / "sys.json"
    f.write_text("{")
    assert run(capsys, "collar", "--system", str(f))[0] == cli.INPUT_ERROR


def test_bad_power(capsys):
    assert run(capsys, "complex", "--system", "square", "--power", "0")[0] == cli.INPUT_ERROR


def test_computation_error(capsys):
    code, _, err = run(capsys, "hull", "--system", "square")
    assert code == cli.COMPUTE_ERROR and "singularity" in err


def test_system_file_roundtrip(capsys, tmp_path):
    from tilecoh.tiling import square_system
    f = tmp_path / "square.json"
    f.write_text(square_system().dumps())
    code, out, _ = run(capsys, "complex", "--system", str(f))
    assert code == cli.OK
    d = json.loads(out)
    assert (d["vertices"], d["edges"], d["faces"]) == (1, 2, 1)


def test_render_triangle(capsys, tmp_path):
    out = tmp_path / "p.svg"
    code, _, _ = run(capsys, "render", "--system", "triangle", "--level", "3", "--out", str(out))
    assert code == cli.OK
    assert out.read_text().count("<polygon") == 125


def test_render_unknown_prototile(capsys):
    assert run(capsys, "render", "--system", "triangle", "--prototile", "X")[0] == cli.INPUT_ERROR


def test_cohomology_json_and_csv(capsys):
    code, out, _ = run(capsys, "cohomology", "--system", "square")
    assert code == cli.OK
    d = json.loads(out)
    assert [d[f"H{i}"]["free_rank"] for i in range(3)] == [1, 2, 1]
    code, out, _ = run(capsys, "cohomology", "--system", "square", "--format", "csv")
    assert out.splitlines()[0] == "key,value" and "H1.group,Z^2" in out


def test_limit_json_roundtrip(capsys):
    code, out, _ = run(capsys, "limit", "--system", "square")
    d = json.loads(out)
    g = LimitGroup.from_json(d["H1"]["limit"])
    assert g == LimitGroup([(2, 2)])
    assert LimitGroup.from_json(g.to_json()) == g


def test_export_matrices_csv_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "export-matrices", "--system", "square", "--format", "csv",
                     "--out", str(tmp_path / "m"))
    assert code == cli.OK
    assert (tmp_path / "m" / "A2.csv").read_text().strip() == "4"


def test_collar_kr(capsys):
    code, out, _ = run(capsys, "collar")
    assert code == cli.OK
    tiles = json.loads(out)
    assert len(tiles) == 83
    assert sum(t["base"] == "K" for t in tiles) == 31


def _rows(path):
    d = json.loads(path.read_text())
    assert "timing" in d
    return d["checks"], d["passed"]


@pytest.mark.slow
def test_verify_paper_is_deterministic(capsys, tmp_path, kr, ref):
    code, out, _ = run(capsys, "verify-paper", "--out", str(tmp_path / "a.json"))
    rows, passed = _rows(tmp_path / "a.json")
    # an independent in-process run gives the same table
    assert rows == [r.to_json() for r in run_checks(kr, ref)]
    assert code == (cli.OK if passed else cli.VERIFY_FAILED)
    for r in rows:
        assert f"{r['criterion']:>2}  {'PASS' if r['passed'] else 'FAIL'}" in out


@pytest.mark.slow
def test_verify_paper_with_reference_generators(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-paper", "--paper-generators",
                       "--out", str(tmp_path / "b.json"))
    rows, passed = _rows(tmp_path / "b.json")
    assert passed and code == cli.OK
    assert json.loads((tmp_path / "b.json").read_text())["mode"] == "reference generators"
