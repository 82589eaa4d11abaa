import csv
import io
import json

import pytest

from torsionlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_alex_outputs(capsys):
    code, out, _ = run(capsys, "alex", "--knot", "trefoil", "--reproducible")
    assert code == 0 and json.loads(out)["coefficients"] == [1, -1, 1]
    code, out, _ = run(capsys, "alex", "--braid", "strands=3; s1 s2^-1 s1 s2^-1", "--reproducible")
    data = json.loads(out)
    assert data["coefficients"] == [1, -3, 1] and data["symmetric"] and data["span"] == 2
    code, out, _ = run(capsys, "alex", "--braid", "strands=2;", "--reproducible")
    assert code == 0 and json.loads(out)["coefficients"] == [1]


def test_alex_from_file(tmp_path, capsys):
    f = tmp_path / "k.txt"
    f.write_text("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]\n", encoding="utf-8")
    code, out, _ = run(capsys, "alex", "--file", str(f), "--reproducible")
    assert code == 0 and json.loads(out)["coefficients"] == [1, -1, 1]


def test_torsion_csv(capsys):
    code, out, _ = run(capsys, "torsion", "--knot", "trefoil", "--t", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["t", "value", "backend", "normalization"]
    assert rows[1] == ["2", "2", "roots", "canonical"]


def test_torus_rows(capsys):
    code, out, _ = run(capsys, "torsion", "--torus", "1,0", "--t", "0.5,2,5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [float(r["value"]) for r in rows] == pytest.approx([1.0] * 3, abs=1e-9)


def test_both_backends_report_offset(capsys):
    code, out, _ = run(capsys, "torsion", "--knot", "figure-eight", "--t", "0.5,2,3",
                       "--backend", "both", "--reproducible")
    data = json.loads(out)
    assert code == 0 and data["offset_m"] == 0 and len(data["rows"]) == 6


@pytest.mark.parametrize("argv, code", [
    (["torsion", "--knot", "trefoil", "--t", "0,2"], 2),
    (["torsion", "--knot", "trefoil", "--braid", "s1"], 2),
    (["torsion", "--knot", "nosuchknot"], 2),
    (["torsion", "--knot", "trefoil", "--quad-nodes", "20"], 2),
    (["symmetry", "--knot", "trefoil", "--t", "2,3"], 2),
    (["alex", "--braid", "strands=2; s3"], 3),
    (["alex", "--pd", "PD[X[1,2]"], 3),
    (["alex", "--braid", "strands=2; s1 s1"], 3),
    (["symmetry", "--braid", "strands=1;"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_usage_error_from_argparse(capsys):
    with pytest.raises(SystemExit) as err:
        main(["torsion", "--backend", "bogus"])
    assert err.value.code == 2


def test_nonconvergence_exit_code(capsys, monkeypatch):
    import torsionlab.alexl2 as alexl2
    from torsionlab.fkdet import FkConvergenceError

    def stuck(*args, **kwargs):
        raise FkConvergenceError("did not settle", (1.0, 1.1))

    monkeypatch.setattr(alexl2, "torsion", stuck)
    code, out, err = run(capsys, "torsion", "--knot", "figure-eight", "--backend", "quadrature",
                         "--t", "2", "--reproducible")
    assert code == 4
    assert json.loads(out)["rows"][0]["nonconverged"] is True


def test_symmetry_reports(capsys):
    code, out, _ = run(capsys, "symmetry", "--knot", "trefoil", "--reproducible")
    data = json.loads(out)
    assert code == 0 and data["n"] == -1 and data["parity"] == "odd" and data["status"] == "PASS"
    code, out, _ = run(capsys, "symmetry", "--knot", "trefoil", "--real-scale", "0.5",
                       "--reproducible")
    data = json.loads(out)
    assert data["fitted_n"] == pytest.approx(-0.5) and data["integral"] is False
    assert data["integrality_residual"] is None and data["status"] == "PASS"


def test_reproducible_json_is_byte_identical(capsys):
    argv = ("torsion", "--knot", "trefoil", "--t", "0.5,2", "--backend", "both", "--reproducible")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    _, out, _ = run(capsys, "torsion", "--knot", "trefoil", "--t", "2")
    assert "timestamp" in json.loads(out)


def test_verify_suites(capsys, monkeypatch):
    code, out, err = run(capsys, "verify", "--suite", "duality", "--cases", "200", "--reproducible")
    data = json.loads(out)
    items = data["suites"][0]["items"]
    assert code == 0 and items["scalar"] == {"passed": 200, "total": 200}
    assert "duality/scalar: 200/200 PASS" in err
    monkeypatch.setenv("TORSIONLAB_SEED", "41")
    code, out, _ = run(capsys, "verify", "--suite", "torus", "--reproducible")
    assert code == 0 and json.loads(out)["seed"] == 41


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "alex", "--knot", "figure-eight", "--output", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["coefficients"] == [1, -3, 1]
