"""Testing command line behavior"""

import json

import pandas as pd
import pytest

from cmkdv.cli import main


def run(capsys, *argv) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else {}


def test_classify(capsys):
    code, report = run(capsys, "classify", "--alpha", "1+2i", "--beta", "-1+2i")
    assert code == 0
    assert report["command"] == "classify"
    assert report["result"]["sigma"] == "1/2"
    assert report["case_flags"]["peakon_case"]["value"] is True
    assert report["config"]["coefficients"]["alpha2"] == "2/1"


def test_signed_coefficients(capsys):
    _, attached = run(capsys, "classify", "--alpha=1+2i", "--beta=-1+2i")
    _, spaced = run(capsys, "classify", "--alpha", "-1-2i", "--beta", "-i")
    assert attached["config"]["coefficients"]["beta1"] == "-1/1"
    assert attached["result"]["sigma"] == "1/2"
    assert spaced["config"]["coefficients"]["alpha1"] == "-1/1"
    assert spaced["config"]["coefficients"]["beta2"] == "-1/1"


def test_unparsable_coefficient(capsys):
    with pytest.raises(SystemExit) as error:
        main(["classify", "--alpha", "two"])
    assert error.value.code == 2
    assert "invalid coefficient" in capsys.readouterr().err


def test_classify_without_sigma(capsys):
    code, report = run(capsys, "classify", "--alpha", "2", "--beta", "1")
    assert code == 0
    assert "Sigma" in report["result"]["sigma"]


def test_gamma_is_normalized(capsys):
    code, report = run(capsys, "classify", "--alpha", "1", "--gamma", "4")
    assert code == 0
    assert report["input"]["scale"]["x_scale"] == 2.0


def test_invalid_gamma(capsys):
    assert main(["classify", "--alpha", "1", "--gamma", "-1"]) == 2
    assert "InvalidCoefficients" in capsys.readouterr().err


def test_missing_family(capsys):
    assert main(["residual", "--alpha", "1"]) == 2


def test_verify_symbolic(capsys):
    code, report = run(capsys, "verify-symbolic", "--alpha", "1", "--beta", "0", "--scope", "multipliers")
    assert code == 0
    assert report["result"]["passed"] is True
    ids = [item["id"] for item in report["result"]["entries"]]
    assert ids == ["M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8"]


def test_residual(capsys):
    argv = ["residual", "--alpha", "2", "--beta", "1", "--family", "Sech", "--c", "1"]
    code, report = run(capsys, *argv)
    assert code == 0
    assert report["result"]["points"] == 100
    assert report["result"]["max_abs"] < 1e-9


def test_peakon_residual(capsys):
    argv = ["residual", "--alpha", "1+2i", "--beta", "-1+2i", "--family", "Peakon", "--c", "-1"]
    code, report = run(capsys, *argv)
    assert code == 0
    assert report["result"]["passed"] is True


def test_invalid_solution(capsys):
    assert main(["eval", "--alpha", "1", "--family", "Sech", "--c", "-1"]) == 2


def test_eval(capsys):
    argv = ["eval", "--alpha", "2", "--beta", "1", "--family", "Sech", "--c", "2", "--x", "0", "--order", "1"]
    code, report = run(capsys, *argv)
    assert code == 0
    value, slope = report["result"]["jets"][0]
    assert value["re"] == pytest.approx(2.0, rel=1e-12)
    assert value["im"] == pytest.approx(0.0, abs=1e-12)
    assert slope["re"] == pytest.approx(0.0, abs=1e-12)


def test_sample_csv(tmp_path, capsys):
    argv = ["sample", "--alpha", "2", "--beta", "1", "--family", "Sech", "--c", "1", "--N", "64", "--L", "10"]
    code = main([*argv, "--format", "csv", "--out", str(tmp_path)])
    assert code == 0
    frame = pd.read_csv(tmp_path / "sample.csv")
    assert list(frame.columns) == ["x", "re_u", "im_u", "abs_u", "arg_u"]
    assert len(frame) == 64
    assert (tmp_path / "sample.json").exists()


def test_quantities(capsys):
    argv = ["quantities", "--alpha", "2", "--beta", "1", "--family", "Sech", "--c", "1"]
    code, report = run(capsys, *argv)
    assert code == 0
    rows = {row["quantity"]: row for row in report["result"]}
    assert rows["P"]["ratio"] == pytest.approx(1.0, rel=1e-10)


def test_evolve_writes_trajectory(tmp_path):
    argv = ["evolve", "--alpha", "2", "--beta", "1", "--family", "Sech", "--c", "1", "--N", "256", "--L", "20"]
    code = main([*argv, "--dt", "1e-3", "--t-end", "0.05", "--record-every", "25", "--out", str(tmp_path)])
    assert code == 0
    report = json.loads((tmp_path / "evolve.json").read_text())
    assert report["result"]["times"] == pytest.approx([0.0, 0.025, 0.05])
    assert {"P", "E", "G"} <= set(report["result"]["drift"])
    manifest = json.loads((tmp_path / "trajectory" / "manifest.json").read_text())
    assert len(manifest["snapshots"]) == 3


def test_deterministic_output(capsys):
    argv = ["quantities", "--alpha", "2", "--beta", "1", "--family", "Sech", "--c", "1", "--N", "256", "--L", "20"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
