import json

import pytest

from symqec.algebra import Scalar, as_coeff, sym
from symqec.cli import UsageError, main, parse_coeff
from symqec.ecc import BITFLIP_DECODE, CODES, CodePipeline
from symqec.verify import verify_all


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text, expected", [
    ("1", as_coeff(1)),
    ("-1/2", as_coeff(Scalar("-1/2"))),
    ("1+2i", as_coeff(Scalar(1, 2))),
    ("-i", as_coeff(Scalar(0, -1))),
    ("1/2i", as_coeff(Scalar(0, "1/2"))),
    ("α", sym("α")),
    ("a8", sym("a8")),
])
def test_parse_coeff(text, expected):
    assert parse_coeff(text) == expected


@pytest.mark.parametrize("bad", ["", "1+", "2x y", "3a", "i+1"])
def test_parse_coeff_rejects(bad):
    with pytest.raises(UsageError):
        parse_coeff(bad)


def test_repro_command_default(capsys):
    code, out, _ = run(capsys, "paper-repro")
    assert code == 0
    assert "ψ5 = (a8+b8+c8−i·d8)·(α·e[0] + β·e[1])" in out
    assert out.rstrip().endswith("match: yes")


def test_repro_command_standard_y_and_position(capsys):
    code, out, _ = run(capsys, "paper-repro", "--y", "standard")
    assert code == 0 and "a8+b8+c8+i·d8" in out
    code, out, _ = run(capsys, "paper-repro", "--error-pos", "3")
    assert code == 0 and "a3+b3+c3−i·d3" in out


def test_repro_command_json(capsys):
    code, out, _ = run(capsys, "paper-repro", "--format", "json", "-v")
    report = json.loads(out)
    assert code == 0 and report["match"] is True
    assert report["factor"] == "a8+b8+c8−i·d8"
    assert list(report["stages"]) == ["ψ0", "ψ1", "ψ2", "ψ3", "ψ4", "ψ5"]


def test_repro_command_bad_position(capsys):
    code, _, err = run(capsys, "paper-repro", "--error-pos", "10")
    assert code == 2 and "1..9" in err


def test_pipeline_text_and_json(capsys):
    code, out, _ = run(capsys, "pipeline", "--error-pos", "4", "--coeffs", "0,1,0,0")
    assert code == 0
    assert "ψ5 = α·e[0] + β·e[1]" in out and "phase_equivalent to ψ0: yes" in out
    code, out, _ = run(capsys, "pipeline", "--code", "bitflip3", "--error-pos", "1",
                       "--coeffs", "0,0,1,0", "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["phase_equivalent"] is False and report["factor"] is None


def test_pipeline_custom_data_and_verbose(capsys):
    code, out, _ = run(capsys, "pipeline", "--alpha", "1/2", "--beta=-1/2i", "-v")
    assert code == 0
    assert out.startswith("ψ0 = (1/2)·e[0] − (1/2)i·e[1]")
    assert "ψ1 = " in out and "ψ4 = " in out


def test_pipeline_usage_errors(capsys):
    assert run(capsys, "pipeline", "--error-pos", "10")[0] == 2
    assert run(capsys, "pipeline", "--error-pos", "1", "--coeffs", "1,0")[0] == 2
    assert run(capsys, "pipeline", "--alpha", "1+")[0] == 2


def test_run_circuit(tmp_path, capsys):
    path = tmp_path / "bell.qc"
    path.write_text("# Bell pair\nH 1\nCN 2 1\n", encoding="utf-8")
    code, out, _ = run(capsys, "run-circuit", str(path))
    assert code == 0 and out.strip() == "(1/2)√2·e[0,0] + (1/2)√2·e[1,1]"
    code, out, _ = run(capsys, "run-circuit", str(path), "--init", "psi", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["gates"] == 2 and report["output"]["n"] == 2
    code, out, _ = run(capsys, "run-circuit", str(path), "--qubits", "3", "--init", "100")
    assert code == 0 and out.strip() == "(1/2)√2·e[0,0,0] − (1/2)√2·e[1,1,0]"


def test_run_circuit_errors(tmp_path, capsys):
    path = tmp_path / "bad.qc"
    path.write_text("H 1\nX 2\nCN 3 3\n", encoding="utf-8")
    code, _, err = run(capsys, "run-circuit", str(path))
    assert code == 2 and f"{path}:line 3, column 6:" in err
    good = tmp_path / "good.qc"
    good.write_text("X 2\n", encoding="utf-8")
    assert run(capsys, "run-circuit", str(good), "--qubits", "1")[0] == 2
    assert run(capsys, "run-circuit", str(good), "--init", "0")[0] == 2
    assert run(capsys, "run-circuit", str(tmp_path / "missing.qc"))[0] == 2


def test_argparse_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_verify_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--seed", "3", "--cases", "10")
    code2, out2, _ = run(capsys, "verify", "--seed", "3", "--cases", "10")
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["seed"] == 3 and report["suites"]["differential"]["cases"] == 10


def test_verify_negative_control_names_first_failure():
    shor = CODES["shor9"]
    # Swapping the two decoder layers breaks the decoder.
    half = len(shor.decode) // 2
    ops = list(shor.decode)
    bad = CodePipeline("shor9-swapped", 9, shor.encode,
                       type(shor.decode)(ops[half:] + ops[:half]))
    report = verify_all(seed=0, cases=2, shor=bad)
    suite = report["suites"]["shor9_pauli"]
    assert report["pass"] is False and suite["pass"] is False
    first = suite["first_failure"]
    assert isinstance(first["position"], int) and first["pauli"] in {"I", "X", "Z", "Y", "Ypaper"}
    bad2 = CodePipeline("shor9-extra", 9, shor.encode, shor.decode + BITFLIP_DECODE)
    first2 = verify_all(seed=0, cases=2, shor=bad2)["suites"]["shor9_pauli"]["first_failure"]
    assert (first2["position"], first2["pauli"]) == (1, "I")
