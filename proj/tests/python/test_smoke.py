import pytest

import qcas


def test_preset_catalog():
    names = qcas.preset_names()
    assert "P2" in names
    assert "toric-ex2" in names
    assert "G25" in names


def test_preset_definition_text():
    text = qcas.preset_definition("P2")
    assert "algebra P2 dimension 2" in text
    assert "product h * h = h2" in text
    sym = qcas.preset_definition("Sym2P2", {"int_h4": 3, "int_c2": 6})
    assert "algebra Sym2P2 dimension 4" in sym


def test_unknown_preset_raises():
    with pytest.raises(ValueError):
        qcas.preset_definition("nope")


def test_counting_formulas():
    assert qcas.count_formulas(5) == ("21", "20")
    assert qcas.brute_count(5) == ("21", "20")
    assert qcas.count_formulas(3) == ("1", "1")


def test_solve_verify_pipeline(tmp_path):
    deffile = tmp_path / "p2.qc"
    deffile.write_text(qcas.preset_definition("P2"))
    table = tmp_path / "table.json"

    code, out, err = qcas.run(
        ["solve", str(deffile), "--bound", "5", "--pin", "N(1;2)=1", "--out", str(table)]
    )
    assert code == 0, err
    assert "status: complete" in out

    code, out, err = qcas.run(["verify", str(deffile), "--table", str(table), "--bound", "5"])
    assert code == 0
    assert out.startswith("OK")

    # the reconstructed values equal the independent recursion
    text = table.read_text()
    for value in qcas.oracle(5):
        assert f'"value":"{value}"' in text


def test_usage_errors_exit_64():
    code, out, err = qcas.run(["count"])
    assert code == 64
    assert "error (usage)" in err


def test_run_checked_wrapper():
    out = qcas.run_checked(["count", "--rank", "4"])
    assert "relations up to sign (formula): 6" in out
    with pytest.raises(RuntimeError):
        qcas.run_checked(["count"])
