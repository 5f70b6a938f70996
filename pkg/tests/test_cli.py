import json

import pytest

from painleve_lab.cli import ascii_text, main, parse_complex, read_config

P5 = ["--eq", "p5", "--theta", "0.3,0.4,0.35"]
P6 = ["--eq", "p6", "--alpha", "0.2,0.3,_,0.25,0.1", "--complete"]


def run(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def checks(run_record):
    return {c["name"]: c for c in run_record["checks"]}


def test_parse_complex_forms():
    assert parse_complex("0.3+0.7i") == 0.3 + 0.7j
    assert parse_complex("1/3") == pytest.approx(1 / 3)
    assert parse_complex("-2j") == -2j


def test_ascii_text():
    assert ascii_text("α₄−α₀ ∈ ℤ") == "alpha4-alpha0 in Z"
    assert ascii_text("θ∞") == "theta_inf"


def test_series_p5(capsys):
    code, rep, _ = run(capsys, "series", *P5, "--id", "I", "--order", "10")
    assert code == 0 and rep["schema"] == 1 and rep["passed"]
    r = rep["runs"][0]
    assert checks(r)["residual"]["passed"]
    y0 = r["series"]["y"]["coeffs"][0]
    assert abs(y0["re"] + 1.8) < 1e-12 and y0["im"] == 0


def test_series_p1_leading_terms(capsys):
    code, rep, _ = run(capsys, "series", "--eq", "p1", "--id", "sym1", "--order", "12")
    assert code == 0
    y = rep["runs"][0]["series"]["y"]
    assert y["leading_exponent"] == 3
    assert abs(y["coeffs"][0]["re"] - 1 / 6) < 1e-14
    assert abs(y["coeffs"][5]["re"] - 1 / 336) < 1e-14


def test_existence_failure_reports_condition(capsys):
    code, rep, _ = run(capsys, "series", "--eq", "p6", "--id", "0-I",
                       "--alpha", "0.2,0.3,_,0.25,0.2", "--complete")
    assert code == 1 and not rep["passed"]
    err = rep["runs"][0]["error"]
    assert err["type"] == "ExistenceError"
    assert err["condition"] == "α₄−α₀ ∈ ℤ" and err["condition_ascii"] == "alpha4-alpha0 in Z"


def test_draws_are_seeded(capsys):
    a = run(capsys, "series", "--eq", "p6", "--id", "0-I", "--draws", "3", "--seed", "5")
    b = run(capsys, "series", "--eq", "p6", "--id", "0-I", "--draws", "3", "--seed", "5")
    assert a[0] == 0 and len(a[1]["runs"]) == 3
    assert a[2] == b[2]


def test_backlund_series(capsys):
    code, rep, _ = run(capsys, "backlund", *P5, "--word", "s1", "--apply-to", "I")
    r = rep["runs"][0]
    assert code == 0 and r["target"] == "P5_II" and r["path"] == ["P5_I", "P5_II"]
    assert checks(r)["coefficient_match"]["value"] < 1e-9


def test_backlund_empty_word_echoes_input(capsys):
    code, rep, _ = run(capsys, "backlund", *P5, "--word", "", "--apply-to", "I")
    r = rep["runs"][0]
    assert code == 0 and r["target"] == "P5_I" and r["checks"] == []


def test_backlund_relations(capsys):
    code, rep, _ = run(capsys, "backlund", "--eq", "p6", "--verify-relations", "--samples", "20")
    assert code == 0 and rep["passed"]


def test_monodromy_compare(capsys):
    code, rep, _ = run(capsys, "monodromy", *P6, "--id", "0-I", "--t", "0.1",
                       "--compare", "closed-form")
    c = checks(rep["runs"][0])
    assert code == 0
    assert c["cyclic_numeric"]["value"] < 1e-7
    assert all(v["value"] < 1e-6 for k, v in c.items() if k.startswith("delta_"))


def test_monodromy_p5_minus1_formulas(capsys):
    code, rep, _ = run(capsys, "monodromy", "--eq", "p5", "--id", "rational-minus1",
                       "--theta-inf", "0.35")
    assert code == 0
    assert "exp(i pi theta_inf)" in json.dumps(rep)


def test_monodromy_p4_cyclic(capsys):
    code, rep, _ = run(capsys, "monodromy", "--eq", "p4", "--id", "sym", "--theta", "0.2,0.3",
                       "--verify-cyclic")
    assert code == 0 and checks(rep["runs"][0])["cyclic"]["value"] < 1e-10


def test_lax_residual(capsys):
    code, rep, _ = run(capsys, "lax-residual", *P6, "--id", "0-I", "--t", "0.1")
    assert code == 0 and rep["passed"]


def test_catalog(capsys):
    code, rep, out = run(capsys, "catalog", "--eq", "p5")
    assert code == 0 and "P5_I" in out and "s1" in out


def test_verify_subset(capsys):
    code, rep, _ = run(capsys, "verify", "--criteria", "11")
    assert code == 0 and rep["passed"]
    assert rep["lines"][0].startswith("[PASS] criterion 11")


def test_json_is_deterministic(capsys):
    argv = ["monodromy", *P6, "--id", "0-I", "--t", "0.1"]
    assert run(capsys, *argv)[2] == run(capsys, *argv)[2]


def test_csv_and_pretty(capsys):
    assert main(["series", *P5, "--id", "I", "--order", "4", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "key,value" and "schema,1" in out
    assert main(["series", *P5, "--id", "I", "--order", "4"]) == 0
    assert "residual" in capsys.readouterr().out


def test_unknown_equation_exit_code(capsys):
    assert main(["series", "--eq", "p9", "--id", "I"]) == 1


def test_bad_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["series", "--no-such-flag"])
    assert exc.value.code == 2


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# p5 series\neq = p5\nid = \"I\"\ntheta = [0.3, 0.4, 0.35]\norder = 6\n")
    assert read_config(cfg) == {"eq": "p5", "id": "I", "theta": "0.3,0.4,0.35", "order": "6"}
    code, rep, _ = run(capsys, "series", "--config", str(cfg))
    assert code == 0 and rep["inputs"]["order"] == 6
    code, rep, _ = run(capsys, "series", "--config", str(cfg), "--order", "8")
    assert rep["inputs"]["order"] == 8


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit) as exc:
        main(["series", "--config", str(cfg)])
    assert exc.value.code == 2
