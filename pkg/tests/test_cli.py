import json
from pathlib import Path

import pytest
from ffhyper import IdentityReport, Witness
from ffhyper.cli import main
from pytest_mock import MockerFixture


def test_field_info(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["field-info", "--field", "3^2"]) == 0
    dump = json.loads(capsys.readouterr().out)
    assert dump["q"] == 9
    assert dump["modulus"] == [1, 0, 1]
    assert dump["generator"] == [1, 1]


def test_field_info_pretty(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["field-info", "--field", "5", "--format", "pretty"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("F_5 = F_5[x]")
    assert lines[1:] == [
        "g^0 = [1], index 1, trace 1",
        "g^1 = [2], index 2, trace 2",
        "g^2 = [4], index 3, trace 4",
        "g^3 = [3], index 4, trace 3",
    ]


def test_eval_2f1_at_zero_is_exact_zero(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["eval", "2f1", "--field", "13", "--a", "1", "--b", "2", "--c", "3", "--x", "0"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["text"] == "0"
    assert record["backend"] == "exact"
    assert record["value"]["m"] == 156
    assert set(record["value"]["coeffs"]) == {"0/1"}
    assert record["parameters"] == {"a": "chi1", "b": "chi2", "c": "chi4", "x": "0"}


def test_eval_pretty(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["eval", "jacobi", "--field", "13", "--a", "eps", "--b", "eps", "--format", "pretty"]) == 0
    assert capsys.readouterr().out == "jacobi(a=eps, b=eps) over F_13 = 11\n"


def test_eval_gauss_of_trivial_character_csv(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["eval", "gauss", "--field", "5", "--a", "0", "--format", "csv"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header == "quantity,field,backend,parameters,re,im"
    assert row.startswith("gauss,5,exact,a=eps,")
    assert float(row.split(",")[4]) == pytest.approx(-1)


def test_eval_fstar_forms_agree(capsys: pytest.CaptureFixture[str]) -> None:
    common = ["eval", "fstar", "--field", "13", "--c", "2", "--d", "phi", "--x", "g^5"]
    assert main([*common, "--form", "char"]) == 0
    char_form = json.loads(capsys.readouterr().out)
    assert main([*common, "--form", "point"]) == 0
    point_form = json.loads(capsys.readouterr().out)
    assert char_form["value"] == point_form["value"]
    assert char_form["parameters"]["x"] == "g^5"


def test_eval_float(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["eval", "binomial", "--field", "13", "--a", "eps", "--b", "eps", "--float"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["backend"] == "float"
    assert record["value"]["re"] == pytest.approx(11 / 13)
    assert record["value"]["im"] == pytest.approx(0, abs=1e-12)


def test_even_characteristic_is_a_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["eval", "gauss", "--field", "4", "--a", "1"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "gauss", "--field", "13"],
        ["eval", "gauss", "--field", "13", "--a", "psi"],
        ["eval", "2f1", "--field", "7", "--a", "1", "--b", "1", "--c", "chi4", "--x", "1"],
        ["eval", "2f1", "--field", "7", "--a", "1", "--b", "1", "--c", "1", "--x", "g^x"],
        ["verify", "--identity", "thm2"],
        ["verify", "--all", "--jobs", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv: list[str]) -> None:
    assert main(argv) == 2


def test_verify_single_identity(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    report_path = tmp_path / "report.json"
    argv = ["verify", "--identity", "thm2", "--field", "5", "--no-timing", "--report", str(report_path)]
    assert main(argv) == 0
    out = capsys.readouterr().out
    reports = json.loads(out)
    assert report_path.read_text() == out
    assert len(reports) == 1
    assert reports[0]["identity"] == "thm2"
    assert reports[0]["failed"] == 0
    assert "millis" not in reports[0]


def test_verify_is_deterministic_across_jobs(capsys: pytest.CaptureFixture[str]) -> None:
    base = ["verify", "--identity", "lemma1", "--field", "13", "--no-timing"]
    assert main([*base, "--jobs", "1"]) == 0
    single = capsys.readouterr().out
    assert main([*base, "--jobs", "2"]) == 0
    assert capsys.readouterr().out == single


def test_verify_thm3_variant(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["verify", "--identity", "thm3", "--field", "13", "--quartic", "chi4bar", "--no-timing"]) == 0
    (report,) = json.loads(capsys.readouterr().out)
    assert report["variant"] == "chi4bar"


def test_verify_stanton(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["verify", "--identity", "stanton", "--n-max", "3"]) == 0
    (report,) = json.loads(capsys.readouterr().out)
    assert report["tested"] == 4
    assert report["field"] is None


def test_verify_all(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["verify", "--all", "--fields", "5,9", "--backend", "exact", "--n-max", "2", "--no-timing"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert len(reports) == 2 * 9 + 1
    assert all(r["failed"] == 0 for r in reports)


def test_verify_failure_exit_code(mocker: MockerFixture, capsys: pytest.CaptureFixture[str]) -> None:
    failing = IdentityReport(identity="thm2", field="5", backend="exact")
    failing.record_failure(
        Witness(key=(1, 1, 2), parameters={"A": "chi1"}, lhs={}, rhs={}, difference={})
    )
    mocker.patch("ffhyper.cli.run_sweep", return_value=failing)

    assert main(["verify", "--identity", "thm2", "--field", "5"]) == 1
    (report,) = json.loads(capsys.readouterr().out)
    assert report["failed"] == 1


def test_unwritable_report_is_a_usage_error(tmp_path: Path, caplog: pytest.LogCaptureFixture) -> None:
    report_path = tmp_path / "missing" / "report.json"
    argv = ["verify", "--identity", "hasse_davenport", "--field", "5", "--report", str(report_path)]

    assert main(argv) == 2
    assert not report_path.exists()
    assert "Cannot write reports to" in caplog.text
