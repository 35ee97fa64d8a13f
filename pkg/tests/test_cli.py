import sys

import orjson
import pytest
from pydantic import TypeAdapter

from fermat_first_case.cli import run
from fermat_first_case.criteria import (
    AssertedHypothesis,
    Condition1Report,
    Condition1Verdict,
    CriterionOutcome,
    FieldHypothesis,
    PureFieldHypothesis,
    PureFieldRow,
    QuadraticHypothesis,
    Theorem1SearchReport,
    TotallyRamifiedHypothesis,
    condition1_check,
    corollary2_check,
    pure_field_family,
    theorem1_search_report,
    theorem2_check,
)
from fermat_first_case.output import Emitter, OutputFormat, to_json
from fermat_first_case.quad_field import FieldSummary, describe, make_field
from fermat_first_case.survey import CensusTotals, QiScanResult, SurveyRecord, TableRow
from fermat_first_case.wendt import WendtEvaluation, evaluate

GOLDEN_TABLE_CSV = (
    "p,n\n3,4\n5,8\n7,4\n11,8\n13,4\n17,8\n19,40\n23,20\n29,8\n31,76\n37,4\n41,20\n"
    "43,4\n47,20\n53,20\n59,20\n61,16\n67,4\n71,8\n73,4\n79,4\n83,32\n89,44\n97,4\n"
)


def test_golden_table_csv(capsys):
    assert run(["--format", "csv", "survey", "table", "--pmax", "100"]) == 0
    assert capsys.readouterr().out == GOLDEN_TABLE_CSV


@pytest.mark.parametrize("d_args", [["--d", "-1"], ["--d=-1"]])
def test_theorem1_search_json(capsys, d_args):
    assert run(["--format", "json", "theorem1", *d_args, "--p", "19"]) == 0
    payload = orjson.loads(capsys.readouterr().out)
    assert payload["witness"] == {"p": 19, "n": 40, "q": 761}
    assert payload["exhausted"] is False
    assert payload["reason"] == "established"


def test_theorem1_search_stops_on_class_number(capsys):
    assert run(["--format", "json", "theorem1", "--d", "-23", "--p", "3"]) == 0
    payload = orjson.loads(capsys.readouterr().out)
    assert payload["exhausted"] is False
    assert payload["reason"] == "class_number_divisible"
    assert payload["witness"] is None


def test_theorem1_search_csv_reason_column(capsys):
    assert run(["--format", "csv", "theorem1", "--d", "-23", "--p", "3"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header == "d,p,n_cap,exhausted,reason,n,q"
    assert row.split(",")[3:] == ["false", "class_number_divisible", "", ""]


def test_theorem1_single_exponent(capsys):
    assert run(["--format", "json", "theorem1", "--d", "-1", "--p", "5", "--n", "4"]) == 0
    payload = orjson.loads(capsys.readouterr().out)
    assert payload["status"] == "NotEstablished"
    assert payload["reason"] == "q_not_prime"


def test_condition1_json(capsys):
    assert run(["--format", "json", "condition1", "--p", "149"]) == 0
    assert orjson.loads(capsys.readouterr().out) == {"p": 149, "holds": True}


def test_condition1_witnesses_csv(capsys):
    assert run(["--format", "csv", "condition1", "--p", "7", "--witnesses"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header == "p,holds,witnesses"
    assert row.startswith("7,false,2")


def test_wendt_human(capsys):
    assert run(["wendt", "2"]) == 0
    assert capsys.readouterr().out == "-3\n"


def test_wendt_json_writes_value_as_string(capsys):
    assert run(["--format", "json", "wendt", "3"]) == 0
    assert orjson.loads(capsys.readouterr().out)["value"] == "28"


def test_wendt_modular(capsys):
    assert run(["--format", "csv", "wendt", "10", "--mod", "31"]) == 0
    assert capsys.readouterr().out == "n,value,modulus,residue,divisible\n10,,31,0,true\n"


def test_class_number_with_negative_positional(capsys):
    assert run(["class-number", "-5"]) == 0
    assert capsys.readouterr().out == "d=-5 discriminant=-20 class_number=2\n"


def test_not_established_exits_zero(capsys):
    assert run(["--format", "json", "germain", "--d", "-1", "--p", "5"]) == 0
    assert orjson.loads(capsys.readouterr().out)["status"] == "NotEstablished"


def test_theorem2_pure_field(capsys):
    assert run(["--format", "json", "theorem2", "--p", "5", "--pure", "3,7"]) == 0
    payload = orjson.loads(capsys.readouterr().out)
    assert payload["status"] == "Established"
    assert payload["case"] == "Unramified"


def test_theorem2_pure_field_with_square_radicand(capsys):
    assert run(["--format", "json", "theorem2", "--p", "17", "--pure", "4,5"]) == 0
    payload = orjson.loads(capsys.readouterr().out)
    assert payload["status"] == "Established"
    assert payload["case"] == "Unramified"


def test_survey_census_totals_last(capsys):
    assert run(["--quiet", "--format", "json", "survey", "census", "--bound", "150"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 19
    assert orjson.loads(lines[-1]) == {"bound": 150, "candidates": 18, "holds": 16, "percentage": 88.89}


def test_survey_qi_csv_blocks(capsys):
    assert run(["--format", "csv", "survey", "qi", "--pmax", "20"]) == 0
    out = capsys.readouterr().out
    records, totals = out.split("\n\n")
    assert records.splitlines()[0] == "p,verdict,n,ms"
    assert len(records.splitlines()) == 8
    assert totals == "p_bound,scanned,failures\n20,7,\n"


def test_survey_pure(capsys):
    assert run(["--format", "csv", "survey", "pure", "--d", "3", "--p", "5", "--n-limit", "9"]) == 0
    assert capsys.readouterr().out == (
        "d,p,n,case,status\n"
        "3,5,3,Cubic,Established\n"
        "3,5,7,Unramified,Established\n"
        "3,5,9,CongruentExponent,Established\n"
    )


@pytest.mark.parametrize(
    "argv, code",
    [
        (["no-such-command"], 2),
        (["theorem1", "--p", "19"], 2),
        (["theorem1", "--d", "-1", "--p", "9"], 2),
        (["class-number", "-4"], 2),
        (["class-number", "3"], 2),
        (["wendt", "5", "--mod", "13"], 2),
        (["wendt", "5", "--mod", "15"], 2),
        (["theorem2", "--p", "5"], 2),
        (["theorem2", "--p", "5", "--quadratic", "-1", "--asserted", "1,1"], 2),
        (["theorem2", "--p", "5", "--pure", "1,3"], 2),
        (["theorem2", "--p", "5", "--asserted", "x"], 2),
        (["survey", "census", "--bound", "4"], 2),
        (["wendt", "41"], 3),
        (["theorem2", "--p", "5", "--pure", "5,4"], 3),
        (["theorem1", "--d", "-1", "--p", "2305843009213693951", "--n", "4"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(argv) == code
    captured = capsys.readouterr()
    assert captured.err
    assert captured.out == ""


def test_capacity_exit_code_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FERMAT_SURVEY_MAX", "10")
    assert run(["survey", "qi", "--pmax", "100"]) == 3


def test_corrupt_checkpoint_is_an_io_error(capsys, tmp_path):
    path = tmp_path / "census.ckpt"
    path.write_text("not a checkpoint")
    assert run(["--quiet", "survey", "census", "--bound", "150", "--checkpoint", str(path)]) == 4
    assert "corrupt" in capsys.readouterr().err


def test_checkpoint_written_by_cli(capsys, tmp_path):
    path = tmp_path / "census.ckpt"
    assert run(["--quiet", "--format", "json", "survey", "census", "--bound", "150", "--checkpoint", str(path)]) == 0
    assert path.read_text().splitlines()[:2] == ["1", "149"]


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "survey" in capsys.readouterr().out


def _payloads():
    Qi = make_field(-1)
    return [
        describe(make_field(-5)),
        evaluate(12),
        evaluate(10, 31),
        theorem1_search_report(Qi, 19),
        theorem1_search_report(Qi, 19, n_max=10),
        theorem1_search_report(make_field(-23), 3),
        corollary2_check(5),
        corollary2_check(19),
        theorem2_check(PureFieldHypothesis(d=3, n=7), 5),
        condition1_check(7),
        Condition1Verdict(p=149, holds=True),
        pure_field_family(3, 5, 9)[0],
        TableRow(p=3, n=4),
        TableRow(p=3),
        SurveyRecord(p=3, verdict="Established", n=4, ms=0),
        QiScanResult(p_bound=100, scanned=24, failures=[]),
        CensusTotals(bound=150, candidates=18, holds=16),
    ]


@pytest.mark.parametrize("model", _payloads(), ids=lambda model: type(model).__name__)
def test_json_payloads_validate_back(model):
    assert type(model).model_validate_json(to_json(model)) == model


@pytest.mark.parametrize(
    "hypothesis",
    [
        QuadraticHypothesis(d=-1),
        PureFieldHypothesis(d=3, n=7),
        TotallyRamifiedHypothesis(degree=4),
        AssertedHypothesis(e=2, f=1),
    ],
)
def test_field_hypotheses_validate_back(hypothesis):
    adapter = TypeAdapter(FieldHypothesis)
    assert adapter.validate_json(adapter.dump_json(hypothesis)) == hypothesis


def test_emitter_human_lines(capsys):
    emitter = Emitter(OutputFormat.HUMAN, sys.stdout)
    emitter.emit(CensusTotals(bound=150, candidates=18, holds=16))
    emitter.emit(theorem1_search_report(make_field(-1), 19, n_max=10))
    emitter.emit(theorem1_search_report(make_field(-23), 3))
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "p < 150, p = 2 mod 3: 16 of 18 satisfy condition (1) (88.89%)"
    assert "exhausted" in out[1]
    assert out[2] == "theorem1 d=-23 p=3: p divides the class number, no n tried"


def test_payload_types_are_distinct():
    types = {type(model) for model in _payloads()}
    assert {FieldSummary, WendtEvaluation, Theorem1SearchReport, CriterionOutcome, Condition1Report, PureFieldRow} <= types
