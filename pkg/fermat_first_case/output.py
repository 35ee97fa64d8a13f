"""Payload rendering for the CLI.

Json: one object per payload (Json Lines for surveys), via orjson.
Csv: fixed headered columns per record type; a new record type within the same
stream starts a new block after a blank line.
Human: free-form text, not a stable interface.
"""

import csv
import logging
from enum import Enum
from functools import singledispatch
from typing import TextIO

import orjson
from pydantic import BaseModel

from fermat_first_case.criteria import (
    Condition1Report,
    Condition1Verdict,
    CriterionOutcome,
    PureFieldRow,
    SearchReason,
    Theorem1SearchReport,
)
from fermat_first_case.quad_field import FieldSummary
from fermat_first_case.survey import CensusTotals, QiScanResult, SurveyRecord, TableRow
from fermat_first_case.wendt import WendtEvaluation

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    HUMAN = "human"
    JSON = "json"
    CSV = "csv"


def to_json(model: BaseModel) -> bytes:
    return orjson.dumps(model.model_dump(mode="json"))


def _blank(value) -> str:
    return "" if value is None else value


@singledispatch
def csv_row(model: BaseModel) -> dict:
    raise TypeError(f"no Csv layout for {type(model).__name__}")


@csv_row.register
def _(model: TableRow) -> dict:
    return {"p": model.p, "n": _blank(model.n)}


@csv_row.register
def _(model: SurveyRecord) -> dict:
    return {"p": model.p, "verdict": model.verdict.value, "n": _blank(model.n), "ms": model.ms}


@csv_row.register
def _(model: QiScanResult) -> dict:
    return {"p_bound": model.p_bound, "scanned": model.scanned, "failures": ";".join(map(str, model.failures))}


@csv_row.register
def _(model: CensusTotals) -> dict:
    return {"bound": model.bound, "candidates": model.candidates, "holds": model.holds, "percentage": model.percentage}


@csv_row.register
def _(model: CriterionOutcome) -> dict:
    witness = model.witness
    return {
        "criterion": model.criterion,
        "p": model.p,
        "status": model.status.value,
        "reason": model.reason,
        "message": model.message,
        "n": "" if witness is None else witness.n,
        "q": "" if witness is None else witness.q,
        "case": "" if model.case is None else model.case.value,
    }


@csv_row.register
def _(model: Theorem1SearchReport) -> dict:
    witness = model.witness
    return {
        "d": model.d,
        "p": model.p,
        "n_cap": model.n_cap,
        "exhausted": str(model.exhausted).lower(),
        "reason": model.reason.value,
        "n": "" if witness is None else witness.n,
        "q": "" if witness is None else witness.q,
    }


@csv_row.register
def _(model: Condition1Report) -> dict:
    return {"p": model.p, "holds": str(model.holds).lower(), "witnesses": ";".join(map(str, model.witnesses))}


@csv_row.register
def _(model: Condition1Verdict) -> dict:
    return {"p": model.p, "holds": str(model.holds).lower()}


@csv_row.register
def _(model: WendtEvaluation) -> dict:
    return {
        "n": model.n,
        "value": _blank(model.value),
        "modulus": _blank(model.modulus),
        "residue": _blank(model.residue),
        "divisible": "" if model.divisible is None else str(model.divisible).lower(),
    }


@csv_row.register
def _(model: FieldSummary) -> dict:
    return {"d": model.d, "discriminant": model.discriminant, "class_number": model.class_number}


@csv_row.register
def _(model: PureFieldRow) -> dict:
    return {
        "d": model.d,
        "p": model.p,
        "n": model.n,
        "case": "" if model.case is None else model.case.value,
        "status": model.status.value,
    }


@singledispatch
def human_line(model: BaseModel) -> str:
    return " ".join(f"{key}={value}" for key, value in csv_row(model).items())


@human_line.register
def _(model: CriterionOutcome) -> str:
    return f"{model.criterion} p={model.p}: {model.status.value} - {model.message}"


@human_line.register
def _(model: Theorem1SearchReport) -> str:
    if model.reason is SearchReason.CLASS_NUMBER_DIVISIBLE:
        return f"theorem1 d={model.d} p={model.p}: p divides the class number, no n tried"
    if model.witness is None:
        return f"theorem1 d={model.d} p={model.p}: no witness n <= {model.n_cap} (exhausted)"
    return f"theorem1 d={model.d} p={model.p}: n={model.witness.n} q={model.witness.q}"


@human_line.register
def _(model: WendtEvaluation) -> str:
    if model.value is not None:
        return str(model.value)
    verdict = "divides" if model.divisible else "does not divide"
    return f"W_{model.n} = {model.residue} mod {model.modulus} ({model.modulus} {verdict} W_{model.n})"


@human_line.register
def _(model: CensusTotals) -> str:
    return f"p < {model.bound}, p = 2 mod 3: {model.holds} of {model.candidates} satisfy condition (1) ({model.percentage}%)"


@human_line.register
def _(model: QiScanResult) -> str:
    failures = ", ".join(map(str, model.failures)) or "none"
    return f"scanned {model.scanned} primes p <= {model.p_bound}; failures: {failures}"


class Emitter:
    """Writes payload models to a text stream in one of the output formats."""

    def __init__(self, fmt: OutputFormat, stream: TextIO):
        self.fmt = OutputFormat(fmt)
        self.stream = stream
        self._csv_type = None
        self._writer = None

    def emit(self, model: BaseModel) -> None:
        if self.fmt is OutputFormat.JSON:
            self.stream.write(to_json(model).decode() + "\n")
        elif self.fmt is OutputFormat.CSV:
            self._emit_csv(model)
        else:
            self.stream.write(human_line(model) + "\n")
        self.stream.flush()

    def _emit_csv(self, model: BaseModel) -> None:
        row = csv_row(model)
        if type(model) is not self._csv_type:
            if self._csv_type is not None:
                self.stream.write("\n")
            self._writer = csv.DictWriter(self.stream, fieldnames=list(row), lineterminator="\n")
            self._writer.writeheader()
            self._csv_type = type(model)
        self._writer.writerow(row)
