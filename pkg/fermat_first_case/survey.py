# fermat_first_case/survey.py

"""Batch runs: the smallest-n table, the full Gaussian-field scan and the condition (1) census."""

import logging
import time
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from pydantic import BaseModel, ConfigDict, computed_field, model_validator
from tqdm import tqdm

from fermat_first_case import utils
from fermat_first_case.arith_core import iter_prime_segments
from fermat_first_case.checkpoint import CheckpointState, load_checkpoint, save_checkpoint
from fermat_first_case.criteria import (
    CriterionStatus,
    condition1_holds,
    find_theorem1_witness,
    search_limit,
)
from fermat_first_case.errors import ArgumentError, CapExceededError
from fermat_first_case.quad_field import make_field
from fermat_first_case.quotient_sieve import condition1_holds_by_quotients, spf_table

logger = logging.getLogger(__name__)

CENSUS_METHODS = ("sieve", "direct")


class SurveyRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    verdict: CriterionStatus
    n: int | None = None
    ms: int = 0


class TableRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    n: int | None = None


class QiScanResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    p_bound: int
    scanned: int
    failures: list[int]


class CensusTotals(BaseModel):
    model_config = ConfigDict(frozen=True)

    bound: int
    candidates: int
    holds: int

    @model_validator(mode="after")
    def _holds_within_candidates(self):
        if not 0 <= self.holds <= self.candidates:
            raise ValueError(f"holds = {self.holds} must lie in [0, {self.candidates}]")
        return self

    @computed_field
    @property
    def percentage(self) -> float:
        return round(100 * self.holds / self.candidates, 2) if self.candidates else 0.0


def _prime_chunks(bound: int, after: int, keep: Callable[[int], bool]) -> Iterator[list[int]]:
    """Primes p with after < p <= bound and keep(p), in ascending chunks of FERMAT_SURVEY_CHUNK."""
    size = utils.survey_chunk()
    chunk: list[int] = []
    for segment in iter_prime_segments(bound, start=after + 1):
        for p in segment.tolist():
            if keep(p):
                chunk.append(p)
                if len(chunk) == size:
                    yield chunk
                    chunk = []
    if chunk:
        yield chunk


def _run_chunks(worker, chunks: Iterable[list[int]], jobs: int, progress: bool, desc: str) -> Iterator[list[SurveyRecord]]:
    # executor.map keeps chunk order, so completed work is always a prefix
    with tqdm(desc=desc, unit="p", disable=not progress) as bar:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                for records in executor.map(worker, chunks):
                    bar.update(len(records))
                    yield records
        else:
            for records in map(worker, chunks):
                bar.update(len(records))
                yield records


class _Checkpointer:
    def __init__(self, path, interval: float):
        self.path = path
        self.interval = utils.checkpoint_interval() if interval is None else interval
        self.last_save = time.monotonic()

    def maybe_save(self, last_p: int, totals: dict, force: bool = False) -> None:
        if self.path is None:
            return
        now = time.monotonic()
        if force or now - self.last_save >= self.interval:
            save_checkpoint(self.path, CheckpointState(last_p=last_p, totals=totals))
            self.last_save = now


def _elapsed_ms(start: float) -> int:
    return int(round((time.perf_counter() - start) * 1000))


def _qi_chunk(primes: list[int], n_max: int | None) -> list[SurveyRecord]:
    K = make_field(-1)
    records = []
    for p in primes:
        start = time.perf_counter()
        witness = find_theorem1_witness(K, p, search_limit(p, n_max))
        if witness is None:
            records.append(SurveyRecord(p=p, verdict=CriterionStatus.NOT_ESTABLISHED, ms=_elapsed_ms(start)))
        else:
            records.append(SurveyRecord(p=p, verdict=CriterionStatus.ESTABLISHED, n=witness.n, ms=_elapsed_ms(start)))
    return records


def _census_chunk(primes: list[int], method: str, spf_limit: int) -> list[SurveyRecord]:
    spf = spf_table(spf_limit) if method == "sieve" else None
    records = []
    for p in primes:
        start = time.perf_counter()
        holds = condition1_holds_by_quotients(p, spf) if method == "sieve" else condition1_holds(p)
        verdict = CriterionStatus.ESTABLISHED if holds else CriterionStatus.NOT_ESTABLISHED
        records.append(SurveyRecord(p=p, verdict=verdict, ms=_elapsed_ms(start)))
    return records


def qi_smallest_n_table(
    p_max: int,
    n_max: int | None = None,
    d: int = -1,
    on_row: Callable[[TableRow], None] | None = None,
) -> list[TableRow]:
    """
    Smallest Wendt-criterion exponent n for every odd prime p < p_max over Q(sqrt(d)).

    Primes without a witness under the search cap get n = None.
    """
    logger.info(f"qi_smallest_n_table() function started - p < {p_max}, d={d}")
    if p_max < 3:
        raise ArgumentError(f"p_max must be at least 3, got {p_max}")
    K = make_field(d)
    rows = []
    for chunk in _prime_chunks(p_max - 1, 2, lambda p: True):
        for p in chunk:
            witness = find_theorem1_witness(K, p, search_limit(p, n_max))
            row = TableRow(p=p, n=None if witness is None else witness.n)
            rows.append(row)
            if on_row is not None:
                on_row(row)
    logger.info(f"qi_smallest_n_table() function completed - {len(rows)} rows")
    return rows


def _check_survey_bound(bound: int) -> None:
    cap = utils.survey_max()
    if bound > cap:
        logger.error(f"survey bound {bound} above FERMAT_SURVEY_MAX {cap}")
        raise CapExceededError(f"survey bound {bound} exceeds the configured maximum {cap}")


def qi_scan(
    p_bound: int,
    checkpoint=None,
    jobs: int = 1,
    n_max: int | None = None,
    on_record: Callable[[SurveyRecord], None] | None = None,
    progress: bool = True,
    checkpoint_interval: float | None = None,
) -> QiScanResult:
    """
    Runs the Wendt-criterion search over Q(i) for every odd prime p <= p_bound.

    With `checkpoint`, progress is persisted and a rerun resumes after the last
    completed prime; the final result does not depend on where it resumed.

    Raises:
        CapExceededError: If p_bound exceeds FERMAT_SURVEY_MAX
        OSError: If the checkpoint cannot be read or written
    """
    logger.info(f"qi_scan() function started - p <= {p_bound}, jobs={jobs}")
    _check_survey_bound(p_bound)
    totals = {"kind": "qi", "bound": p_bound, "scanned": 0, "failures": []}
    last_p = 2
    if checkpoint is not None:
        state = load_checkpoint(checkpoint, "qi", p_bound)
        if state is not None:
            totals, last_p = dict(state.totals), max(state.last_p, 2)
    saver = _Checkpointer(checkpoint, checkpoint_interval)
    worker = partial(_qi_chunk, n_max=n_max)
    for records in _run_chunks(worker, _prime_chunks(p_bound, last_p, lambda p: True), jobs, progress, "qi scan"):
        for record in records:
            totals["scanned"] += 1
            if record.verdict is CriterionStatus.NOT_ESTABLISHED:
                logger.warning(f"qi_scan() - no witness for p = {record.p}")
                totals["failures"] = totals["failures"] + [record.p]
            if on_record is not None:
                on_record(record)
        last_p = records[-1].p
        saver.maybe_save(last_p, totals)
    saver.maybe_save(last_p, totals, force=True)
    result = QiScanResult(p_bound=p_bound, scanned=totals["scanned"], failures=totals["failures"])
    logger.info(f"qi_scan() function completed - {result.scanned} primes, {len(result.failures)} failures")
    return result


def qi_full_scan(p_bound: int, checkpoint=None, **kwargs) -> list[int]:
    """Odd primes p <= p_bound for which the search over Q(i) finds no witness."""
    return qi_scan(p_bound, checkpoint, **kwargs).failures


def condition1_census(
    bound: int,
    checkpoint=None,
    jobs: int = 1,
    method: str = "sieve",
    on_record: Callable[[SurveyRecord], None] | None = None,
    progress: bool = True,
    checkpoint_interval: float | None = None,
) -> CensusTotals:
    """
    Counts the odd primes p = 2 mod 3 below `bound` and those satisfying condition (1).

    `method` "sieve" evaluates condition (1) through Fermat quotients,
    "direct" through per-a exponentiation; both give the same totals.

    Raises:
        ArgumentError: If bound < 5 or the method is unknown
        CapExceededError: If bound exceeds FERMAT_SURVEY_MAX
        OSError: If the checkpoint cannot be read or written
    """
    logger.info(f"condition1_census() function started - p < {bound}, method={method}, jobs={jobs}")
    if bound < 5:
        raise ArgumentError(f"census bound must be at least 5, got {bound}")
    if method not in CENSUS_METHODS:
        raise ArgumentError(f"unknown census method {method!r}, expected one of {CENSUS_METHODS}")
    _check_survey_bound(bound)
    totals = {"kind": "census", "bound": bound, "candidates": 0, "holds": 0}
    last_p = 2
    if checkpoint is not None:
        state = load_checkpoint(checkpoint, "census", bound)
        if state is not None:
            totals, last_p = dict(state.totals), max(state.last_p, 2)
    saver = _Checkpointer(checkpoint, checkpoint_interval)
    worker = partial(_census_chunk, method=method, spf_limit=max(bound // 2, 2))
    chunks = _prime_chunks(bound - 1, last_p, lambda p: p % 3 == 2)
    for records in _run_chunks(worker, chunks, jobs, progress, "condition (1) census"):
        for record in records:
            totals["candidates"] += 1
            if record.verdict is CriterionStatus.ESTABLISHED:
                totals["holds"] += 1
            if on_record is not None:
                on_record(record)
        last_p = records[-1].p
        saver.maybe_save(last_p, totals)
    saver.maybe_save(last_p, totals, force=True)
    result = CensusTotals(bound=bound, candidates=totals["candidates"], holds=totals["holds"])
    logger.info(f"condition1_census() function completed - {result.holds}/{result.candidates} satisfy condition (1)")
    return result
