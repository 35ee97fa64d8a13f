"""Resumable survey state.

File format, all integers decimal:
    line 1: format version
    line 2: last fully processed prime (0 before the first one)
    line 3: running totals as a Json object, including the survey kind and bound
Writes go to a sibling temp file that is then renamed over the target.
"""

import logging
import os
from pathlib import Path

import orjson
from pydantic import BaseModel, ConfigDict

from fermat_first_case.errors import CheckpointError

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class CheckpointState(BaseModel):
    model_config = ConfigDict(frozen=True)

    last_p: int
    totals: dict


def save_checkpoint(path: str | os.PathLike, state: CheckpointState) -> None:
    """
    Atomically replaces the checkpoint at `path` with `state`.

    Raises:
        OSError: If the file cannot be written
    """
    target = Path(path)
    temp = target.with_name(target.name + ".tmp")
    payload = f"{FORMAT_VERSION}\n{state.last_p}\n{orjson.dumps(state.totals, option=orjson.OPT_SORT_KEYS).decode()}\n"
    temp.write_text(payload, encoding="utf-8")
    os.replace(temp, target)
    logger.debug(f"save_checkpoint() - last p {state.last_p} written to {target}")


def load_checkpoint(path: str | os.PathLike, kind: str, bound: int) -> CheckpointState | None:
    """
    Reads the checkpoint at `path`; None when the file does not exist yet.

    Raises:
        CheckpointError: If the file is corrupt or belongs to another survey or bound
    """
    logger.info(f"load_checkpoint() function started - {path}")
    target = Path(path)
    if not target.exists():
        logger.info(f"load_checkpoint() function completed - no checkpoint at {target}, starting fresh")
        return None
    lines = target.read_text(encoding="utf-8").splitlines()
    try:
        version = int(lines[0])
        last_p = int(lines[1])
        totals = orjson.loads(lines[2])
    except (IndexError, ValueError, orjson.JSONDecodeError) as exc:
        logger.error(f"load_checkpoint() function failed - {target} is corrupt: {exc}")
        raise CheckpointError(f"checkpoint {target} is corrupt") from exc
    if version != FORMAT_VERSION:
        logger.error(f"load_checkpoint() function failed - version {version} in {target}")
        raise CheckpointError(f"checkpoint {target} has format version {version}, expected {FORMAT_VERSION}")
    if not isinstance(totals, dict) or totals.get("kind") != kind or totals.get("bound") != bound:
        logger.error(f"load_checkpoint() function failed - {target} is not a {kind} checkpoint for bound {bound}")
        raise CheckpointError(f"checkpoint {target} belongs to another survey (expected {kind} up to {bound})")
    logger.info(f"load_checkpoint() function completed - resuming after p = {last_p}")
    return CheckpointState(last_p=last_p, totals=totals)
