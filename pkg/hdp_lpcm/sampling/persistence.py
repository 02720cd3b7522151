"""
Chain files and engine checkpoints.

Chains are written as line-delimited JSON (`.jsonl`) or as a length-prefixed binary stream (`.bin`), the
format follows the file suffix. Both start with the same header record. See `docs/ChainFormat.md`.
"""

import io
import json
import os
import struct
import tempfile
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from hdp_lpcm.exceptions import ChainFormatError, MissingFileError
from hdp_lpcm.logger import logger
from hdp_lpcm.model import (
    GroupParams,
    Hyperparams,
    LabelSequences,
    LatentPositions,
    ModelState,
    TransitionStructure,
)
from hdp_lpcm.pydantic_utils import get_model_dump, get_model_dump_json, load_model_file, parse_model
from hdp_lpcm.sampling.chain import AcceptanceStats, Chain, GroupParamMeans
from hdp_lpcm.sampling.config import SamplerConfig

CHAIN_MAGIC = b"HDPLPCM\x00"
CHAIN_FORMAT_NAME = "hdp-lpcm-chain"
LENGTH_PREFIX = struct.Struct("<Q")
HEADER_EXCLUDE = {"samples", "log_post"}


class EngineCheckpoint(BaseModel):
    """
    Everything the engine needs to continue a run exactly where it stopped.
    """

    sweep: int
    state: ModelState
    rng_state: Dict[str, Any]
    step_sizes: Dict[str, float]
    window: Dict[str, List[float]] = Field(default_factory=dict)
    accept_stats: Dict[str, AcceptanceStats]
    samples: List[ModelState] = Field(default_factory=list)
    log_post: List[float] = Field(default_factory=list)
    group_means: Optional[GroupParamMeans] = None
    config: SamplerConfig


def atomic_write(path: str, data: bytes) -> None:
    """
    Writes `data` to a temporary file next to `path` and moves it into place.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))

    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def save_checkpoint(checkpoint: EngineCheckpoint, path: str) -> None:
    logger.debug("Writing checkpoint of sweep %d to %s", checkpoint.sweep, path)
    atomic_write(path, get_model_dump_json(checkpoint).encode("utf-8"))


def load_checkpoint(path: str) -> EngineCheckpoint:
    """
    Raises:
        MissingFileError: If the checkpoint does not exist.
        ChainFormatError: If it is not a valid checkpoint.
    """
    try:
        return load_model_file(EngineCheckpoint, path)
    except ValidationError as exc:
        raise ChainFormatError(path, str(exc)) from exc


def _header(chain: Chain) -> Dict[str, Any]:
    header = get_model_dump(chain, mode="json", exclude=HEADER_EXCLUDE)
    header["format"] = CHAIN_FORMAT_NAME
    header["n_samples"] = len(chain.samples)
    return header


def _summary_means(header: Dict[str, Any]) -> Optional[GroupParamMeans]:
    if header.get("config", {}).get("storage") != "summary" or header.get("group_means") is None:
        return None
    return parse_model(GroupParamMeans, header["group_means"])


def _sample_payload(state: ModelState, log_post: float, summary: bool) -> bytes:
    meta: Dict[str, Any] = {"log_post": log_post, "lambda_": state.groups.lambda_, "beta0": state.groups.beta0}
    arrays = {"X": state.positions.X, "Z": state.labels.Z}

    if not summary:
        meta["hyper"] = get_model_dump(state.hyper, mode="json")
        arrays.update(
            mu=state.groups.mu,
            sigma2=state.groups.sigma2,
            beta=state.trans.beta,
            pi0=state.trans.pi0,
            Pi=state.trans.Pi,
        )

    buffer = io.BytesIO()
    np.savez(buffer, meta=np.array(json.dumps(meta)), **arrays)
    return buffer.getvalue()


def _state_from_payload(payload: bytes, means: Optional[GroupParamMeans]) -> Tuple[ModelState, float]:
    with np.load(io.BytesIO(payload), allow_pickle=False) as arrays:
        meta = json.loads(str(arrays["meta"]))

        if means is not None:
            state = means.expand(arrays["X"], arrays["Z"], meta["beta0"], meta["lambda_"])
        else:
            state = ModelState(
                positions=LatentPositions(X=arrays["X"]),
                labels=LabelSequences(Z=arrays["Z"]),
                trans=TransitionStructure(beta=arrays["beta"], pi0=arrays["pi0"], Pi=arrays["Pi"]),
                groups=GroupParams(
                    mu=arrays["mu"], sigma2=arrays["sigma2"], lambda_=meta["lambda_"], beta0=meta["beta0"]
                ),
                hyper=parse_model(Hyperparams, meta["hyper"]),
            )
    return state, float(meta["log_post"])


def _sample_record(state: ModelState, log_post: float, summary: bool) -> Dict[str, Any]:
    if not summary:
        return {"log_post": log_post, "state": get_model_dump(state, mode="json")}

    return {
        "log_post": log_post,
        "positions": get_model_dump(state.positions, mode="json"),
        "labels": get_model_dump(state.labels, mode="json"),
        "beta0": state.groups.beta0,
        "lambda_": state.groups.lambda_,
    }


def _state_from_record(record: Dict[str, Any], means: Optional[GroupParamMeans]) -> ModelState:
    if means is None:
        return parse_model(ModelState, record["state"])

    positions = parse_model(LatentPositions, record["positions"])
    labels = parse_model(LabelSequences, record["labels"])
    return means.expand(positions.X, labels.Z, float(record["beta0"]), float(record["lambda_"]))


def _write_jsonl(chain: Chain) -> bytes:
    summary = chain.config.storage == "summary"
    lines = [json.dumps(_header(chain))]
    for state, value in zip(chain.samples, chain.log_post):
        lines.append(json.dumps(_sample_record(state, value, summary)))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _write_binary(chain: Chain) -> bytes:
    summary = chain.config.storage == "summary"
    records = [json.dumps(_header(chain)).encode("utf-8")]
    records.extend(_sample_payload(state, value, summary) for state, value in zip(chain.samples, chain.log_post))

    out = io.BytesIO()
    out.write(CHAIN_MAGIC)
    for record in records:
        out.write(LENGTH_PREFIX.pack(len(record)))
        out.write(record)
    return out.getvalue()


def write_chain(chain: Chain, path: str) -> None:
    """
    Writes a chain to `path`, as line-delimited JSON for `.jsonl` and as the binary format for `.bin`.

    Raises:
        ChainFormatError: If the suffix is not supported.
    """
    suffix = os.path.splitext(path)[1].lower()

    if suffix == ".jsonl":
        data = _write_jsonl(chain)
    elif suffix == ".bin":
        data = _write_binary(chain)
    else:
        raise ChainFormatError(path, f"unsupported suffix '{suffix}', expected .jsonl or .bin")

    logger.info("Writing %d samples to %s", len(chain.samples), path)
    atomic_write(path, data)


def _binary_records(path: str, data: bytes) -> Iterator[bytes]:
    if not data.startswith(CHAIN_MAGIC):
        raise ChainFormatError(path, "missing magic bytes")

    offset = len(CHAIN_MAGIC)
    while offset < len(data):
        if offset + LENGTH_PREFIX.size > len(data):
            raise ChainFormatError(path, "truncated length prefix")
        (length,) = LENGTH_PREFIX.unpack_from(data, offset)
        offset += LENGTH_PREFIX.size
        if offset + length > len(data):
            raise ChainFormatError(path, "truncated record")
        yield data[offset : offset + length]
        offset += length


def _chain_from_parts(path: str, header: Dict[str, Any], samples: List[ModelState], log_post: List[float]) -> Chain:
    if header.pop("format", None) != CHAIN_FORMAT_NAME:
        raise ChainFormatError(path, "not a chain file")

    expected = header.pop("n_samples", len(samples))
    if expected != len(samples):
        raise ChainFormatError(path, f"header announces {expected} samples, found {len(samples)}")

    try:
        return Chain(**{**header, "samples": samples, "log_post": log_post})
    except ValidationError as exc:
        raise ChainFormatError(path, str(exc)) from exc


def read_chain(path: str) -> Chain:
    """
    Reads a chain written by `write_chain`.

    Raises:
        MissingFileError: If the file does not exist.
        ChainFormatError: If the file is malformed or has an unsupported suffix.
    """
    suffix = os.path.splitext(path)[1].lower()
    if suffix not in (".jsonl", ".bin"):
        raise ChainFormatError(path, f"unsupported suffix '{suffix}', expected .jsonl or .bin")

    try:
        with open(path, "rb") as f:
            data = f.read()
    except FileNotFoundError as exc:
        raise MissingFileError(path) from exc

    samples: List[ModelState] = []
    log_post: List[float] = []

    try:
        if suffix == ".jsonl":
            lines = [line for line in data.decode("utf-8").splitlines() if line.strip()]
            if len(lines) == 0:
                raise ChainFormatError(path, "empty file")
            header = json.loads(lines[0])
            means = _summary_means(header)
            for line in lines[1:]:
                record = json.loads(line)
                samples.append(_state_from_record(record, means))
                log_post.append(float(record["log_post"]))
        else:
            records = list(_binary_records(path, data))
            if len(records) == 0:
                raise ChainFormatError(path, "missing header record")
            header = json.loads(records[0].decode("utf-8"))
            means = _summary_means(header)
            for payload in records[1:]:
                state, value = _state_from_payload(payload, means)
                samples.append(state)
                log_post.append(value)
    except (ValueError, KeyError, ValidationError) as exc:
        raise ChainFormatError(path, str(exc)) from exc

    logger.info("Read %d samples from %s", len(samples), path)
    return _chain_from_parts(path, header, samples, log_post)
