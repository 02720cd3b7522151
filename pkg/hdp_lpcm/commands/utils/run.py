"""
Utilities shared by the commands: configuration loading, run directories and manifests.
"""

import json
import os
import shutil
import tempfile
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Type, TypeVar

from pydantic import BaseModel

from hdp_lpcm import __version__
from hdp_lpcm.commands.utils.defaults import MANIFEST_FILENAME
from hdp_lpcm.exceptions import ChainFormatError, InvalidArgumentsError, MissingFileError
from hdp_lpcm.logger import logger
from hdp_lpcm.pydantic_utils import get_model_dump, parse_model
from hdp_lpcm.sampling import Chain, read_chain

C = TypeVar("C", bound=BaseModel)


def _set_path(data: Dict[str, Any], dotted: str, value: Any) -> None:
    keys = dotted.split(".")
    target = data
    for key in keys[:-1]:
        target = target.setdefault(key, {})
    target[keys[-1]] = value


def load_config_file(config_path: Optional[str]) -> Dict[str, Any]:
    """
    Reads a JSON configuration file, an empty configuration if no path is given.

    Raises:
        MissingFileError: If the file does not exist.
        ChainFormatError: If the file is not valid JSON.
    """
    if config_path is None:
        return {}

    logger.debug("Loading config from %s", config_path)
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as exc:
        raise MissingFileError(config_path) from exc
    except json.JSONDecodeError as exc:
        raise ChainFormatError(config_path, str(exc)) from exc

    if not isinstance(data, dict):
        raise ChainFormatError(config_path, "the configuration must be a JSON object")
    return data


def get_run_config(config_type: Type[C], config_path: Optional[str], overrides: Dict[str, Any]) -> C:
    """
    Builds a command configuration from a JSON file and flag overrides. Overrides are keyed by dotted
    field paths (`sampler.seed`) and win over file values, `None` values are ignored.

    Args:
        config_type (Type[BaseModel]): Configuration model.
        config_path (str, optional): Path to a JSON configuration file.
        overrides (Dict[str, Any]): Values given on the command line.

    Returns:
        BaseModel: The validated configuration.
    """
    data = load_config_file(config_path)

    for dotted, value in overrides.items():
        if value is not None:
            _set_path(data, dotted, value)

    return parse_model(config_type, data)


@contextmanager
def run_directory(out: str) -> Iterator[str]:
    """
    Yields a temporary directory next to `out` and moves it to `out` once the block completes. The
    temporary directory is removed if the block fails.

    Raises:
        InvalidArgumentsError: If `out` already exists and is not empty.
    """
    out = os.path.abspath(out)
    if os.path.isdir(out) and os.listdir(out):
        raise InvalidArgumentsError(f"output directory {out} already exists and is not empty")

    parent = os.path.dirname(out)
    os.makedirs(parent, exist_ok=True)
    tmp_dir = tempfile.mkdtemp(dir=parent, prefix=f".{os.path.basename(out)}-")

    try:
        yield tmp_dir
    except BaseException:
        shutil.rmtree(tmp_dir, ignore_errors=True)
        raise

    if os.path.isdir(out):
        os.rmdir(out)
    os.replace(tmp_dir, out)
    logger.info("Wrote results to %s", out)


def write_manifest(directory: str, command: str, config: BaseModel, seed: Optional[int], outputs: List[str]) -> None:
    """
    Writes the manifest of a run: command, package version, seed, the full configuration and the files
    produced.
    """
    manifest = {
        "command": command,
        "version": __version__,
        "seed": seed,
        "config": get_model_dump(config, mode="json"),
        "outputs": sorted(outputs),
    }

    with open(os.path.join(directory, MANIFEST_FILENAME), "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2)


def write_json(path: str, data: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)


def load_chains(paths: List[str]) -> Chain:
    """
    Reads chain files and pools their samples into one chain. The metadata of the first chain is kept,
    the running means of the group parameters are dropped since they belong to single chains.
    """
    chains = [read_chain(path) for path in paths]
    if len(chains) == 1:
        return chains[0]

    pooled = chains[0].model_copy(
        update={
            "samples": [sample for chain in chains for sample in chain.samples],
            "log_post": [value for chain in chains for value in chain.log_post],
            "interrupted": any(chain.interrupted for chain in chains),
            "group_means": None,
        }
    )
    logger.info("Pooled %d samples from %d chains", len(pooled.samples), len(chains))
    return pooled
