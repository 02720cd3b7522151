"""
Simulates benchmark networks from a preset or a custom scenario.
"""

import os
from typing import Any, Dict, Optional

from hdp_lpcm.commands.utils.defaults import REPLICATION_DIRNAME
from hdp_lpcm.commands.utils.models import SimulateConfig
from hdp_lpcm.commands.utils.run import get_run_config, load_config_file, run_directory, write_manifest
from hdp_lpcm.exceptions import UnknownPresetError
from hdp_lpcm.logger import logger
from hdp_lpcm.pydantic_utils import get_model_dump
from hdp_lpcm.sampling import make_rng
from hdp_lpcm.simulation import PRESETS, simulate_from_spec, simulate_homogeneous, simulate_inhomogeneous, write_bundle


def _spec_data(preset: Optional[str], config_path: Optional[str]) -> Dict[str, Any]:
    """
    Scenario fields: the preset values updated with the `spec` object of the configuration file.
    """
    data: Dict[str, Any] = {}

    if preset is not None:
        if preset not in PRESETS:
            raise UnknownPresetError(preset, sorted(PRESETS))
        data = get_model_dump(PRESETS[preset](), mode="json")

    data.update(load_config_file(config_path).get("spec", {}))
    return data


def simulate(
    preset: Optional[str] = None,
    config_path: Optional[str] = None,
    seed: Optional[int] = None,
    out: Optional[str] = None,
    replications: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Simulates one or more networks and writes a bundle per replication: edge list, ground truth labels
    and positions, scenario echo and manifest.

    Args:
        preset (str, optional): `homogeneous` or `inhomogeneous`. Defaults to None (scenario from the config).
        config_path (str, optional): Path to a JSON config with a `spec` object. Defaults to None.
        seed (int, optional): Seed of the first replication, replication `r` uses `seed + r`.
        out (str, optional): Output directory.
        replications (int, optional): Number of networks. Defaults to 1.

    Raises:
        UnknownPresetError: If the preset does not exist.

    Returns:
        Dict[str, Any]: The manifest of the last bundle.
    """
    spec_data = _spec_data(preset, config_path)
    if seed is not None:
        spec_data["seed"] = seed

    config = get_run_config(
        SimulateConfig,
        config_path,
        {"spec": spec_data, "preset": preset, "out": out, "replications": replications},
    )
    spec = config.spec
    logger.info("Simulating %d network(s) with n=%d, T=%d", config.replications, spec.n, spec.T)

    simulator = {"homogeneous": simulate_homogeneous, "inhomogeneous": simulate_inhomogeneous}.get(
        preset or "", simulate_from_spec
    )
    manifest: Dict[str, Any] = {}

    with run_directory(config.out) as directory:
        outputs = []
        for r in range(config.replications):
            replication_spec = spec.model_copy(update={"seed": spec.seed + r})
            result = simulator(replication_spec, make_rng(replication_spec.seed))

            target = directory if config.replications == 1 else os.path.join(directory, REPLICATION_DIRNAME.format(index=r + 1))
            manifest = write_bundle(result, replication_spec, target)
            outputs.append(os.path.relpath(target, directory))

        write_manifest(directory, "simulate", config, spec.seed, outputs)

    return manifest
