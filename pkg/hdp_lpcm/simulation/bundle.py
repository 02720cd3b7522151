"""
Simulation output bundle: the edge list, the ground truth tables and the scenario echo.
"""

import json
import os
from typing import Any, Dict

from hdp_lpcm.logger import logger
from hdp_lpcm.model import LabelSequences, LatentPositions
from hdp_lpcm.network import DynamicNetwork, read_edge_list, write_edge_list
from hdp_lpcm.pydantic_utils import get_model_dump
from hdp_lpcm.simulation.generators import SimulationResult
from hdp_lpcm.simulation.spec import SimSpec
from hdp_lpcm.summary.export import label_table, position_table, read_table, write_table

EDGES_FILE = "edges.csv"
LABELS_FILE = "truth_labels.csv"
POSITIONS_FILE = "truth_positions.csv"
SPEC_FILE = "spec.json"
BUNDLE_FILE = "bundle.json"


def write_bundle(result: SimulationResult, spec: SimSpec, directory: str) -> Dict[str, Any]:
    """
    Writes a simulated network and its ground truth into `directory`.

    Returns:
        Dict[str, Any]: The manifest that was written.
    """
    os.makedirs(directory, exist_ok=True)
    logger.info("Writing simulation bundle to %s", directory)

    write_edge_list(result.net, os.path.join(directory, EDGES_FILE))
    write_table(label_table(result.truth.labels), os.path.join(directory, LABELS_FILE))
    write_table(position_table(result.truth.positions), os.path.join(directory, POSITIONS_FILE))

    with open(os.path.join(directory, SPEC_FILE), "w", encoding="utf-8") as f:
        json.dump(get_model_dump(spec, mode="json"), f, indent=2)

    manifest = {
        "files": {"edges": EDGES_FILE, "labels": LABELS_FILE, "positions": POSITIONS_FILE, "spec": SPEC_FILE},
        "n": result.net.n,
        "T": result.net.T,
        "seed": spec.seed,
        "attempts": result.attempts,
        "groups_per_time": result.truth.labels.n_occupied().tolist(),
    }
    with open(os.path.join(directory, BUNDLE_FILE), "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2)

    return manifest


def read_truth_labels(path: str) -> LabelSequences:
    """
    Reads a `t, actor, label` table (1-based) back into 0-based label sequences.
    """
    table = read_table(path).sort_values(["t", "actor"])
    n_times, n_actors = int(table["t"].max()), int(table["actor"].max())
    return LabelSequences(Z=table["label"].to_numpy().reshape(n_times, n_actors) - 1)


def read_truth_positions(path: str) -> LatentPositions:
    table = read_table(path).sort_values(["t", "actor"])
    n_times, n_actors = int(table["t"].max()), int(table["actor"].max())
    coordinates = [column for column in table.columns if column.startswith("x")]
    return LatentPositions(X=table[coordinates].to_numpy(dtype=float).reshape(n_times, n_actors, len(coordinates)))


def read_bundle_network(directory: str, n: int, T: int) -> DynamicNetwork:  # pylint: disable=invalid-name
    return read_edge_list(os.path.join(directory, EDGES_FILE), n=n, T=T)
