# pylint: disable=missing-module-docstring

from .bundle import read_bundle_network, read_truth_labels, read_truth_positions, write_bundle
from .generators import (
    SimulationResult,
    attempt_seed,
    sample_generative,
    sample_network,
    sample_trajectories,
    simulate_from_spec,
    simulate_homogeneous,
    simulate_inhomogeneous,
    simulate_replications,
    transition_row_from_locations,
)
from .spec import PRESETS, SimSpec, homogeneous_spec, inhomogeneous_spec
