# pylint: disable=missing-module-docstring

from .auxiliary import (
    sample_aux_tables,
    sample_beta,
    sample_initial_distribution,
    sample_overrides,
    sample_transition_rows,
)
from .chain import Chain, GroupParamMeans, RngProvenance
from .conditionals import sample_group_means, sample_group_variances, sample_lambda
from .config import SamplerConfig
from .counts import AuxCounts, TransitionCounts, compute_transition_counts
from .engine import gibbs_sweep, run_chain
from .hyperparams import default_hyperparams, sample_concentration_escobar_west, sample_hyperparams
from .initialization import initialize_state
from .labels import BackwardMessages, backward_pass, brute_force_label_posterior, sample_label_sequences, sample_labels
from .metropolis import mh_update_intercept, mh_update_positions, tune_step_sizes
from .persistence import load_checkpoint, read_chain, save_checkpoint, write_chain
from .random import make_rng
