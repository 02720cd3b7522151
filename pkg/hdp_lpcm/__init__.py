# pylint: disable=missing-module-docstring, wrong-import-position

__version__ = "0.1.0"

from .model import HyperparamToggles, Hyperparams, ModelState, log_posterior
from .network import DynamicNetwork, filter_min_degree, load_edge_list, read_edge_list, window_aggregate
from .sampling import Chain, SamplerConfig, read_chain, run_chain, write_chain
from .simulation import SimSpec, homogeneous_spec, inhomogeneous_spec, sample_generative
from .summary import select_partition, summarize_partition
