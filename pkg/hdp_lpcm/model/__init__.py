# pylint: disable=missing-module-docstring

from .alignment import align_configuration
from .densities import (
    emission_log_densities,
    emission_log_density,
    label_log_densities,
    trajectory_log_density,
)
from .likelihood import (
    distance_tensor,
    edge_logit,
    edge_probability,
    network_log_likelihood,
    position_log_likelihood_delta,
)
from .posterior import log_posterior, log_prior
from .state import (
    GroupParams,
    HyperparamToggles,
    Hyperparams,
    LabelSequences,
    LatentPositions,
    ModelState,
    TransitionStructure,
)
