# pylint: disable=missing-module-docstring

from .alignment import align_positions, mean_aligned_positions, procrustes_align
from .diagnostics import autocorrelation, ess_and_acf, posterior_kde
from .export import (
    alluvial_table,
    coassignment_table,
    edge_probability_table,
    edge_table,
    group_count_table,
    group_table,
    label_table,
    position_table,
    read_table,
    write_table,
)
from .metrics import (
    adjusted_rand_index,
    forecast_edge_probabilities,
    in_sample_auc,
    posterior_edge_probabilities,
    time_averaged_ari,
    time_averaged_vi,
    vi_distance,
)
from .partition import (
    PartitionSummary,
    coassignment_probabilities,
    group_count_posterior,
    partition_objective,
    select_partition,
    summarize_partition,
)
