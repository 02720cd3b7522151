"""
Constants for default values.
"""

DEFAULT_OUT_DIR = "hdp-lpcm-out"
DEFAULT_CHAIN_FORMAT = "jsonl"
WORKERS_ENV = "HDP_LPCM_WORKERS"

MANIFEST_FILENAME = "manifest.json"
REPORT_FILENAME = "report.json"
NETWORK_FILENAME = "network.csv"
ACTORS_FILENAME = "actors.csv"
CHAIN_FILENAME = "chain-{index}.{suffix}"
CHECKPOINT_FILENAME = "chain-{index}.checkpoint.json"
REPLICATION_DIRNAME = "replication-{index:03d}"

SUMMARY_FILENAME = "summary.json"
SELECTED_LABELS_FILENAME = "selected_labels.csv"
COASSIGNMENT_FILENAME = "coassignment.csv"
GROUP_COUNTS_FILENAME = "group_counts.csv"
POSITIONS_FILENAME = "positions.csv"
MEAN_POSITIONS_FILENAME = "positions_mean.csv"
GROUPS_FILENAME = "groups.csv"
ALLUVIAL_FILENAME = "alluvial.csv"
EDGES_FILENAME = "edges.csv"
EDGE_PROBABILITIES_FILENAME = "edge_probabilities.csv"
FORECAST_FILENAME = "forecast.csv"

METRICS_FILENAME = "metrics.csv"
PER_TIME_FILENAME = "per_time.csv"

TRACES_FILENAME = "traces.csv"
ACF_FILENAME = "acf.csv"
ESS_FILENAME = "ess.csv"
KDE_FILENAME = "kde.csv"
DIAGNOSED_QUANTITIES = ["log_post", "beta0", "lambda"]
DEFAULT_MAX_LAG = 100

EXIT_SUCCESS = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4
