# pylint: disable=missing-module-docstring

from .dynamic_network import DynamicNetwork
from .edge_list import export_edge_list, load_edge_list, read_edge_list, write_edge_list
from .preprocessing import filter_min_degree, window_aggregate
