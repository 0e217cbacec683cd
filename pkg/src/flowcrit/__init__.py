"""Group-valued nowhere-zero flows, flow-critical graphs and their density bounds."""

from .groups import Group, make_group, parse_boundary
from .multigraph import GraphError, Multigraph, Partition, contract, from_edge_list
from .flows import BorderedGraph, Flow, check_flow, count_nz_flows, count_nz_flows_dc, find_nz_flow, has_nz_flow
from .criticality import CriticalityVerdict, critical_boundaries, find_flow_critical_contraction, is_flow_critical
from .canon import canonical_form, is_isomorphic
from .topology import GenusBudgetExceeded, GenusCertificate, RotationSystem, euler_genus, is_planar

__all__ = [
    "BorderedGraph", "CriticalityVerdict", "Flow", "GenusBudgetExceeded", "GenusCertificate", "GraphError",
    "Group", "Multigraph", "Partition", "RotationSystem", "canonical_form", "check_flow", "contract",
    "count_nz_flows", "count_nz_flows_dc", "critical_boundaries", "euler_genus", "find_flow_critical_contraction",
    "find_nz_flow", "from_edge_list", "has_nz_flow", "is_flow_critical", "is_isomorphic", "is_planar",
    "make_group", "parse_boundary",
]
__version__ = "0.1.0"
