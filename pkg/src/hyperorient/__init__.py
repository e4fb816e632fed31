"""(k-1, 1)-orientation of random k-uniform hypergraphs."""

from .curves import ReferenceCurves, reference
from .hypergraph import Edge, Hypergraph, ProcessState, gen_binomial, gen_uniform, process_step
from .oracle import brute_force_orient, capacity, capacity_criterion, feasible_flow
from .orient import EMPTY, OrientationTable, Outcome, RunStats, orient_all, orient_edge, verify_table
from .tracker import ComponentTracker, classify_components, susceptibility

__all__ = [
    "EMPTY",
    "ComponentTracker",
    "Edge",
    "Hypergraph",
    "OrientationTable",
    "Outcome",
    "ProcessState",
    "ReferenceCurves",
    "RunStats",
    "brute_force_orient",
    "capacity",
    "capacity_criterion",
    "classify_components",
    "feasible_flow",
    "gen_binomial",
    "gen_uniform",
    "orient_all",
    "orient_edge",
    "process_step",
    "reference",
    "susceptibility",
    "verify_table",
]
