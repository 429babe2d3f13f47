"""Heuristic search for class-level dependency refactorings.

A project is a directed graph of class dependencies partitioned into
modules. Search adds intra-module edges and removes inter-module edges until
every module pair shares at most one edge and cohesion reaches a chosen
fraction of its maximum; a repair pass then restores lost dependencies.
"""

from .graph import (
    Action,
    ActionKind,
    DependencyClosure,
    Edge,
    EdgeKind,
    ModulePartition,
    ProjectState,
    apply_action,
    classify_edge,
    count_inter_between,
    max_intra_edges,
    transitive_closure,
    validity_violations,
)
from .problem import RefactorProblem, applicable_actions, full_actions, goal_test
from .repair import RepairOutcome, repair
from .search import SearchLimits, SearchOutcome, SearchStatus, best_first_search

__version__ = "0.1.0"
