"""Permutation-cycle solver for the assignment problem and the TSP."""

from .core import (
    INF,
    CostMatrix,
    Cycle,
    Derangement,
    PermSet,
    ValuedCycle,
    apply_cycle_set,
    cycle_value,
    derangement_value,
    is_tour,
)
from .driver import SolveReport, solve_instance
from .greedy import GreedyConfig, candidates_from_path, greedy_step, grow_trial_path, run_greedy
from .instances import gen_instance, load_example2, parse_matrix, render_matrix
from .negcycle import (
    PathTable,
    ReducedMatrix,
    build_reduced,
    find_negative_cycle,
    fw_pass,
    recover_path,
    solve_assignment,
)
from .patching import PatchResult, collect_bounded_cycles, complete_tour, patch_to_tour
from .rowmin import RowForm, SortedRowIndex, arc_to_perm, build_min_index, build_row_form

__all__ = [
    "INF",
    "CostMatrix",
    "Cycle",
    "Derangement",
    "PermSet",
    "ValuedCycle",
    "apply_cycle_set",
    "cycle_value",
    "derangement_value",
    "is_tour",
    "SolveReport",
    "solve_instance",
    "GreedyConfig",
    "grow_trial_path",
    "candidates_from_path",
    "greedy_step",
    "run_greedy",
    "gen_instance",
    "load_example2",
    "parse_matrix",
    "render_matrix",
    "PathTable",
    "ReducedMatrix",
    "build_reduced",
    "find_negative_cycle",
    "fw_pass",
    "recover_path",
    "solve_assignment",
    "PatchResult",
    "collect_bounded_cycles",
    "complete_tour",
    "patch_to_tour",
    "RowForm",
    "SortedRowIndex",
    "arc_to_perm",
    "build_min_index",
    "build_row_form",
]

__version__ = "0.1.0"
