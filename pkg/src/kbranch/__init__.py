"""Score-optimal k-branchings (polytrees that are at most k arcs away from a branching)."""

from kbranch.model import (
    Instance,
    ParentSetEntry,
    canonical_deletion_set,
    evaluate_score,
    is_k_branching,
    min_deletion_size,
    parse_scores,
    skeleton_is_acyclic,
    write_scores,
)
from kbranch.oracle import brute_force_optimum
from kbranch.solver import Guess, Solution, solve_edmonds, solve_guess, solve_intree_fpt, solve_k_branching

__version__ = "0.1.0"

__all__ = [
    "Guess",
    "Instance",
    "ParentSetEntry",
    "Solution",
    "brute_force_optimum",
    "canonical_deletion_set",
    "evaluate_score",
    "is_k_branching",
    "min_deletion_size",
    "parse_scores",
    "skeleton_is_acyclic",
    "solve_edmonds",
    "solve_guess",
    "solve_intree_fpt",
    "solve_k_branching",
    "write_scores",
]
