"""Exhaustive ground-truth solvers used to check the fast ones."""

from __future__ import annotations

from math import prod

from kbranch import kernels
from kbranch.matroid import brute_force_common_independent
from kbranch.model import Instance
from kbranch.solver import Solution, make_solution

DEFAULT_CAP = 10**7

__all__ = ["DEFAULT_CAP", "SearchSpaceTooLarge", "brute_force_common_independent", "brute_force_optimum"]


class SearchSpaceTooLarge(RuntimeError):
    pass


def flatten_choices(instance: Instance):
    """Pack every node's allowed parent sets into the flat arrays the kernels take."""
    node_start, scores, par_start, parents = [0], [], [0], []
    entries = []
    for v in range(instance.n):
        for entry in instance.choices(v):
            entries.append(entry)
            scores.append(entry.score)
            parents.extend(entry.parents)
            par_start.append(len(parents))
        node_start.append(len(scores))
    return node_start, scores, par_start, parents, entries


def brute_force_optimum(instance: Instance, k: int, cap: int = DEFAULT_CAP) -> Solution:
    """Best k-branching over every per-node choice of an allowed parent set."""
    if k < 0:
        raise ValueError("k must be non-negative")
    space = prod(len(instance.choices(v)) for v in range(instance.n))
    if space > cap:
        raise SearchSpaceTooLarge(f"{space} assignments exceed the cap of {cap}")
    node_start, scores, par_start, parents, entries = flatten_choices(instance)
    found, _, picks = kernels.search_assignments(instance.n, node_start, scores, par_start, parents, k)
    if not found:
        # the all-empty assignment is always feasible
        raise AssertionError("no feasible assignment found")
    arcs = {(u, v) for v, c in enumerate(picks) for u in entries[c].parents}
    return make_solution(instance, arcs, "brute")
