"""Optimal k-branchings: guess enumeration, the in-tree search and the k=0 fast path."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from kbranch.branching import max_weight_branching
from kbranch.matroid import (
    AcyclicityMatroid,
    FixedArcs,
    GroundSet,
    InDegreeMatroid,
    max_weight_common_independent,
)
from kbranch.model import (
    Arc,
    Instance,
    canonical_deletion_set,
    evaluate_score,
    is_k_branching,
    skeleton_is_acyclic,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Guess:
    """Fixed parent sets for a few nodes; ``arcs`` is the fixed arc set S."""

    assignment: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @property
    def arcs(self) -> frozenset[Arc]:
        return frozenset((u, v) for v, ps in self.assignment for u in ps)

    @property
    def deletions(self) -> int:
        return sum(len(ps) - 1 for _, ps in self.assignment)

    def as_dict(self) -> dict[int, tuple[int, ...]]:
        return dict(self.assignment)


@dataclass(frozen=True)
class Solution:
    arcs: frozenset[Arc]
    score: float
    deletion_set: tuple[Arc, ...]
    mode: str
    guess: Guess | None = None
    guess_count: int = 0

    @property
    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def beats(self, other: Solution | None) -> bool:
        """Higher score wins; equal scores go to the smaller sorted arc list."""
        if other is None or self.score > other.score:
            return True
        return self.score == other.score and self.sorted_arcs < other.sorted_arcs


def make_solution(instance: Instance, arcs, mode: str, guess: Guess | None = None) -> Solution:
    arcs = frozenset(arcs)
    return Solution(
        arcs=arcs,
        score=evaluate_score(instance, arcs),
        deletion_set=tuple(canonical_deletion_set(arcs)),
        mode=mode,
        guess=guess,
    )


def enumerate_guesses(instance: Instance, k: int) -> Iterator[Guess]:
    """Every multi-parent assignment within budget ``k`` whose arcs form a forest.

    Yields the empty guess first, then extends in lexicographic order over
    candidates sorted by node and table position.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    candidates = [
        (v, entry.parents)
        for v in range(instance.n)
        for entry in instance.tables[v]
        if len(entry.parents) >= 2
    ]

    def extend(start, chosen, arcs, budget):
        yield Guess(tuple(chosen))
        for i in range(start, len(candidates)):
            v, ps = candidates[i]
            cost = len(ps) - 1
            if cost > budget or (chosen and v <= chosen[-1][0]):
                continue
            new_arcs = arcs | {(u, v) for u in ps}
            if not skeleton_is_acyclic(new_arcs):
                continue
            chosen.append((v, ps))
            yield from extend(i + 1, chosen, new_arcs, budget - cost)
            chosen.pop()

    yield from extend(0, [], frozenset(), k)


def _ground_for(instance: Instance, fixed_heads) -> GroundSet:
    pairs = []
    for v in range(instance.n):
        if v in fixed_heads:
            continue
        base = instance.score_of(v, ())
        for entry in instance.tables[v]:
            if len(entry.parents) == 1:
                w = entry.score - base
                if w > 0:
                    pairs.append(((entry.parents[0], v), w))
    return GroundSet.from_pairs(pairs)


def solve_guess(instance: Instance, guess: Guess, k: int | None = None, mode: str = "exhaustive") -> Solution:
    """Complete the fixed arcs of ``guess`` with the heaviest compatible single-parent arcs."""
    if k is not None and guess.deletions > k:
        raise ValueError("guess exceeds the deletion budget")
    for v, ps in guess.assignment:
        if instance.score_of(v, ps) is None:
            raise ValueError(f"guess assigns unlisted parent set {ps} to node {v}")
    fixed = FixedArcs(instance.n, guess.arcs)
    ground = _ground_for(instance, fixed.heads)
    chosen = max_weight_common_independent(
        ground, InDegreeMatroid(fixed, ground), AcyclicityMatroid(fixed, ground)
    )
    arcs = fixed.arcs | {ground.arcs[i] for i in chosen}
    return make_solution(instance, arcs, mode, guess)


def _best_of(instance: Instance, guesses: Sequence[Guess], k: int) -> Solution | None:
    best = None
    for g in guesses:
        sol = solve_guess(instance, g, k)
        if sol.beats(best):
            best = sol
    return best


def solve_k_branching(instance: Instance, k: int, jobs: int = 1) -> Solution:
    """Best k-branching over all guesses; ``jobs > 1`` fans guesses out to processes."""
    guesses = list(enumerate_guesses(instance, k))
    log.debug("%d guesses for k=%d", len(guesses), k)
    if jobs <= 1 or len(guesses) < 2 * jobs:
        best = _best_of(instance, guesses, k)
    else:
        chunks = [guesses[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_best_of, [instance] * jobs, chunks, [k] * jobs))
        best = None
        for sol in results:
            if sol is not None and sol.beats(best):
                best = sol
    _check(instance, best, k)
    return Solution(best.arcs, best.score, best.deletion_set, "exhaustive", best.guess, len(guesses))


def solve_edmonds(instance: Instance) -> Solution:
    """Best branching (k = 0) straight from Chu-Liu/Edmonds."""
    arcs = []
    for v in range(instance.n):
        base = instance.score_of(v, ())
        for entry in instance.tables[v]:
            if len(entry.parents) == 1:
                arcs.append(((entry.parents[0], v), entry.score - base))
    sol = make_solution(instance, max_weight_branching(instance.n, arcs), "edmonds")
    _check(instance, sol, 0)
    return sol


def intree_cost(parents: tuple[int, ...]) -> int:
    # a lone parent cannot be spared by the in-degree rule, so it is paid in full
    return len(parents) - 1 if len(parents) > 1 else 1


def enumerate_intree_guesses(instance: Instance, k: int) -> Iterator[Guess]:
    """Fixed arc sets that form an in-tree, grown leaf by leaf from each root.

    A node joins the tree with one of its listed non-empty parent sets; the
    budget charges ``|P| - 1`` for several parents and 1 for a single one.
    Each distinct arc set is yielded once, the empty one first.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    seen: set[frozenset] = set()
    yield Guess()

    def grow(assign, members, leaves, used):
        if assign:
            key = frozenset(assign.items())
            if key in seen:
                return
            seen.add(key)
            yield Guess(tuple(sorted(assign.items())))
        for leaf in sorted(leaves):
            for entry in instance.tables[leaf]:
                ps = entry.parents
                if not ps:
                    continue
                cost = intree_cost(ps)
                if used + cost > k or any(p in members for p in ps):
                    continue
                assign[leaf] = ps
                yield from grow(assign, members | set(ps), (leaves - {leaf}) | set(ps), used + cost)
                del assign[leaf]

    for root in range(instance.n):
        yield from grow({}, {root}, {root}, 0)


def solve_intree_fpt(instance: Instance, k: int) -> Solution:
    """Best k-branching whose fixed arc set is an in-tree (possibly empty)."""
    best = None
    count = 0
    for g in enumerate_intree_guesses(instance, k):
        count += 1
        sol = solve_guess(instance, g, mode="intree")
        if sol.beats(best):
            best = sol
    _check(instance, best, k)
    return Solution(best.arcs, best.score, best.deletion_set, "intree", best.guess, count)


def _check(instance: Instance, sol: Solution, k: int) -> None:
    if not is_k_branching(sol.arcs, k):
        raise AssertionError(f"solver produced an arc set that is not a {k}-branching")
    if sol.score != evaluate_score(instance, sol.arcs):
        raise AssertionError("solver score disagrees with the recomputed score")
