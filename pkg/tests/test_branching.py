import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbranch.branching import max_weight_branching
from kbranch.matroid import AcyclicityMatroid, FixedArcs, GroundSet, InDegreeMatroid, max_weight_common_independent
from kbranch.model import min_deletion_size, skeleton_is_acyclic


def brute_branching(pool):
    best = 0.0
    for r in range(len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            arcs = [a for a, _ in combo]
            if min_deletion_size(arcs) == 0 and skeleton_is_acyclic(arcs):
                best = max(best, sum(w for _, w in combo))
    return best


def test_seven_node_singletons():
    # weights f_v({u}) - f_v(empty) on nodes 1..7 -> indices 0..6
    pool = [((0, 2), 1.0), ((0, 3), 0.1), ((0, 4), 0.5), ((2, 5), 0.8), ((4, 6), 0.9)]
    got = max_weight_branching(7, pool)
    assert got == {a for a, _ in pool}
    assert sum(w for a, w in pool if a in got) == pytest.approx(3.3)
    assert brute_branching(pool) == pytest.approx(3.3)


def test_empty_and_two_cycle():
    assert max_weight_branching(3, []) == frozenset()
    assert max_weight_branching(2, [((0, 1), 1.0), ((1, 0), 2.0)]) == {(1, 0)}


def test_nonpositive_arcs_dropped():
    assert max_weight_branching(2, [((0, 1), 0.0), ((1, 0), -1.0)]) == frozenset()


def test_bad_input():
    with pytest.raises(ValueError):
        max_weight_branching(2, [((0, 0), 1.0)])
    with pytest.raises(ValueError):
        max_weight_branching(2, [((0, 1), 1.0), ((0, 1), 2.0)])


def test_contraction_is_needed():
    # the greedy best-in choice forms the cycle 0->1->2->0; the optimum enters it from 3
    pool = [((0, 1), 5.0), ((1, 2), 5.0), ((2, 0), 5.0), ((3, 0), 1.0), ((3, 1), 4.0)]
    got = max_weight_branching(4, pool)
    assert sum(w for a, w in pool if a in got) == pytest.approx(brute_branching(pool)) == pytest.approx(14.0)


pools = st.integers(2, 12).flatmap(
    lambda n: st.lists(
        st.tuples(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda a: a[0] != a[1]),
            st.integers(1, 20).map(lambda x: x / 8),
        ),
        max_size=12,
        unique_by=lambda p: p[0],
    ).map(lambda pool: (n, pool))
)


@settings(max_examples=150, deadline=None)
@given(pools)
def test_matches_engine_and_brute_force(case):
    n, pool = case
    got = max_weight_branching(n, pool)
    assert min_deletion_size(got) == 0 and skeleton_is_acyclic(got)
    weight = sum(w for a, w in pool if a in got)
    ground = GroundSet.from_pairs(pool)
    fixed = FixedArcs(n, frozenset())
    chosen = max_weight_common_independent(ground, InDegreeMatroid(fixed, ground), AcyclicityMatroid(fixed, ground))
    assert weight == pytest.approx(sum(ground.weights[i] for i in chosen), abs=1e-9)
    assert weight == pytest.approx(brute_branching(pool), abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_dense_random(seed):
    rng = random.Random(seed)
    n = 12
    pool = [((u, v), rng.random()) for u in range(n) for v in range(n) if u != v]
    got = max_weight_branching(n, pool)
    ground = GroundSet.from_pairs(pool)
    fixed = FixedArcs(n, frozenset())
    chosen = max_weight_common_independent(ground, InDegreeMatroid(fixed, ground), AcyclicityMatroid(fixed, ground))
    w = dict(pool)
    assert sum(w[a] for a in got) == pytest.approx(sum(ground.weights[i] for i in chosen), abs=1e-9)
