import random

import pytest

from conftest import all_assignments, naive_optimum, random_case
from kbranch import _kernels_py, kernels
from kbranch.generators import CnfFormula, random_instance, sat_to_instance
from kbranch.matroid import AcyclicityMatroid, FixedArcs, GroundSet, InDegreeMatroid
from kbranch.model import Instance, ParentSetEntry, evaluate_score, is_k_branching, min_deletion_size, skeleton_is_acyclic
from kbranch.oracle import SearchSpaceTooLarge, brute_force_common_independent, brute_force_optimum, flatten_choices


def lexmin_optimum(instance, k):
    best = naive_optimum(instance, k)[0]
    ties = [sorted(a) for a in all_assignments(instance) if is_k_branching(a, k) and evaluate_score(instance, a) == best]
    return best, min(ties)


@pytest.mark.parametrize("k,score", [(0, 3.4), (1, 3.9), (2, 4.0), (3, 4.0)])
def test_seven_node(seven, k, score):
    sol = brute_force_optimum(seven, k)
    assert sol.score == pytest.approx(score, abs=1e-12)
    assert (sol.score, sorted(sol.arcs)) == lexmin_optimum(seven, k)


def test_single_node():
    inst = Instance(("a",), ((ParentSetEntry((), -2.5),),))
    sol = brute_force_optimum(inst, 0)
    assert sol.arcs == frozenset() and sol.score == -2.5
    assert brute_force_optimum(Instance((), ()), 0).score == 0.0


def test_cap():
    inst = random_instance(12, 2, 4, 0)
    with pytest.raises(SearchSpaceTooLarge):
        brute_force_optimum(inst, 1, cap=1000)
    with pytest.raises(ValueError):
        brute_force_optimum(inst, -1)


@pytest.mark.parametrize("seed", range(30))
def test_matches_naive_enumeration_with_tie_break(seed):
    rng = random.Random(seed)
    inst = random_case(rng, seed, n_max=6)
    for k in range(3):
        sol = brute_force_optimum(inst, k)
        assert (sol.score, sorted(sol.arcs)) == lexmin_optimum(inst, k)


def test_tie_heavy_reduction_instance():
    inst, meta = sat_to_instance(CnfFormula(2, ((1, -2), (-1, 2))))
    for k in (0, 2, meta.k):
        sol = brute_force_optimum(inst, k)
        assert (sol.score, sorted(sol.arcs)) == lexmin_optimum(inst, k)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernel not built")
@pytest.mark.parametrize("seed", range(40))
def test_compiled_and_python_kernels_agree(seed):
    from kbranch import _kernels

    rng = random.Random(seed)
    inst = random_case(rng, seed, n_max=8, sets_max=4)
    node_start, scores, par_start, parents, _ = flatten_choices(inst)
    for k in range(4):
        args = (inst.n, node_start, scores, par_start, parents, k)
        assert _kernels.search_assignments(*args) == _kernels_py.search_assignments(*args)


def _pinned(instance, arcs):
    """Instance whose only good assignment is ``arcs``: dropping any parent set costs 100."""
    pm = {}
    for u, v in arcs:
        pm.setdefault(v, []).append(u)
    tables = []
    for v in range(instance.n):
        if v in pm:
            tables.append((ParentSetEntry((), -100.0), ParentSetEntry(tuple(sorted(pm[v])), 0.0)))
        else:
            tables.append(())
    return Instance(instance.names, tuple(tables))


def test_feasible_set_matches_validators():
    rng = random.Random(3)
    seen = {True: 0, False: 0}
    while sum(seen.values()) < 100:
        seed = rng.randrange(10**6)
        inst = random_case(rng, seed, n_max=7, sets_max=4)
        k = rng.randint(0, 3)
        arcs = frozenset(rng.choice(list(all_assignments(inst))))
        feasible = skeleton_is_acyclic(arcs) and min_deletion_size(arcs) <= k
        got = brute_force_optimum(_pinned(inst, arcs), k)
        assert (got.arcs == arcs) == feasible
        seen[feasible] += 1
    assert min(seen.values()) > 10


def test_common_independent_brute_force():
    fixed = FixedArcs(7, frozenset({(0, 4), (1, 4), (2, 5), (3, 5)}))
    g = GroundSet.from_pairs([((0, 2), 1.0), ((0, 3), 0.1), ((4, 6), 0.9)])
    got = brute_force_common_independent(g, InDegreeMatroid(fixed, g), AcyclicityMatroid(fixed, g))
    assert sum(g.weights[i] for i in got) == pytest.approx(1.9)
    single = GroundSet.from_pairs([((0, 1), 0.3)])
    free = FixedArcs(2, frozenset())
    assert brute_force_common_independent(single, InDegreeMatroid(free, single), AcyclicityMatroid(free, single)) == {0}
