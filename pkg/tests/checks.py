"""Exhaustive matroid checks over bitmask-encoded subsets of small ground sets."""

import random

import numpy as np

from kbranch.matroid import FixedArcs, GroundSet
from kbranch.model import skeleton_is_acyclic


def members(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def independence_table(oracle, m):
    return [oracle.is_independent(members(mask)) for mask in range(1 << m)]


def axiom_violations(ind, m):
    """Count failures of the empty-set, hereditary and exchange axioms."""
    bad = 0 if ind[0] else 1
    indep = np.array([mask for mask in range(1 << m) if ind[mask]], dtype=np.int64)
    pops = np.array([bin(int(x)).count("1") for x in indep], dtype=np.int64)
    for a in indep:
        a = int(a)
        for i in members(a):
            if not ind[a & ~(1 << i)]:
                bad += 1
        ext = 0
        for i in range(m):
            if not a >> i & 1 and ind[a | 1 << i]:
                ext |= 1 << i
        larger = indep[pops > bin(a).count("1")]
        bad += int(np.count_nonzero((larger & ~a & ext) == 0))
    return bad


def circuits_in(ind, mask, e):
    """Every minimal dependent subset of ``mask | e`` (those all contain ``e`` when ``mask`` is independent)."""
    ebit = 1 << e
    found = []
    sub = mask
    while True:
        cand = sub | ebit
        if not ind[cand] and all(ind[cand & ~(1 << j)] for j in members(cand)):
            found.append(cand)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return found


def circuit_violations(oracle, ind, m):
    bad = 0
    for mask in range(1 << m):
        if not ind[mask]:
            continue
        elems = members(mask)
        for e in range(m):
            if mask >> e & 1:
                continue
            found = circuits_in(ind, mask, e)
            got = oracle.circuit(elems, e)
            if len(found) > 1:
                bad += 1
            elif not found:
                bad += got is not None
            else:
                bad += got is None or sum(1 << i for i in got) != found[0]
    return bad


def random_fixed_config(rng: random.Random, n_max=6, m_max=10):
    """Random forest-skeleton S and a ground set of arcs outside S."""
    n = rng.randint(2, n_max)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(pairs)
    s = set()
    for a in pairs[: rng.randint(0, n)]:
        if skeleton_is_acyclic(s | {a}):
            s.add(a)
    rest = [a for a in pairs if a not in s]
    m = rng.randint(1, min(m_max, len(rest)))
    ground = GroundSet.from_pairs((a, rng.uniform(0.05, 1.0)) for a in rest[:m])
    return FixedArcs(n, frozenset(s)), ground
