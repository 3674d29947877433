"""Maximum-weight branchings by Chu-Liu/Edmonds contraction."""

from __future__ import annotations

from typing import Sequence

from kbranch.matroid import _exact_weights
from kbranch.model import Arc


def max_weight_branching(n: int, arcs: Sequence[tuple[Arc, float]]) -> frozenset[Arc]:
    """Heaviest arc set with in-degree at most one and no directed cycle.

    Non-positive arcs never help and are dropped. With in-degree at most one
    every skeleton cycle is already a directed cycle, so the result is also a
    polytree.
    """
    seen = set()
    for (u, v), _ in arcs:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"bad arc {(u, v)} for {n} nodes")
        if (u, v) in seen:
            raise ValueError(f"duplicate arc {(u, v)}")
        seen.add((u, v))
    pool = [(a, w) for a, w in arcs if w > 0]
    if not pool:
        return frozenset()
    weights = _exact_weights([w for _, w in pool])
    # a virtual root with zero-weight arcs to every node turns the branching
    # problem into a spanning arborescence problem
    root = n
    edges = [(u, v, wt, i) for i, (((u, v), _), wt) in enumerate(zip(pool, weights))]
    edges += [(root, v, 0, None) for v in range(n)]
    chosen = _arborescence(list(range(n + 1)), edges, root)
    return frozenset(pool[i][0] for i in chosen if i is not None)


def _arborescence(nodes, edges, root):
    best = {}
    for e in edges:
        u, v, w, _ = e
        if u == v or v == root:
            continue
        cur = best.get(v)
        # ties: first listed edge wins, which keeps the result deterministic
        if cur is None or w > cur[2]:
            best[v] = e

    cycle = _find_cycle(nodes, best, root)
    if cycle is None:
        return [best[v][3] for v in nodes if v != root]

    in_cycle = set(cycle)
    c = max(nodes) + 1
    new_edges = []
    origin = {}
    for e in edges:
        u, v, w, ident = e
        if u in in_cycle and v in in_cycle:
            continue
        if v in in_cycle:
            ne = (u, c, w - best[v][2], len(new_edges))
        elif u in in_cycle:
            ne = (c, v, w, len(new_edges))
        else:
            ne = (u, v, w, len(new_edges))
        origin[ne[3]] = e
        new_edges.append(ne)
    new_nodes = [x for x in nodes if x not in in_cycle] + [c]
    picked = [origin[i] for i in _arborescence(new_nodes, new_edges, root)]

    entering = next(e for e in picked if e[1] in in_cycle)
    result = [e[3] for e in picked]
    result += [best[v][3] for v in cycle if v != entering[1]]
    return result


def _find_cycle(nodes, best, root):
    color = {}
    for start in nodes:
        if start == root or start in color:
            continue
        path = []
        x = start
        while x != root and x not in color:
            color[x] = start
            path.append(x)
            x = best[x][0]
        if x != root and color[x] == start:
            return path[path.index(x):]
    return None
