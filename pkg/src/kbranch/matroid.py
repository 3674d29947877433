"""The in-degree and acyclicity matroids and a weighted intersection engine.

Both matroids are parametrised by a fixed arc set ``S`` whose skeleton is a
forest. Their ground set is a list of candidate arcs (a :class:`GroundSet`);
oracles work on element indices into that list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Protocol, Sequence

from kbranch.model import Arc, NotAPolytree, heads


class UnionFind:
    """Disjoint-set forest with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already one set."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class GroundSet:
    arcs: tuple[Arc, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.arcs) != len(self.weights):
            raise ValueError("arcs and weights differ in length")
        if len(set(self.arcs)) != len(self.arcs):
            raise ValueError("duplicate arc in ground set")

    def __len__(self):
        return len(self.arcs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Arc, float]]) -> GroundSet:
        # (head, tail) order fixes every scan order inside the engine
        items = sorted(pairs, key=lambda p: (p[0][1], p[0][0]))
        return cls(tuple(a for a, _ in items), tuple(w for _, w in items))


@dataclass(frozen=True)
class FixedArcs:
    """A fixed arc set S with its heads and skeleton components over ``n`` nodes."""

    n: int
    arcs: frozenset[Arc]
    heads: frozenset[int] = field(init=False)
    component: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        uf = UnionFind(self.n)
        for u, v in self.arcs:
            if not uf.union(u, v):
                raise NotAPolytree("skeleton of the fixed arcs has a cycle")
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        object.__setattr__(self, "heads", frozenset(heads(self.arcs)))
        object.__setattr__(self, "component", tuple(uf.find(v) for v in range(self.n)))


class MatroidOracle(Protocol):
    def is_independent(self, subset: Iterable[int]) -> bool: ...

    def circuit(self, independent: Iterable[int], e: int) -> frozenset[int] | None: ...


class InDegreeMatroid:
    """Arcs are independent when none points into H(S) and no other node gets two."""

    def __init__(self, fixed: FixedArcs, ground: GroundSet):
        self.fixed = fixed
        self.ground = ground

    def is_independent(self, subset: Iterable[int]) -> bool:
        seen = set()
        for i in subset:
            h = self.ground.arcs[i][1]
            if h in self.fixed.heads or h in seen:
                return False
            seen.add(h)
        return True

    def circuit(self, independent: Iterable[int], e: int) -> frozenset[int] | None:
        h = self.ground.arcs[e][1]
        if h in self.fixed.heads:
            return frozenset([e])
        for i in independent:
            if i != e and self.ground.arcs[i][1] == h:
                return frozenset([i, e])
        return None


class AcyclicityMatroid:
    """Graphic matroid of arc skeletons after contracting the components of S."""

    def __init__(self, fixed: FixedArcs, ground: GroundSet):
        self.fixed = fixed
        self.ground = ground

    def _ends(self, i: int) -> tuple[int, int]:
        u, v = self.ground.arcs[i]
        comp = self.fixed.component
        return comp[u], comp[v]

    def is_independent(self, subset: Iterable[int]) -> bool:
        uf = UnionFind(self.fixed.n)
        return all(uf.union(*self._ends(i)) for i in subset)

    def circuit(self, independent: Iterable[int], e: int) -> frozenset[int] | None:
        a, b = self._ends(e)
        if a == b:
            return frozenset([e])
        adj: dict[int, list[tuple[int, int]]] = {}
        for i in independent:
            if i == e:
                continue
            x, y = self._ends(i)
            adj.setdefault(x, []).append((y, i))
            adj.setdefault(y, []).append((x, i))
        # the independent set is a forest, so any a-b path is the unique one
        via = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y, i in adj.get(x, ()):
                if y not in via:
                    via[y] = (x, i)
                    stack.append(y)
        if b not in via:
            return None
        out = {e}
        x = b
        while via[x] is not None:
            x, i = via[x]
            out.add(i)
        return frozenset(out)


def _exact_weights(weights: Sequence[float]) -> list[int]:
    # floats are dyadic rationals; a common power-of-two scale makes every
    # path length an exact integer
    fracs = [Fraction(w) for w in weights]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    return [int(f * scale) for f in fracs]


def max_weight_common_independent(
    ground: GroundSet, m1: MatroidOracle, m2: MatroidOracle
) -> frozenset[int]:
    """Heaviest set independent in both matroids.

    Shortest augmenting paths in the exchange graph, one element at a time,
    until the best augmentation no longer gains weight. Weights must be
    positive. Path lengths are computed exactly and ties between paths go to
    the fewest hops, then to the lowest element indices.
    """
    m = len(ground)
    if any(w <= 0 for w in ground.weights):
        raise ValueError("weights must be strictly positive")
    w = _exact_weights(ground.weights)
    current: set[int] = set()

    while True:
        inside = sorted(current)
        outside = [x for x in range(m) if x not in current]
        sources, sinks = set(), set()
        edges: list[list[int]] = [[] for _ in range(m)]
        for x in outside:
            c1 = m1.circuit(inside, x)
            if c1 is None:
                sources.add(x)
                for y in inside:
                    edges[y].append(x)
            else:
                for y in sorted(c1 - {x}):
                    edges[y].append(x)
            c2 = m2.circuit(inside, x)
            if c2 is None:
                sinks.add(x)
                for y in inside:
                    edges[x].append(y)
            else:
                for y in sorted(c2 - {x}):
                    edges[x].append(y)
        if not sources or not sinks:
            break

        # Bellman-Ford on vertex lengths: -w outside, +w inside
        length = [-w[i] if i not in current else w[i] for i in range(m)]
        dist: dict[int, tuple[int, int]] = {x: (length[x], 0) for x in sorted(sources)}
        pred: dict[int, int | None] = {x: None for x in dist}
        for _ in range(m):
            changed = False
            for y in range(m):
                if y not in dist:
                    continue
                dy, hy = dist[y]
                for x in edges[y]:
                    cand = (dy + length[x], hy + 1)
                    if x not in dist or cand < dist[x]:
                        dist[x] = cand
                        pred[x] = y
                        changed = True
            if not changed:
                break
        reached = [x for x in sorted(sinks) if x in dist]
        if not reached:
            break
        end = min(reached, key=lambda x: (dist[x], x))
        if dist[end][0] >= 0:
            break
        path = []
        x: int | None = end
        while x is not None:
            path.append(x)
            x = pred[x]
        current.symmetric_difference_update(path)

    return frozenset(current)


def brute_force_common_independent(
    ground: GroundSet, m1: MatroidOracle, m2: MatroidOracle
) -> frozenset[int]:
    """Exhaustive search over every subset; ties go to the smallest sorted index list."""
    m = len(ground)
    if m > 20:
        raise ValueError("ground set too large for exhaustive search")
    w = _exact_weights(ground.weights) if m else []
    best_key = None
    best: frozenset[int] = frozenset()
    for mask in range(1 << m):
        subset = [i for i in range(m) if mask >> i & 1]
        if not (m1.is_independent(subset) and m2.is_independent(subset)):
            continue
        key = (-sum(w[i] for i in subset), subset)
        if best_key is None or key < best_key:
            best_key, best = key, frozenset(subset)
    return best
