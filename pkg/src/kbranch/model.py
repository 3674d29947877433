"""Instances, score tables, score-file I/O and structural validators.

An instance holds, for every node, a table of candidate parent sets with
their local scores. Arcs are ``(tail, head)`` pairs of node indices; an arc
set is any iterable of such pairs (a frozenset in practice).
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

Arc = tuple[int, int]


class ScoreFileError(ValueError):
    """Raised when a score file does not follow the expected grammar."""


class UnlistedParentSet(KeyError):
    """Raised when an arc set gives a node a parent set with no table entry."""

    def __init__(self, node: int, parents: tuple[int, ...]):
        super().__init__(f"node {node} has unlisted parent set {parents}")
        self.node = node
        self.parents = parents


class NotAPolytree(ValueError):
    """Raised when an operation needs an acyclic skeleton and did not get one."""


class DuplicateEntryWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ParentSetEntry:
    parents: tuple[int, ...]
    score: float


@dataclass(frozen=True)
class Instance:
    """Node names plus one table of scored parent sets per node.

    A node whose table has no entry for the empty set scores 0.0 with no
    parents. Non-empty parent sets that are not listed are not allowed.
    """

    names: tuple[str, ...]
    tables: tuple[tuple[ParentSetEntry, ...], ...]
    _lookup: tuple[dict, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.names) != len(self.tables):
            raise ValueError("names and tables differ in length")
        if len(set(self.names)) != len(self.names) or any(not s for s in self.names):
            raise ValueError("node names must be unique and non-empty")
        n = len(self.names)
        lookup = []
        for v, table in enumerate(self.tables):
            d = {}
            for entry in table:
                ps = entry.parents
                if v in ps:
                    raise ValueError(f"node {v} lists itself as a parent")
                if list(ps) != sorted(set(ps)) or any(not 0 <= p < n for p in ps):
                    raise ValueError(f"bad parent set {ps} for node {v}")
                if ps in d:
                    raise ValueError(f"parent set {ps} listed twice for node {v}")
                d[ps] = entry.score
            lookup.append(d)
        object.__setattr__(self, "_lookup", tuple(lookup))

    @property
    def n(self) -> int:
        return len(self.names)

    def score_of(self, v: int, parents: tuple[int, ...]) -> float | None:
        """Local score of ``parents`` for ``v``; None when the set is not allowed."""
        s = self._lookup[v].get(parents)
        if s is None and not parents:
            return 0.0
        return s

    def choices(self, v: int) -> list[ParentSetEntry]:
        """All allowed parent sets of ``v``: the implicit empty set first when unlisted."""
        table = list(self.tables[v])
        if () not in self._lookup[v]:
            table.insert(0, ParentSetEntry((), 0.0))
        return table

    def index(self, name: str) -> int:
        return self.names.index(name)


def parse_scores(text: str) -> Instance:
    lines = [ln.split() for ln in text.splitlines()]
    lines = [toks for toks in lines if toks]
    if not lines:
        raise ScoreFileError("empty score file")
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            raise ScoreFileError(f"unexpected end of file, expected {what}")
        pos += 1
        return pos, lines[pos - 1]

    def as_int(tok, lineno, what):
        try:
            value = int(tok)
        except ValueError:
            raise ScoreFileError(f"line {lineno}: {what} must be an integer, got {tok!r}") from None
        if value < 0:
            raise ScoreFileError(f"line {lineno}: negative {what}")
        return value

    lineno, header = take("variable count")
    if len(header) != 1:
        raise ScoreFileError(f"line {lineno}: header must hold only the variable count")
    count = as_int(header[0], lineno, "variable count")

    raw = []
    for _ in range(count):
        lineno, toks = take("variable header")
        if len(toks) != 2:
            raise ScoreFileError(f"line {lineno}: expected '<name> <setCount>'")
        name = toks[0]
        nsets = as_int(toks[1], lineno, "set count")
        rows = []
        for _ in range(nsets):
            lineno, toks = take(f"parent set line for {name}")
            if len(toks) < 2:
                raise ScoreFileError(f"line {lineno}: expected '<score> <parentCount> ...'")
            try:
                score = float(toks[0])
            except ValueError:
                raise ScoreFileError(f"line {lineno}: bad score {toks[0]!r}") from None
            k = as_int(toks[1], lineno, "parent count")
            if len(toks) != 2 + k:
                raise ScoreFileError(f"line {lineno}: expected {k} parent names")
            rows.append((lineno, score, toks[2:]))
        raw.append((name, rows))
    if pos != len(lines):
        raise ScoreFileError(f"line {pos + 1}: trailing content after last variable")

    names = tuple(name for name, _ in raw)
    if len(set(names)) != len(names):
        raise ScoreFileError("duplicate variable name")
    index = {name: i for i, name in enumerate(names)}

    tables = []
    for v, (name, rows) in enumerate(raw):
        best: dict[tuple[int, ...], float] = {}
        for lineno, score, parent_names in rows:
            try:
                ps = [index[p] for p in parent_names]
            except KeyError as exc:
                raise ScoreFileError(f"line {lineno}: unknown parent {exc.args[0]!r}") from None
            if v in ps:
                raise ScoreFileError(f"line {lineno}: {name} lists itself as a parent")
            if len(set(ps)) != len(ps):
                raise ScoreFileError(f"line {lineno}: repeated parent")
            key = tuple(sorted(ps))
            if key in best:
                warnings.warn(
                    f"{name}: parent set {parent_names} listed twice; keeping the larger score",
                    DuplicateEntryWarning,
                    stacklevel=2,
                )
                best[key] = max(best[key], score)
            else:
                best[key] = score
        tables.append(tuple(ParentSetEntry(ps, s) for ps, s in best.items()))
    return Instance(names, tuple(tables))


def write_scores(instance: Instance) -> str:
    out = [str(instance.n)]
    for name, table in zip(instance.names, instance.tables):
        out.append(f"{name} {len(table)}")
        for entry in table:
            parents = " ".join(instance.names[p] for p in entry.parents)
            out.append(f"{entry.score!r} {len(entry.parents)} {parents}".rstrip())
    return "\n".join(out) + "\n"


def parent_map(arcs: Iterable[Arc]) -> dict[int, tuple[int, ...]]:
    parents = defaultdict(list)
    for u, v in arcs:
        parents[v].append(u)
    return {v: tuple(sorted(ps)) for v, ps in parents.items()}


def heads(arcs: Iterable[Arc]) -> set[int]:
    return {v for _, v in arcs}


def skeleton(arcs: Iterable[Arc]) -> set[frozenset[int]]:
    return {frozenset(a) for a in arcs}


def sorted_arcs(arcs: Iterable[Arc]) -> list[Arc]:
    return sorted(set(arcs))


def evaluate_score(instance: Instance, arcs: Iterable[Arc]) -> float:
    """Sum of local scores, added up in node order."""
    pm = parent_map(arcs)
    total = 0.0
    for v in range(instance.n):
        ps = pm.get(v, ())
        s = instance.score_of(v, ps)
        if s is None:
            raise UnlistedParentSet(v, ps)
        total += s
    return total


def skeleton_is_acyclic(arcs: Iterable[Arc]) -> bool:
    # each arc is its own skeleton edge, so (u, v) and (v, u) close a 2-cycle
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    for u, v in set(arcs):
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def min_deletion_size(arcs: Iterable[Arc]) -> int:
    indeg = defaultdict(int)
    for _, v in set(arcs):
        indeg[v] += 1
    return sum(d - 1 for d in indeg.values() if d > 1)


def is_k_branching(arcs: Iterable[Arc], k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    arcs = set(arcs)
    return skeleton_is_acyclic(arcs) and min_deletion_size(arcs) <= k


def canonical_deletion_set(arcs: Iterable[Arc]) -> list[Arc]:
    """Per node keep the lexicographically smallest incoming arc and delete the rest."""
    arcs = set(arcs)
    if not skeleton_is_acyclic(arcs):
        raise NotAPolytree("arc set has a cyclic skeleton")
    out = []
    for v, ps in parent_map(arcs).items():
        out.extend((u, v) for u in ps[1:])
    return sorted(out)


def to_dot(instance: Instance, arcs: Iterable[Arc], deletion_set: Iterable[Arc] = ()) -> str:
    deleted = set(deletion_set)
    lines = ["digraph kbranching {"]
    for v, name in enumerate(instance.names):
        lines.append(f'  n{v} [label="{name}"];')
    for u, v in sorted_arcs(arcs):
        style = " [style=dashed]" if (u, v) in deleted else ""
        lines.append(f"  n{u} -> n{v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
