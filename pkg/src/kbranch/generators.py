"""Random instances, the 3-SAT-2 reduction, and a small DIMACS reader."""

from __future__ import annotations

import random
from math import comb
from dataclasses import dataclass

from kbranch.model import Instance, ParentSetEntry


class NotThreeSatTwo(ValueError):
    """Formula has a clause of the wrong size or a literal used more than twice."""


class DimacsError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        counts: dict[int, int] = {}
        for j, clause in enumerate(self.clauses):
            if not 1 <= len(clause) <= 3:
                raise NotThreeSatTwo(f"clause {j + 1} has {len(clause)} literals")
            if len(set(clause)) != len(clause):
                raise NotThreeSatTwo(f"clause {j + 1} repeats a literal")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise NotThreeSatTwo(f"clause {j + 1} has bad literal {lit}")
                counts[lit] = counts.get(lit, 0) + 1
                if counts[lit] > 2:
                    raise NotThreeSatTwo(f"literal {lit} occurs in more than two clauses")

    def satisfiable(self) -> bool:
        """Truth-table check; meant for tiny formulas."""
        n = self.variable_count
        for bits in range(1 << n):
            if all(any((bits >> (abs(l) - 1) & 1) == (l > 0) for l in c) for c in self.clauses):
                return True
        return False


@dataclass(frozen=True)
class ReductionMeta:
    k: int
    threshold: float
    node_names: dict[str, int]


def parse_dimacs(text: str) -> CnfFormula:
    nvars = nclauses = None
    clauses, current = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0] in ("c", "%"):
            continue
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] != "cnf":
                raise DimacsError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                nvars, nclauses = int(toks[2]), int(toks[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: bad header counts") from None
            continue
        if nvars is None:
            raise DimacsError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in toks:
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > nvars:
                raise DimacsError(f"line {lineno}: literal {lit} exceeds {nvars} variables")
            else:
                current.append(lit)
    if nvars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if len(clauses) != nclauses:
        raise DimacsError(f"header promises {nclauses} clauses, found {len(clauses)}")
    return CnfFormula(nvars, tuple(clauses))


def write_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.variable_count} {len(phi.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


def sat_to_instance(phi: CnfFormula) -> tuple[Instance, ReductionMeta]:
    """Score table whose best (2n+m)-branching reaches 2(n+m) iff ``phi`` is satisfiable."""
    phi.validate()
    n, m = phi.variable_count, len(phi.clauses)
    names: list[str] = []
    for i in range(1, n + 1):
        names += [f"p{i}", f"x{i}", f"x{i}_1", f"x{i}_2", f"nx{i}_1", f"nx{i}_2"]
    for j in range(1, m + 1):
        names += [f"C{j}", f"p{n + j}"]
    idx = {name: v for v, name in enumerate(names)}
    tables: dict[str, list[tuple[tuple[str, ...], float]]] = {name: [] for name in names}

    # the l-th clause holding a literal links to that literal's l-th copy
    seen: dict[int, int] = {}
    for j, clause in enumerate(phi.clauses, 1):
        for lit in clause:
            seen[lit] = seen.get(lit, 0) + 1
            copy = f"x{lit}_{seen[lit]}" if lit > 0 else f"nx{-lit}_{seen[lit]}"
            tables[f"C{j}"].append(((copy,), 1.0))
    for i in range(1, n + 1):
        tables[f"x{i}"] += [((f"x{i}_1", f"x{i}_2"), 1.0), ((f"nx{i}_1", f"nx{i}_2"), 1.0)]
        tables[f"p{i}"].append(((f"x{i}",) if i == 1 else (f"x{i}", f"p{i - 1}"), 1.0))
    for j in range(1, m + 1):
        tables[f"p{n + j}"].append(((f"C{j}", f"p{n + j - 1}"), 1.0))

    instance = Instance(
        tuple(names),
        tuple(
            tuple(ParentSetEntry(tuple(sorted(idx[p] for p in ps)), s) for ps, s in tables[name])
            for name in names
        ),
    )
    return instance, ReductionMeta(k=2 * n + m, threshold=float(2 * (m + n)), node_names=idx)


def random_instance(n: int, max_set_size: int, sets_per_node: int, seed: int) -> Instance:
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= max_set_size <= n - 1:
        raise ValueError("max_set_size must lie in [0, n-1]")
    if sets_per_node < 0:
        raise ValueError("sets_per_node must be non-negative")
    if sets_per_node and not max_set_size:
        raise ValueError("non-empty parent sets need max_set_size >= 1")
    rng = random.Random(seed)
    tables = []
    for v in range(n):
        others = [u for u in range(n) if u != v]
        # cannot draw more distinct sets than exist
        available = sum(comb(n - 1, s) for s in range(1, max_set_size + 1))
        want = min(sets_per_node, available)
        picked: dict[tuple[int, ...], float] = {}
        while len(picked) < want:
            size = rng.randint(1, max_set_size)
            ps = tuple(sorted(rng.sample(others, size)))
            if ps not in picked:
                picked[ps] = round(rng.random(), 6)
        tables.append(tuple(ParentSetEntry(ps, s) for ps, s in picked.items()))
    return Instance(tuple(f"v{v}" for v in range(n)), tuple(tables))
