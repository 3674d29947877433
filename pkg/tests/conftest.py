import itertools
from importlib import resources

import pytest

from kbranch.model import evaluate_score, is_k_branching, parent_map, parse_scores, skeleton_is_acyclic

SEVEN_NODE_TEXT = resources.files("kbranch").joinpath("data/seven_node.scores").read_text()
THREE_CLAUSE_CNF = resources.files("kbranch").joinpath("data/three_clause.cnf").read_text()

# arcs of the optimal polytree drawn next to the score table, by node name
SEVEN_NODE_OPTIMUM = {("1", "3"), ("1", "5"), ("2", "5"), ("3", "6"), ("4", "6"), ("5", "7")}


@pytest.fixture
def seven():
    return parse_scores(SEVEN_NODE_TEXT)


def by_name(instance, named_arcs):
    idx = {name: v for v, name in enumerate(instance.names)}
    return frozenset((idx[str(t)], idx[str(h)]) for t, h in named_arcs)


def names_of(instance, arcs):
    return {(instance.names[u], instance.names[v]) for u, v in arcs}


def all_assignments(instance):
    """Every per-node choice of an allowed parent set, as arc sets."""
    choices = [instance.choices(v) for v in range(instance.n)]
    for combo in itertools.product(*choices):
        yield frozenset((u, v) for v, entry in enumerate(combo) for u in entry.parents)


def naive_optimum(instance, k, accept=None):
    """Best score over all assignments passing ``is_k_branching`` (and ``accept``).

    Independent of the search kernels: plain product enumeration plus the
    model validators.
    """
    best = None
    for arcs in all_assignments(instance):
        if not is_k_branching(arcs, k):
            continue
        if accept is not None and not accept(arcs):
            continue
        s = evaluate_score(instance, arcs)
        if best is None or s > best[0]:
            best = (s, arcs)
    return best


def is_intree(arcs):
    """Directed tree with every arc pointing towards one root; the empty set counts."""
    arcs = set(arcs)
    if not arcs:
        return True
    out = {}
    nodes = set()
    for u, v in arcs:
        out[u] = out.get(u, 0) + 1
        nodes.update((u, v))
    roots = [x for x in nodes if x not in out]
    return (
        len(roots) == 1
        and all(d == 1 for d in out.values())
        and len(arcs) == len(nodes) - 1
        and skeleton_is_acyclic(arcs)
    )


def multi_parent_arcs(arcs):
    pm = parent_map(arcs)
    return {(u, v) for v, ps in pm.items() if len(ps) > 1 for u in ps}


def intree_feasible(arcs, k):
    """Some set of heads covering every multi-parent node has in-tree incoming arcs within budget.

    Budget charges |P| - 1 per multi-parent node and 1 per single-parent node
    pulled into the fixed set.
    """
    pm = parent_map(arcs)
    multi = [v for v, ps in pm.items() if len(ps) > 1]
    single = [v for v, ps in pm.items() if len(ps) == 1]
    base = sum(len(pm[v]) - 1 for v in multi)
    for r in range(len(single) + 1):
        if base + r > k:
            break
        for extra in itertools.combinations(single, r):
            heads_ = set(multi) | set(extra)
            if is_intree({(u, v) for v in heads_ for u in pm[v]}):
                return True
    return False


def random_case(rng, seed, n_max=7, size_max=3, sets_max=4, n_min=2):
    from kbranch.generators import random_instance

    n = rng.randint(n_min, n_max)
    return random_instance(n, rng.randint(1, min(size_max, n - 1)), rng.randint(1, sets_max), seed)


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
