"""Pure-Python assignment search; the reference twin of ``_kernels.pyx``."""


def search_assignments(n, node_start, choice_score, par_start, parents, k):
    """Best per-node parent-set assignment whose arcs form a k-branching.

    Choice ``c`` of node ``v`` lies in ``range(node_start[v], node_start[v+1])``
    and has parents ``parents[par_start[c]:par_start[c+1]]``. Depth-first over
    nodes in index order; a branch is cut as soon as its skeleton closes a cycle
    or its excess in-degree passes ``k``. Scores are summed in node order.
    Ties go to the lexicographically smallest sorted arc list.

    Returns ``(found, best_score, best_choices)``.
    """
    uf_parent = list(range(n))
    uf_size = [1] * n
    history = []

    def find(x):
        while uf_parent[x] != x:
            x = uf_parent[x]
        return x

    pick = [0] * n
    mark = [0] * n
    partial = [0.0] * (n + 1)
    used = [0] * (n + 1)
    cursor = [0] * n

    found = False
    best_score = 0.0
    best_choices = []
    best_arcs = None

    if n == 0:
        return True, 0.0, []

    depth = 0
    cursor[0] = node_start[0]
    while depth >= 0:
        if depth == n:
            score = partial[n]
            if not found or score > best_score:
                found, best_score = True, score
                best_choices = pick[:]
                best_arcs = None
            elif score == best_score:
                if best_arcs is None:
                    best_arcs = _arc_codes(n, best_choices, par_start, parents)
                arcs = _arc_codes(n, pick, par_start, parents)
                if arcs < best_arcs:
                    best_choices, best_arcs = pick[:], arcs
            depth -= 1
            _rollback(uf_parent, uf_size, history, mark[depth])
            continue
        c = cursor[depth]
        if c >= node_start[depth + 1]:
            depth -= 1
            if depth >= 0:
                _rollback(uf_parent, uf_size, history, mark[depth])
            continue
        cursor[depth] = c + 1
        lo, hi = par_start[c], par_start[c + 1]
        extra = hi - lo - 1 if hi - lo > 1 else 0
        if used[depth] + extra > k:
            continue
        mark[depth] = len(history)
        ok = True
        for j in range(lo, hi):
            ra, rb = find(parents[j]), find(depth)
            if ra == rb:
                ok = False
                break
            if uf_size[ra] < uf_size[rb]:
                ra, rb = rb, ra
            uf_parent[rb] = ra
            uf_size[ra] += uf_size[rb]
            history.append(rb)
        if not ok:
            _rollback(uf_parent, uf_size, history, mark[depth])
            continue
        pick[depth] = c
        partial[depth + 1] = partial[depth] + choice_score[c]
        used[depth + 1] = used[depth] + extra
        depth += 1
        if depth < n:
            cursor[depth] = node_start[depth]

    return found, best_score, best_choices


def _rollback(uf_parent, uf_size, history, mark):
    while len(history) > mark:
        rb = history.pop()
        ra = uf_parent[rb]
        uf_size[ra] -= uf_size[rb]
        uf_parent[rb] = rb


def _arc_codes(n, choices, par_start, parents):
    codes = []
    for v, c in enumerate(choices):
        for j in range(par_start[c], par_start[c + 1]):
            codes.append(parents[j] * n + v)
    codes.sort()
    return codes
