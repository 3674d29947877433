# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled assignment search; same contract as ``_kernels_py.search_assignments``."""

from libc.stdlib cimport malloc, free, qsort


cdef int _cmp_int(const void* a, const void* b) noexcept nogil:
    cdef int x = (<const int*>a)[0]
    cdef int y = (<const int*>b)[0]
    return (x > y) - (x < y)


cdef inline int _find(int* par, int x) noexcept nogil:
    while par[x] != x:
        x = par[x]
    return x


cdef inline void _rollback(int* par, int* size, int* hist, int* hlen, int mark) noexcept nogil:
    cdef int rb, ra
    while hlen[0] > mark:
        hlen[0] -= 1
        rb = hist[hlen[0]]
        ra = par[rb]
        size[ra] -= size[rb]
        par[rb] = rb


cdef int _codes(int n, int* pick, int* par_start, int* parents, int* out) noexcept nogil:
    cdef int v, j, m = 0
    for v in range(n):
        for j in range(par_start[pick[v]], par_start[pick[v] + 1]):
            out[m] = parents[j] * n + v
            m += 1
    qsort(out, m, sizeof(int), _cmp_int)
    return m


cdef bint _less(int* a, int na, int* b, int nb) noexcept nogil:
    cdef int i
    for i in range(na if na < nb else nb):
        if a[i] != b[i]:
            return a[i] < b[i]
    return na < nb


def search_assignments(int n, node_start_in, choice_score_in, par_start_in, parents_in, int k):
    if n == 0:
        return True, 0.0, []
    cdef int nchoice = len(choice_score_in)
    cdef int npar = len(parents_in)
    cdef int* node_start = <int*>malloc((n + 1) * sizeof(int))
    cdef double* choice_score = <double*>malloc((nchoice + 1) * sizeof(double))
    cdef int* par_start = <int*>malloc((nchoice + 1) * sizeof(int))
    cdef int* parents = <int*>malloc((npar + 1) * sizeof(int))
    cdef int* uf_par = <int*>malloc(n * sizeof(int))
    cdef int* uf_size = <int*>malloc(n * sizeof(int))
    cdef int* hist = <int*>malloc((npar + n + 1) * sizeof(int))
    cdef int* pick = <int*>malloc(n * sizeof(int))
    cdef int* best = <int*>malloc(n * sizeof(int))
    cdef int* mark = <int*>malloc(n * sizeof(int))
    cdef int* cursor = <int*>malloc(n * sizeof(int))
    cdef double* partial = <double*>malloc((n + 1) * sizeof(double))
    cdef int* used = <int*>malloc((n + 1) * sizeof(int))
    cdef int* codes_a = <int*>malloc((npar + 1) * sizeof(int))
    cdef int* codes_b = <int*>malloc((npar + 1) * sizeof(int))
    cdef int i, depth, c, lo, hi, extra, j, ra, rb, hlen = 0, na = -1, nb
    cdef bint found = False, ok
    cdef double best_score = 0.0, score

    try:
        for i in range(n + 1):
            node_start[i] = node_start_in[i]
        for i in range(nchoice):
            choice_score[i] = choice_score_in[i]
        for i in range(nchoice + 1):
            par_start[i] = par_start_in[i]
        for i in range(npar):
            parents[i] = parents_in[i]
        for i in range(n):
            uf_par[i] = i
            uf_size[i] = 1
        partial[0] = 0.0
        used[0] = 0

        with nogil:
            depth = 0
            cursor[0] = node_start[0]
            while depth >= 0:
                if depth == n:
                    score = partial[n]
                    if not found or score > best_score:
                        found = True
                        best_score = score
                        for i in range(n):
                            best[i] = pick[i]
                        na = -1
                    elif score == best_score:
                        if na < 0:
                            na = _codes(n, best, par_start, parents, codes_a)
                        nb = _codes(n, pick, par_start, parents, codes_b)
                        if _less(codes_b, nb, codes_a, na):
                            for i in range(n):
                                best[i] = pick[i]
                            for i in range(nb):
                                codes_a[i] = codes_b[i]
                            na = nb
                    depth -= 1
                    _rollback(uf_par, uf_size, hist, &hlen, mark[depth])
                    continue
                c = cursor[depth]
                if c >= node_start[depth + 1]:
                    depth -= 1
                    if depth >= 0:
                        _rollback(uf_par, uf_size, hist, &hlen, mark[depth])
                    continue
                cursor[depth] = c + 1
                lo = par_start[c]
                hi = par_start[c + 1]
                extra = hi - lo - 1 if hi - lo > 1 else 0
                if used[depth] + extra > k:
                    continue
                mark[depth] = hlen
                ok = True
                for j in range(lo, hi):
                    ra = _find(uf_par, parents[j])
                    rb = _find(uf_par, depth)
                    if ra == rb:
                        ok = False
                        break
                    if uf_size[ra] < uf_size[rb]:
                        ra, rb = rb, ra
                    uf_par[rb] = ra
                    uf_size[ra] += uf_size[rb]
                    hist[hlen] = rb
                    hlen += 1
                if not ok:
                    _rollback(uf_par, uf_size, hist, &hlen, mark[depth])
                    continue
                pick[depth] = c
                partial[depth + 1] = partial[depth] + choice_score[c]
                used[depth + 1] = used[depth] + extra
                depth += 1
                if depth < n:
                    cursor[depth] = node_start[depth]

        return found, best_score, [best[i] for i in range(n)] if found else []
    finally:
        free(node_start); free(choice_score); free(par_start); free(parents)
        free(uf_par); free(uf_size); free(hist); free(pick); free(best)
        free(mark); free(cursor); free(partial); free(used)
        free(codes_a); free(codes_b)
