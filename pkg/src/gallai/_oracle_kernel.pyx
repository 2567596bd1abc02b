# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound kernel; same algorithm and results as ``_oracle_py``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free


cdef struct State:
    int nv
    int m
    int *ea
    int *eb
    int *adj_w
    int *adj_i
    int *adj_len
    int *deg
    char *used  # one row of nv flags per search depth
    int *side_a
    int *side_b
    int *sol_buf
    int *sol_len
    int sol_count
    int sol_fill
    uint64_t covered
    uint64_t full
    int odd
    int best
    int root_lb
    long long nodes
    long long max_nodes
    bint stop
    bint improved


cdef inline int _lower_bound(State *s) noexcept nogil:
    cdef int v, top = 0, lb
    for v in range(s.nv):
        if s.deg[v] > top:
            top = s.deg[v]
    lb = (s.odd + 1) // 2
    if (top + 1) // 2 > lb:
        lb = (top + 1) // 2
    return lb if lb > 0 else 1


cdef inline void _toggle(State *s, int i, bint cover) noexcept nogil:
    cdef int a = s.ea[i], b = s.eb[i]
    if cover:
        s.covered |= (<uint64_t>1) << i
        s.deg[a] -= 1
        s.deg[b] -= 1
    else:
        s.covered &= ~((<uint64_t>1) << i)
        s.deg[a] += 1
        s.deg[b] += 1
    s.odd += (1 if s.deg[a] & 1 else -1) + (1 if s.deg[b] & 1 else -1)


cdef void _emit(State *s, int depth, int *sa, int na, int *sb, int nb, object out):
    cdef int k, start = s.sol_fill
    for k in range(na - 1, -1, -1):
        s.sol_buf[s.sol_fill] = sa[k]
        s.sol_fill += 1
    for k in range(nb):
        s.sol_buf[s.sol_fill] = sb[k]
        s.sol_fill += 1
    s.sol_len[s.sol_count] = s.sol_fill - start
    s.sol_count += 1
    _search(s, depth + 1, out)
    s.sol_count -= 1
    s.sol_fill = start


cdef void _grow_b(State *s, int depth, int v, int *sa, int na, int *sb, int nb, object out):
    cdef int k, w, i, base = v * s.m
    cdef char *used = s.used + depth * s.nv
    for k in range(s.adj_len[v]):
        if s.stop:
            return
        w = s.adj_w[base + k]
        i = s.adj_i[base + k]
        if not ((s.covered >> i) & 1) and not used[w]:
            _toggle(s, i, True)
            used[w] = 1
            sb[nb] = w
            _grow_b(s, depth, w, sa, na, sb, nb + 1, out)
            used[w] = 0
            _toggle(s, i, False)
    if s.stop:
        return
    _emit(s, depth, sa, na, sb, nb, out)


cdef void _grow_a(State *s, int depth, int v, int b, int *sa, int na, int *sb, object out):
    cdef int k, w, i, base = v * s.m
    cdef char *used = s.used + depth * s.nv
    for k in range(s.adj_len[v]):
        if s.stop:
            return
        w = s.adj_w[base + k]
        i = s.adj_i[base + k]
        if not ((s.covered >> i) & 1) and not used[w]:
            _toggle(s, i, True)
            used[w] = 1
            sa[na] = w
            _grow_a(s, depth, w, b, sa, na + 1, sb, out)
            used[w] = 0
            _toggle(s, i, False)
    if s.stop:
        return
    _grow_b(s, depth, b, sa, na, sb, 1, out)


cdef void _search(State *s, int depth, object out):
    cdef uint64_t free_mask
    cdef int e0, a, b, k, j, pos
    cdef int *sa
    cdef int *sb
    cdef char *used
    s.nodes += 1
    if s.max_nodes and s.nodes > s.max_nodes:
        s.stop = True
        return
    if s.covered == s.full:
        s.best = depth
        del out[:]
        pos = 0
        for k in range(s.sol_count):
            out.append(tuple([s.sol_buf[pos + j] for j in range(s.sol_len[k])]))
            pos += s.sol_len[k]
        if depth <= s.root_lb:
            s.stop = True
        return
    if depth + _lower_bound(s) >= s.best:
        return
    free_mask = ~s.covered & s.full
    e0 = 0
    while not ((free_mask >> e0) & 1):
        e0 += 1
    a = s.ea[e0]
    b = s.eb[e0]
    _toggle(s, e0, True)
    sa = s.side_a + depth * (s.nv + 1)
    sb = s.side_b + depth * (s.nv + 1)
    sa[0] = a
    sb[0] = b
    used = s.used + depth * s.nv
    used[a] = 1
    used[b] = 1
    _grow_a(s, depth, a, b, sa, 1, sb, out)
    used[a] = 0
    used[b] = 0
    _toggle(s, e0, False)


def solve(int nv, edges, int upper, long long max_nodes=0):
    """See ``_oracle_py.solve``."""
    cdef State s
    cdef int m = len(edges)
    cdef int i, a, b, v, k, odd = 0
    if m > 64:
        raise ValueError("kernel supports at most 64 edges")
    if nv <= 0:
        nv = 1
    pairs = [[] for _ in range(nv)]
    for i, (a, b) in enumerate(edges):
        pairs[a].append((b, i))
        pairs[b].append((a, i))
    for lst in pairs:
        lst.sort()

    s.nv = nv
    s.m = m if m > 0 else 1
    s.ea = <int *>calloc(s.m, sizeof(int))
    s.eb = <int *>calloc(s.m, sizeof(int))
    s.adj_w = <int *>calloc(nv * s.m, sizeof(int))
    s.adj_i = <int *>calloc(nv * s.m, sizeof(int))
    s.adj_len = <int *>calloc(nv, sizeof(int))
    s.deg = <int *>calloc(nv, sizeof(int))
    s.used = <char *>calloc((s.m + 1) * nv, sizeof(char))
    s.side_a = <int *>calloc((s.m + 1) * (nv + 1), sizeof(int))
    s.side_b = <int *>calloc((s.m + 1) * (nv + 1), sizeof(int))
    s.sol_buf = <int *>calloc(2 * s.m + 2, sizeof(int))
    s.sol_len = <int *>calloc(s.m + 1, sizeof(int))
    try:
        if (not s.ea or not s.eb or not s.adj_w or not s.adj_i or not s.adj_len or not s.deg
                or not s.used or not s.side_a or not s.side_b or not s.sol_buf or not s.sol_len):
            raise MemoryError()
        for i, (a, b) in enumerate(edges):
            s.ea[i] = a
            s.eb[i] = b
        for v in range(nv):
            s.adj_len[v] = len(pairs[v])
            s.deg[v] = len(pairs[v])
            odd += s.deg[v] & 1
            for k, (a, b) in enumerate(pairs[v]):
                s.adj_w[v * s.m + k] = a
                s.adj_i[v * s.m + k] = b
        s.covered = 0
        s.full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if m == 64 else (((<uint64_t>1) << m) - 1)
        s.odd = odd
        s.best = upper
        s.nodes = 0
        s.max_nodes = max_nodes
        s.stop = False
        s.sol_count = 0
        s.sol_fill = 0
        s.root_lb = _lower_bound(&s) if m else 0
        witness = []
        _search(&s, 0, witness)
        complete = not (max_nodes and s.nodes > max_nodes)
        return s.best, witness, s.nodes, complete
    finally:
        free(s.ea)
        free(s.eb)
        free(s.adj_w)
        free(s.adj_i)
        free(s.adj_len)
        free(s.deg)
        free(s.used)
        free(s.side_a)
        free(s.side_b)
        free(s.sol_buf)
        free(s.sol_len)
