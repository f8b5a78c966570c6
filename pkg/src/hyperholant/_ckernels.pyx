# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels`` (same signatures, same results)."""

from libc.stdlib cimport malloc, free


cdef struct SubsetState:
    int m
    int cap
    int n_req
    int covered
    int n_touched
    long long nodes
    int *deg
    int *touched
    int *edge_off
    int *edge_vs
    int *close_off
    int *close_vs
    char *required
    char *dead      # row-major, dead_off[v] + d
    int *dead_off


cdef object _subset_rec(SubsetState *st, int i, int left, list tables, list lpow):
    cdef int j, v, d, a, b, taken
    cdef bint ok
    cdef object total = 0
    cdef object prod
    st.nodes += 1
    if left == 0:
        if st.covered != st.n_req:
            return 0
        prod = lpow[st.cap - st.n_touched]
        for j in range(st.n_touched):
            v = st.touched[j]
            prod = prod * (<list>tables[v])[st.deg[v]]
            if not prod:
                return 0
        return prod
    if st.m - i < left:
        return 0
    a = st.edge_off[i]
    b = st.edge_off[i + 1]
    ok = True
    taken = 0
    for j in range(a, b):
        v = st.edge_vs[j]
        d = st.deg[v] + 1
        st.deg[v] = d
        taken += 1
        if d == 1:
            st.touched[st.n_touched] = v
            st.n_touched += 1
            if st.required[v]:
                st.covered += 1
        if st.dead[st.dead_off[v] + d]:
            ok = False
            break
    if ok and st.n_touched <= st.cap:
        total = _subset_rec(st, i + 1, left - 1, tables, lpow)
    for j in range(a, a + taken):
        v = st.edge_vs[j]
        d = st.deg[v] - 1
        st.deg[v] = d
        if d == 0:
            st.n_touched -= 1
            if st.required[v]:
                st.covered -= 1
    for j in range(st.close_off[i], st.close_off[i + 1]):
        if st.deg[st.close_vs[j]] == 0:
            return total
    return total + _subset_rec(st, i + 1, left, tables, lpow)


def subset_sum(int n, list edges, int k, list tables, list required, list lpow):
    cdef SubsetState st
    cdef int m = len(edges)
    cdef int i, v, d, total_inc = 0, dead_total = 0, pos
    cdef list t
    for e in edges:
        total_inc += len(e)
    last_edge = [-1] * n
    for i in range(m):
        for v in edges[i]:
            last_edge[v] = i
    for v in range(n):
        if required[v] and last_edge[v] < 0:
            return 0, 0
    for v in range(n):
        dead_total += len(tables[v]) + 1
    st.m = m
    st.cap = len(lpow) - 1
    st.n_req = 0
    st.covered = 0
    st.n_touched = 0
    st.nodes = 0
    st.deg = <int *> malloc(max(n, 1) * sizeof(int))
    st.touched = <int *> malloc(max(n, 1) * sizeof(int))
    st.edge_off = <int *> malloc((m + 1) * sizeof(int))
    st.edge_vs = <int *> malloc(max(total_inc, 1) * sizeof(int))
    st.close_off = <int *> malloc((m + 1) * sizeof(int))
    st.close_vs = <int *> malloc(max(n, 1) * sizeof(int))
    st.required = <char *> malloc(max(n, 1) * sizeof(char))
    st.dead = <char *> malloc(max(dead_total, 1) * sizeof(char))
    st.dead_off = <int *> malloc(max(n, 1) * sizeof(int))
    try:
        pos = 0
        for i in range(m):
            st.edge_off[i] = pos
            for v in edges[i]:
                st.edge_vs[pos] = v
                pos += 1
        st.edge_off[m] = pos
        pos = 0
        for v in range(n):
            st.deg[v] = 0
            st.required[v] = 1 if required[v] else 0
            if required[v]:
                st.n_req += 1
            t = tables[v]
            st.dead_off[v] = pos
            st.dead[pos + len(t)] = 1
            for d in range(len(t) - 1, -1, -1):
                st.dead[pos + d] = 1 if (st.dead[pos + d + 1] and not t[d]) else 0
            pos += len(t) + 1
        closes = [[] for _ in range(m)]
        for v in range(n):
            if required[v]:
                closes[last_edge[v]].append(v)
        pos = 0
        for i in range(m):
            st.close_off[i] = pos
            for v in closes[i]:
                st.close_vs[pos] = v
                pos += 1
        st.close_off[m] = pos
        total = _subset_rec(&st, 0, k, tables, lpow)
        return total, st.nodes
    finally:
        free(st.deg)
        free(st.touched)
        free(st.edge_off)
        free(st.edge_vs)
        free(st.close_off)
        free(st.close_vs)
        free(st.required)
        free(st.dead)
        free(st.dead_off)


ctypedef unsigned long long mask_t


cdef struct HomState:
    int n
    int injective
    int *order
    int *img
    mask_t *cand
    int *chk_off      # per position: range into chk_edge / chk_complete
    int *chk_edge
    char *chk_complete
    int *e_off        # per source edge: range into e_vs
    int *e_vs
    long long count


cdef void _hom_rec(HomState *st, int p, mask_t used, set tgt_edges, set tgt_subsets):
    cdef int v, j, ei, a
    cdef mask_t options, low, mask
    cdef bint good
    if p == st.n:
        st.count += 1
        return
    v = st.order[p]
    options = st.cand[v]
    if st.injective:
        options &= ~used
    while options:
        low = options & (~options + 1)
        options ^= low
        st.img[v] = _bit_index(low)
        good = True
        for j in range(st.chk_off[p], st.chk_off[p + 1]):
            ei = st.chk_edge[j]
            mask = 0
            for a in range(st.e_off[ei], st.e_off[ei + 1]):
                if st.img[st.e_vs[a]] >= 0:
                    mask |= (<mask_t> 1) << st.img[st.e_vs[a]]
            if st.chk_complete[j]:
                if mask not in tgt_edges:
                    good = False
                    break
            elif mask not in tgt_subsets:
                good = False
                break
        if good:
            _hom_rec(st, p + 1, used | low, tgt_edges, tgt_subsets)
        st.img[v] = -1


cdef inline int _bit_index(mask_t x):
    cdef int i = 0
    while x > 1:
        x >>= 1
        i += 1
    return i


def _check_plan(n_src, src_edges, order):
    """Per search position: (edge index, is this the edge's last vertex)."""
    pos_of = [0] * n_src
    for p in range(n_src):
        pos_of[order[p]] = p
    checks = [[] for _ in range(n_src)]
    for i in range(len(src_edges)):
        e = src_edges[i]
        if not e:
            continue
        ps = sorted(set([pos_of[u] for u in e]))
        last = max(ps)
        for p in ps:
            checks[p].append((i, p == last))
    return checks


def hom_count(int n_src, list src_edges, list order, set tgt_edges, set tgt_subsets, list cand, int n_tgt,
              bint injective):
    if n_tgt > 64:
        from ._pykernels import hom_count as py_hom_count
        return py_hom_count(n_src, src_edges, order, tgt_edges, tgt_subsets, cand, n_tgt, injective)
    cdef HomState st
    cdef int i, p, v, pos, ne = len(src_edges)
    cdef list checks
    cdef object ei, complete
    checks = _check_plan(n_src, src_edges, order)
    total_chk = sum(len(c) for c in checks)
    total_inc = sum(len(e) for e in src_edges)
    st.n = n_src
    st.injective = 1 if injective else 0
    st.count = 0
    st.order = <int *> malloc(max(n_src, 1) * sizeof(int))
    st.img = <int *> malloc(max(n_src, 1) * sizeof(int))
    st.cand = <mask_t *> malloc(max(n_src, 1) * sizeof(mask_t))
    st.chk_off = <int *> malloc((n_src + 1) * sizeof(int))
    st.chk_edge = <int *> malloc(max(total_chk, 1) * sizeof(int))
    st.chk_complete = <char *> malloc(max(total_chk, 1) * sizeof(char))
    st.e_off = <int *> malloc((ne + 1) * sizeof(int))
    st.e_vs = <int *> malloc(max(total_inc, 1) * sizeof(int))
    try:
        for p in range(n_src):
            st.order[p] = order[p]
            st.img[p] = -1
            st.cand[p] = <mask_t> cand[p]
        pos = 0
        for p in range(n_src):
            st.chk_off[p] = pos
            for ei, complete in checks[p]:
                st.chk_edge[pos] = ei
                st.chk_complete[pos] = 1 if complete else 0
                pos += 1
        st.chk_off[n_src] = pos
        pos = 0
        for i in range(ne):
            st.e_off[i] = pos
            for v in src_edges[i]:
                st.e_vs[pos] = v
                pos += 1
        st.e_off[ne] = pos
        _hom_rec(&st, 0, 0, tgt_edges, tgt_subsets)
        return st.count
    finally:
        free(st.order)
        free(st.img)
        free(st.cand)
        free(st.chk_off)
        free(st.chk_edge)
        free(st.chk_complete)
        free(st.e_off)
        free(st.e_vs)
