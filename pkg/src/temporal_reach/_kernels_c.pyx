# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``; same algorithms, same outputs."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def reach_mask(Py_ssize_t n, indptr, indices, sources):
    cdef i64[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef i64[::1] src = np.ascontiguousarray(sources, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = seen_arr
    cdef i64[::1] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, k
    cdef i64 s, u, w
    for k in range(src.shape[0]):
        s = src[k]
        if not seen[s]:
            seen[s] = 1
            queue[tail] = s
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(ip[u], ip[u + 1]):
            w = ix[k]
            if not seen[w]:
                seen[w] = 1
                queue[tail] = w
                tail += 1
    return seen_arr.tolist()


def bipartite_matching(Py_ssize_t n_left, Py_ssize_t n_right, indptr, indices):
    cdef i64[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] ml_arr = np.full(n_left, -1, dtype=np.int64)
    cdef i64[::1] match_l = ml_arr
    cdef i64[::1] match_r = np.full(max(n_right, 1), -1, dtype=np.int64)
    cdef i64[::1] dist = np.empty(max(n_left, 1), dtype=np.int64)
    cdef i64[::1] queue = np.empty(max(n_left, 1), dtype=np.int64)
    cdef i64[::1] it = np.empty(max(n_left, 1), dtype=np.int64)
    cdef i64[::1] stack = np.empty(max(n_left, 1) + 1, dtype=np.int64)
    cdef i64[::1] via = np.empty(max(n_left, 1) + 1, dtype=np.int64)
    cdef Py_ssize_t head, tail, sp, vp, d, k, u, root
    cdef i64 r, w
    cdef bint found, advanced
    while True:
        tail = 0
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue[tail] = u
                tail += 1
            else:
                dist[u] = -1
        found = False
        head = 0
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(ip[u], ip[u + 1]):
                w = match_r[ix[k]]
                if w == -1:
                    found = True
                elif dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        if not found:
            break
        for u in range(n_left):
            it[u] = ip[u]
        for root in range(n_left):
            if match_l[root] != -1:
                continue
            sp = 0
            vp = 0
            stack[sp] = root
            sp += 1
            while sp > 0:
                u = stack[sp - 1]
                advanced = False
                while it[u] < ip[u + 1]:
                    r = ix[it[u]]
                    it[u] += 1
                    w = match_r[r]
                    if w == -1:
                        via[vp] = r
                        vp += 1
                        for d in range(sp):
                            match_l[stack[d]] = via[d]
                            match_r[via[d]] = stack[d]
                        sp = 0
                        advanced = True
                        break
                    if dist[w] == dist[u] + 1:
                        via[vp] = r
                        vp += 1
                        stack[sp] = w
                        sp += 1
                        advanced = True
                        break
                if not advanced:
                    dist[u] = -1
                    sp -= 1
                    if vp > 0:
                        vp -= 1
    return ml_arr.tolist()


def disjoint_paths(Py_ssize_t n, indptr, indices, src_mask, snk_mask):
    cdef i64[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef i64[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef cnp.uint8_t[::1] sm = np.ascontiguousarray(src_mask, dtype=np.uint8)
    cdef cnp.uint8_t[::1] tm = np.ascontiguousarray(snk_mask, dtype=np.uint8)
    cdef Py_ssize_t S = 2 * n, T = 2 * n + 1, nodes = 2 * n + 2
    cdef Py_ssize_t n_edges = ix.shape[0]
    cdef Py_ssize_t n_src = 0, n_snk = 0, v, u, k, e, f, x, y, w
    for v in range(n):
        n_src += sm[v] != 0
        n_snk += tm[v] != 0
    cdef Py_ssize_t n_arcs = 2 * (n_src + n + n_edges + n_snk)
    cdef i64[::1] to = np.empty(max(n_arcs, 1), dtype=np.int64)
    cdef i64[::1] cap = np.empty(max(n_arcs, 1), dtype=np.int64)
    cdef i64[::1] tail_of = np.empty(max(n_arcs, 1), dtype=np.int64)
    cdef Py_ssize_t a = 0

    # arcs appended in the same order as the Python version
    for v in range(n):
        if sm[v]:
            tail_of[a] = S; to[a] = 2 * v; cap[a] = 1; a += 1
            tail_of[a] = 2 * v; to[a] = S; cap[a] = 0; a += 1
    for v in range(n):
        tail_of[a] = 2 * v; to[a] = 2 * v + 1; cap[a] = 1; a += 1
        tail_of[a] = 2 * v + 1; to[a] = 2 * v; cap[a] = 0; a += 1
    for u in range(n):
        for k in range(ip[u], ip[u + 1]):
            tail_of[a] = 2 * u + 1; to[a] = 2 * ix[k]; cap[a] = 1; a += 1
            tail_of[a] = 2 * ix[k]; to[a] = 2 * u + 1; cap[a] = 0; a += 1
    for v in range(n):
        if tm[v]:
            tail_of[a] = 2 * v + 1; to[a] = T; cap[a] = 1; a += 1
            tail_of[a] = T; to[a] = 2 * v + 1; cap[a] = 0; a += 1

    # per-node arc lists in insertion order (counting sort on tail)
    cdef i64[::1] aptr = np.zeros(nodes + 1, dtype=np.int64)
    cdef i64[::1] alist = np.empty(max(n_arcs, 1), dtype=np.int64)
    cdef i64[::1] fill = np.empty(nodes, dtype=np.int64)
    for e in range(n_arcs):
        aptr[tail_of[e] + 1] += 1
    for x in range(nodes):
        aptr[x + 1] += aptr[x]
    for x in range(nodes):
        fill[x] = aptr[x]
    for e in range(n_arcs):
        x = tail_of[e]
        alist[fill[x]] = e
        fill[x] += 1

    cdef i64[::1] parent = np.empty(nodes, dtype=np.int64)
    cdef i64[::1] queue = np.empty(nodes, dtype=np.int64)
    cdef Py_ssize_t head, qt
    while True:
        for x in range(nodes):
            parent[x] = -1
        parent[S] = -2
        queue[0] = S
        qt = 1
        head = 0
        while head < qt and parent[T] == -1:
            x = queue[head]
            head += 1
            for k in range(aptr[x], aptr[x + 1]):
                e = alist[k]
                y = to[e]
                if cap[e] and parent[y] == -1:
                    parent[y] = e
                    queue[qt] = y
                    qt += 1
        if parent[T] == -1:
            break
        y = T
        while y != S:
            e = parent[y]
            cap[e] -= 1
            cap[e ^ 1] += 1
            y = to[e ^ 1]

    paths = []
    cdef i64 nxt
    for k in range(aptr[S], aptr[S + 1]):
        e = alist[k]
        if e % 2 == 0 and cap[e] == 0:
            v = to[e] // 2
            path = [v]
            x = 2 * v + 1
            while True:
                nxt = -1
                for f in range(aptr[x], aptr[x + 1]):
                    if alist[f] % 2 == 0 and cap[alist[f]] == 0:
                        nxt = to[alist[f]]
                        break
                if nxt == T:
                    break
                w = nxt // 2
                path.append(w)
                x = 2 * w + 1
            paths.append(path)
    return paths
