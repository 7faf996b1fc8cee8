"""Pure-Python graph kernels.

Graphs arrive in CSR form: ``indptr`` (length n+1) and ``indices``, with
each row's successors sorted ascending.  The Cython module ``_kernels_c``
implements the same algorithms statement for statement, so both backends
return identical witnesses.
"""
from __future__ import annotations


def reach_mask(n, indptr, indices, sources):
    """1 for every vertex reachable (length >= 0) from ``sources``."""
    seen = [0] * n
    queue = []
    for s in sources:
        s = int(s)
        if not seen[s]:
            seen[s] = 1
            queue.append(s)
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if not seen[w]:
                seen[w] = 1
                queue.append(w)
    return seen


def bipartite_matching(n_left, n_right, indptr, indices):
    """Hopcroft-Karp.  Returns ``match_left`` (-1 where unmatched)."""
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    while True:
        dist = [-1] * n_left
        queue = []
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                w = match_r[indices[k]]
                if w == -1:
                    found = True
                elif dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break
        it = list(indptr[:n_left])
        for root in range(n_left):
            if match_l[root] != -1:
                continue
            stack = [root]
            via = []
            while stack:
                u = stack[-1]
                advanced = False
                while it[u] < indptr[u + 1]:
                    r = indices[it[u]]
                    it[u] += 1
                    w = match_r[r]
                    if w == -1:
                        via.append(r)
                        for d in range(len(stack)):
                            match_l[stack[d]] = via[d]
                            match_r[via[d]] = stack[d]
                        stack = []
                        advanced = True
                        break
                    if dist[w] == dist[u] + 1:
                        via.append(r)
                        stack.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = -1
                    stack.pop()
                    if via:
                        via.pop()
    return match_l


def disjoint_paths(n, indptr, indices, src_mask, snk_mask):
    """Maximum family of vertex-disjoint source->sink paths (lists of vertex ids).

    Unit-capacity max-flow on the vertex-split graph: v -> (2v in, 2v+1 out),
    super-source 2n, super-sink 2n+1.  Augmentation is breadth-first.
    """
    S = 2 * n
    T = 2 * n + 1
    nodes = 2 * n + 2
    to = []
    cap = []
    adj = [[] for _ in range(nodes)]

    def arc(a, b):
        adj[a].append(len(to))
        to.append(b)
        cap.append(1)
        adj[b].append(len(to))
        to.append(a)
        cap.append(0)

    for v in range(n):
        if src_mask[v]:
            arc(S, 2 * v)
    for v in range(n):
        arc(2 * v, 2 * v + 1)
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            arc(2 * u + 1, 2 * indices[k])
    for v in range(n):
        if snk_mask[v]:
            arc(2 * v + 1, T)

    while True:
        parent = [-1] * nodes
        parent[S] = -2
        queue = [S]
        head = 0
        while head < len(queue) and parent[T] == -1:
            x = queue[head]
            head += 1
            for e in adj[x]:
                y = to[e]
                if cap[e] and parent[y] == -1:
                    parent[y] = e
                    queue.append(y)
        if parent[T] == -1:
            break
        y = T
        while y != S:
            e = parent[y]
            cap[e] -= 1
            cap[e ^ 1] += 1
            y = to[e ^ 1]

    paths = []
    for e in adj[S]:
        if e % 2 == 0 and cap[e] == 0:
            v = to[e] // 2
            path = [v]
            x = 2 * v + 1
            while True:
                nxt = -1
                for f in adj[x]:
                    if f % 2 == 0 and cap[f] == 0:
                        nxt = to[f]
                        break
                if nxt == T:
                    break
                w = nxt // 2
                path.append(w)
                x = 2 * w + 1
            paths.append(path)
    return paths
